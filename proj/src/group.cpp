#include "davenport/group.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

namespace dav {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::NotClosed: return "NotClosed";
        case Errc::NoIdentity: return "NoIdentity";
        case Errc::NotAssociative: return "NotAssociative";
        case Errc::NoInverse: return "NoInverse";
        case Errc::BadParameter: return "BadParameter";
        case Errc::ParseError: return "ParseError";
        case Errc::UnknownGenerator: return "UnknownGenerator";
        case Errc::NotAbelian: return "NotAbelian";
        case Errc::NotAutomorphism: return "NotAutomorphism";
        case Errc::NotHomomorphism: return "NotHomomorphism";
        case Errc::HNotProper: return "HNotProper";
        case Errc::NotFree: return "NotFree";
        case Errc::UnknownRegistryId: return "UnknownRegistryId";
        case Errc::DataCorrupt: return "DataCorrupt";
        case Errc::CapExceeded: return "CapExceeded";
        case Errc::IoError: return "IoError";
    }
    return "Error";
}

bool valid_name_token(const std::string& s) {
    if (s.empty()) return false;
    if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    return true;
}

namespace {

// Shortest word over the generators for every element (BFS from the
// identity, generators tried in declaration order, so ties are broken
// deterministically).  Rendered run-compressed, e.g. "r^2*s".
std::vector<std::string> word_names(const FiniteGroup& G) {
    std::vector<std::string> out(G.n);
    out[0] = (G.n == 1 && !G.gens.empty()) ? G.gens[0].first : "1";
    std::vector<std::vector<int>> word(G.n);
    std::vector<char> seen(G.n, 0);
    seen[0] = 1;
    std::queue<elem> q;
    q.push(0);
    while (!q.empty()) {
        elem x = q.front();
        q.pop();
        for (size_t gi = 0; gi < G.gens.size(); ++gi) {
            elem y = G.op(x, G.gens[gi].second);
            if (seen[y]) continue;
            seen[y] = 1;
            word[y] = word[x];
            word[y].push_back(int(gi));
            q.push(y);
        }
    }
    for (int v = 1; v < G.n; ++v) {
        if (!seen[v]) {  // generators do not generate; fall back to an index name
            out[v] = "e" + std::to_string(v);
            continue;
        }
        std::string s;
        for (size_t i = 0; i < word[v].size();) {
            size_t j = i;
            while (j < word[v].size() && word[v][j] == word[v][i]) ++j;
            if (!s.empty()) s += "*";
            s += G.gens[word[v][i]].first;
            if (j - i > 1) s += "^" + std::to_string(j - i);
            i = j;
        }
        out[v] = s;
    }
    return out;
}

}  // namespace

elem FiniteGroup::power(elem g, long long k) const {
    int ord = order_of[g];
    k %= ord;
    if (k < 0) k += ord;
    elem r = 0;
    for (long long i = 0; i < k; ++i) r = op(r, g);
    return r;
}

int FiniteGroup::gen_by_name(const std::string& s) const {
    for (const auto& [nm, g] : gens)
        if (nm == s) return g;
    return -1;
}

FiniteGroup make_group(int n, std::vector<elem> table, std::string name,
                       std::vector<std::pair<std::string, elem>> gens, bool check_assoc,
                       std::vector<std::string> display) {
    if (n < 1) fail(Errc::BadParameter, "group order must be >= 1");
    if (n > Caps::max_group_order)
        fail(Errc::CapExceeded,
             "group order " + std::to_string(n) + " exceeds cap " +
                 std::to_string(Caps::max_group_order));
    if (table.size() != size_t(n) * n) fail(Errc::BadParameter, "table size != n^2");
    FiniteGroup G;
    G.n = n;
    G.table = std::move(table);
    G.name = std::move(name);
    G.gens = std::move(gens);

    for (auto& e : G.table)
        if (e >= n) fail(Errc::NotClosed, "table entry " + std::to_string(e) + " out of range");
    for (int b = 0; b < n; ++b)
        if (G.op(0, b) != b || G.op(b, 0) != b)
            fail(Errc::NoIdentity, "element 0 is not a two-sided identity");
    // Rows and columns must be permutations; with identity and inverses this
    // is implied by associativity, but it is a cheap integrity check for
    // constructor-built tables where the O(n^3) scan is skipped.
    {
        std::vector<char> seen(n);
        for (int a = 0; a < n; ++a) {
            std::fill(seen.begin(), seen.end(), 0);
            for (int b = 0; b < n; ++b) seen[G.op(a, b)] = 1;
            for (int b = 0; b < n; ++b)
                if (!seen[b]) fail(Errc::NotAssociative, "row " + std::to_string(a) + " is not a permutation");
            std::fill(seen.begin(), seen.end(), 0);
            for (int b = 0; b < n; ++b) seen[G.op(b, a)] = 1;
            for (int b = 0; b < n; ++b)
                if (!seen[b]) fail(Errc::NotAssociative, "column " + std::to_string(a) + " is not a permutation");
        }
    }
    G.inverse.assign(n, 0);
    for (int a = 0; a < n; ++a) {
        int found = -1;
        for (int b = 0; b < n; ++b)
            if (G.op(a, b) == 0 && G.op(b, a) == 0) {
                found = b;
                break;
            }
        if (found < 0) fail(Errc::NoInverse, "element " + std::to_string(a) + " has no inverse");
        G.inverse[a] = elem(found);
    }
    if (check_assoc) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                elem ab = G.op(a, b);
                for (int c = 0; c < n; ++c)
                    if (G.op(ab, c) != G.op(a, G.op(b, c)))
                        fail(Errc::NotAssociative,
                             "(a*b)*c != a*(b*c) at a=" + std::to_string(a) + " b=" +
                                 std::to_string(b) + " c=" + std::to_string(c));
            }
    }
    G.abelian = true;
    for (int a = 1; a < n && G.abelian; ++a)
        for (int b = a + 1; b < n; ++b)
            if (G.op(a, b) != G.op(b, a)) {
                G.abelian = false;
                break;
            }
    G.order_of.assign(n, 1);
    for (int g = 1; g < n; ++g) {
        int ord = 1;
        elem x = elem(g);
        while (x != 0) {
            x = G.op(x, elem(g));
            ++ord;
        }
        G.order_of[g] = ord;
    }
    {
        std::set<std::string> names;
        for (const auto& [nm, g] : G.gens) {
            if (!valid_name_token(nm)) fail(Errc::BadParameter, "bad generator name '" + nm + "'");
            if (g >= n) fail(Errc::BadParameter, "generator index out of range");
            if (!names.insert(nm).second) fail(Errc::BadParameter, "duplicate generator name '" + nm + "'");
        }
    }
    if (!display.empty()) {
        if (display.size() != size_t(n)) fail(Errc::BadParameter, "display name count != n");
        G.display = std::move(display);
    } else {
        G.display = word_names(G);
    }
    return G;
}

int element_order(const FiniteGroup& G, elem g) { return G.order_of[g]; }

int exponent(const FiniteGroup& G) {
    long long e = 1;
    for (int g = 0; g < G.n; ++g) e = std::lcm(e, (long long)G.order_of[g]);
    return int(e);
}

ElementSet center(const FiniteGroup& G) {
    ElementSet Z(G.n);
    for (int z = 0; z < G.n; ++z) {
        bool central = true;
        for (int a = 0; a < G.n && central; ++a) central = G.op(z, a) == G.op(a, z);
        if (central) Z.set(z);
    }
    return Z;
}

ElementSet subgroup_closure(const FiniteGroup& G, const ElementSet& seed) {
    if (seed.universe() != G.n) fail(Errc::BadParameter, "seed set over wrong group");
    std::vector<elem> members{0};
    ElementSet in(G.n);
    in.set(0);
    seed.for_each([&](int g) {
        if (!in.test(g)) {
            in.set(g);
            members.push_back(elem(g));
        }
    });
    for (size_t i = 0; i < members.size(); ++i) {
        for (size_t j = 0; j < members.size(); ++j) {
            elem p = G.op(members[i], members[j]);
            if (!in.test(p)) {
                in.set(p);
                members.push_back(p);
            }
        }
    }
    return in;
}

ElementSet derived_subgroup(const FiniteGroup& G) {
    ElementSet comms(G.n);
    for (int a = 0; a < G.n; ++a)
        for (int b = 0; b < G.n; ++b)
            comms.set(G.op(G.op(a, b), G.inv(G.op(b, a))));  // a b (b a)^-1 = [a,b]
    return subgroup_closure(G, comms);
}

bool is_subgroup(const FiniteGroup& G, const ElementSet& H) {
    if (H.universe() != G.n || !H.test(0)) return false;
    bool ok = true;
    H.for_each([&](int a) {
        if (!ok) return;
        H.for_each([&](int b) {
            if (!H.test(G.op(elem(a), elem(b)))) ok = false;
        });
    });
    return ok;
}

bool is_normal(const FiniteGroup& G, const ElementSet& H) {
    if (!is_subgroup(G, H)) return false;
    for (int g = 0; g < G.n; ++g) {
        bool ok = true;
        H.for_each([&](int h) {
            if (!H.test(G.conj(elem(g), elem(h)))) ok = false;
        });
        if (!ok) return false;
    }
    return true;
}

std::vector<ElementSet> all_subgroups(const FiniteGroup& G) {
    if (G.n > Caps::subgroup_enum_order)
        fail(Errc::CapExceeded, "subgroup enumeration capped at order " +
                                    std::to_string(Caps::subgroup_enum_order));
    std::set<std::vector<uint64_t>> seen;
    std::vector<ElementSet> subs;
    auto add = [&](const ElementSet& H) {
        if (seen.insert(H.words()).second) subs.push_back(H);
        return false;
    };
    ElementSet trivial(G.n);
    add(subgroup_closure(G, trivial));
    for (int a = 1; a < G.n; ++a) {
        ElementSet s1(G.n);
        s1.set(a);
        add(subgroup_closure(G, s1));
        for (int b = a + 1; b < G.n; ++b) {
            ElementSet s2 = s1;
            s2.set(b);
            add(subgroup_closure(G, s2));
            for (int c = b + 1; c < G.n; ++c) {
                ElementSet s3 = s2;
                s3.set(c);
                add(subgroup_closure(G, s3));
            }
        }
    }
    // Close under pairwise joins; any subgroup is a join of cyclic ones, so
    // the fixpoint is the complete lattice.
    for (size_t fresh = 0; fresh < subs.size(); ++fresh) {
        for (size_t j = 0; j < subs.size(); ++j) {
            if (subs[fresh].is_subset_of(subs[j]) || subs[j].is_subset_of(subs[fresh])) continue;
            ElementSet u = subs[fresh];
            u |= subs[j];
            add(subgroup_closure(G, u));
        }
    }
    std::sort(subs.begin(), subs.end(), [](const ElementSet& a, const ElementSet& b) {
        if (a.count() != b.count()) return a.count() < b.count();
        return a < b;
    });
    return subs;
}

FiniteGroup quotient_group(const FiniteGroup& G, const ElementSet& N) {
    if (!is_normal(G, N)) fail(Errc::BadParameter, "quotient by a non-normal subgroup");
    std::vector<int> coset(G.n, -1);
    std::vector<elem> rep;
    for (int g = 0; g < G.n; ++g) {
        if (coset[g] >= 0) continue;
        int idx = int(rep.size());
        rep.push_back(elem(g));
        N.for_each([&](int h) { coset[G.op(elem(g), elem(h))] = idx; });
    }
    int q = int(rep.size());
    std::vector<elem> table(size_t(q) * q);
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) table[size_t(i) * q + j] = elem(coset[G.op(rep[i], rep[j])]);
    std::vector<std::pair<std::string, elem>> gens;
    for (const auto& [nm, g] : G.gens) gens.emplace_back(nm, elem(coset[g]));
    return make_group(q, std::move(table), G.name + "/" + std::to_string(N.count()),
                      std::move(gens), false);
}

std::pair<FiniteGroup, std::vector<elem>> subgroup_as_group(const FiniteGroup& G,
                                                            const ElementSet& H) {
    if (!is_subgroup(G, H)) fail(Errc::BadParameter, "set is not a subgroup");
    std::vector<elem> members = H.to_vector();  // ascending, identity first
    std::vector<int> idx(G.n, -1);
    for (size_t i = 0; i < members.size(); ++i) idx[members[i]] = int(i);
    int m = int(members.size());
    std::vector<elem> table(size_t(m) * m);
    std::vector<std::string> display(m);
    for (int i = 0; i < m; ++i) {
        display[i] = G.display[members[i]];
        for (int j = 0; j < m; ++j) table[size_t(i) * m + j] = elem(idx[G.op(members[i], members[j])]);
    }
    FiniteGroup S = make_group(m, std::move(table), G.name + ".sub" + std::to_string(m), {},
                               false, std::move(display));
    return {std::move(S), std::move(members)};
}

std::vector<int> abelian_invariants(const FiniteGroup& G) {
    if (!G.abelian) fail(Errc::NotAbelian, "invariant factors need an abelian group");
    std::vector<int> inv;
    FiniteGroup A = G;
    while (A.n > 1) {
        int e = exponent(A);
        int g = 1;
        while (A.order_of[g] != e) ++g;
        ElementSet seed(A.n);
        seed.set(g);
        A = quotient_group(A, subgroup_closure(A, seed));
        inv.push_back(e);
    }
    std::reverse(inv.begin(), inv.end());
    for (size_t i = 0; i + 1 < inv.size(); ++i)
        if (inv[i + 1] % inv[i] != 0)
            fail(Errc::BadParameter, "internal: invariant factors not a divisor chain");
    return inv;
}

std::vector<int> abelianization_invariants(const FiniteGroup& G) {
    if (G.abelian) return abelian_invariants(G);
    return abelian_invariants(quotient_group(G, derived_subgroup(G)));
}

std::vector<int> conjugacy_class_sizes(const FiniteGroup& G) {
    std::vector<char> seen(G.n, 0);
    std::vector<int> sizes;
    for (int g = 0; g < G.n; ++g) {
        if (seen[g]) continue;
        int sz = 0;
        for (int h = 0; h < G.n; ++h) {
            elem c = G.conj(elem(h), elem(g));
            if (!seen[c]) {
                seen[c] = 1;
                ++sz;
            }
        }
        sizes.push_back(sz);
    }
    std::sort(sizes.begin(), sizes.end());
    return sizes;
}

std::vector<std::pair<int, int>> order_multiset(const FiniteGroup& G) {
    std::map<int, int> m;
    for (int g = 0; g < G.n; ++g) m[G.order_of[g]]++;
    return {m.begin(), m.end()};
}

std::string GroupFingerprint::to_string() const {
    std::ostringstream os;
    os << "order=" << order << " exp=" << exponent << " |Z|=" << center_order
       << " |G'|=" << derived_order << " ords=[";
    for (size_t i = 0; i < order_multiset.size(); ++i)
        os << (i ? "," : "") << order_multiset[i].first << ":" << order_multiset[i].second;
    os << "] ab=[";
    for (size_t i = 0; i < abelianization.size(); ++i) os << (i ? "," : "") << abelianization[i];
    os << "] cls=[";
    for (size_t i = 0; i < class_sizes.size(); ++i) os << (i ? "," : "") << class_sizes[i];
    os << "]";
    return os.str();
}

GroupFingerprint fingerprint(const FiniteGroup& G) {
    GroupFingerprint f;
    f.order = G.n;
    f.exponent = exponent(G);
    f.center_order = center(G).count();
    f.derived_order = derived_subgroup(G).count();
    f.order_multiset = order_multiset(G);
    f.abelianization = abelianization_invariants(G);
    f.class_sizes = conjugacy_class_sizes(G);
    return f;
}

namespace {

// Generating set found greedily (smallest element outside the running span).
// The span at least doubles each step, so there are at most log2(n) entries.
std::vector<elem> greedy_gens(const FiniteGroup& G) {
    std::vector<elem> gens;
    ElementSet span = subgroup_closure(G, ElementSet(G.n));
    while (span.count() < G.n) {
        int g = 1;
        while (span.test(g)) ++g;
        gens.push_back(elem(g));
        ElementSet seed = span;
        seed.set(g);
        span = subgroup_closure(G, seed);
    }
    return gens;
}

// Backtracking over images of A's greedy generators in B.  At each depth the
// partial map is extended over the closure of the assigned generators; any
// conflict prunes.  Checking img(x*g)=img(x)*img(g) for all x and generators
// g is sufficient for a full homomorphism check once all elements are
// covered, because every element is a word in the generators.
struct IsoSearch {
    const FiniteGroup& A;
    const FiniteGroup& B;
    std::vector<elem> gens;
    bool collect_all = false;
    std::vector<std::vector<elem>> found;

    bool extend_and_check(const std::vector<elem>& images, std::vector<int>& img) {
        img.assign(A.n, -1);
        img[0] = 0;
        std::vector<char> used(B.n, 0);
        used[0] = 1;
        std::vector<elem> members{0};
        for (size_t i = 0; i < members.size(); ++i) {
            for (size_t gi = 0; gi < images.size(); ++gi) {
                elem y = A.op(members[i], gens[gi]);
                elem v = B.op(elem(img[members[i]]), images[gi]);
                if (img[y] < 0) {
                    if (used[v]) return false;  // not injective
                    img[y] = v;
                    used[v] = 1;
                    members.push_back(y);
                } else if (img[y] != v) {
                    return false;  // not a homomorphism
                }
            }
        }
        return true;
    }

    bool assign(size_t k, std::vector<elem>& images) {
        if (k == gens.size()) {
            std::vector<int> img;
            if (!extend_and_check(images, img)) return false;
            for (int v : img)
                if (v < 0) return false;  // prefix closure did not cover A (can't happen)
            if (collect_all) {
                found.emplace_back(img.begin(), img.end());
                return false;  // keep searching
            }
            return true;
        }
        for (int cand = 0; cand < B.n; ++cand) {
            if (B.order_of[cand] != A.order_of[gens[k]]) continue;
            images.push_back(elem(cand));
            std::vector<int> img;
            if (extend_and_check(images, img) && assign(k + 1, images)) return true;
            images.pop_back();
        }
        return false;
    }
};

}  // namespace

bool is_isomorphic(const FiniteGroup& A, const FiniteGroup& B) {
    if (A.n != B.n) return false;
    if (std::max(A.n, B.n) > Caps::subgroup_enum_order)
        fail(Errc::CapExceeded, "isomorphism test capped at order " +
                                    std::to_string(Caps::subgroup_enum_order));
    if (!(fingerprint(A) == fingerprint(B))) return false;
    if (A.n == 1) return true;
    IsoSearch s{A, B, greedy_gens(A), false, {}};
    std::vector<elem> images;
    return s.assign(0, images);
}

std::vector<std::vector<elem>> automorphisms(const FiniteGroup& G) {
    if (G.n > Caps::automorphism_order)
        fail(Errc::CapExceeded, "automorphism enumeration capped at order " +
                                    std::to_string(Caps::automorphism_order));
    if (G.n == 1) return {{0}};
    IsoSearch s{G, G, greedy_gens(G), false, {}};
    s.collect_all = true;
    std::vector<elem> images;
    s.assign(0, images);
    std::sort(s.found.begin(), s.found.end());
    return s.found;
}

}  // namespace dav
