#include "davenport/construct.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <queue>
#include <sstream>

namespace dav {

namespace {

// Full associativity scans are cheap up to a few hundred elements; larger
// constructor-built tables rely on the model-level validation plus the latin
// square / identity / inverse checks in make_group.
bool assoc_scan_worthwhile(int n) { return n <= 128; }

std::string int_str(long long v) { return std::to_string(v); }

}  // namespace

FiniteGroup cyclic(int n) {
    if (n < 1) fail(Errc::BadParameter, "cyclic group needs order >= 1");
    std::vector<elem> t(size_t(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t[size_t(i) * n + j] = elem((i + j) % n);
    std::vector<std::pair<std::string, elem>> gens{{"g", elem(n > 1 ? 1 : 0)}};
    return make_group(n, std::move(t), "C" + int_str(n), std::move(gens),
                      assoc_scan_worthwhile(n));
}

FiniteGroup direct_product_many(const std::vector<FiniteGroup>& factors) {
    if (factors.empty()) fail(Errc::BadParameter, "empty product");
    if (factors.size() == 1) return factors[0];
    long long n = 1;
    for (const auto& F : factors) {
        n *= F.n;
        if (n > Caps::max_group_order)
            fail(Errc::CapExceeded, "product order exceeds cap " + int_str(Caps::max_group_order));
    }
    size_t k = factors.size();
    std::vector<long long> stride(k);
    long long s = 1;
    for (size_t i = k; i-- > 0;) {
        stride[i] = s;
        s *= factors[i].n;
    }
    std::vector<elem> table(size_t(n) * n);
    std::vector<int> da(k), db(k);
    for (long long a = 0; a < n; ++a) {
        for (size_t i = 0; i < k; ++i) da[i] = int(a / stride[i]) % factors[i].n;
        for (long long b = 0; b < n; ++b) {
            for (size_t i = 0; i < k; ++i) db[i] = int(b / stride[i]) % factors[i].n;
            long long r = 0;
            for (size_t i = 0; i < k; ++i)
                r += stride[i] * factors[i].op(elem(da[i]), elem(db[i]));
            table[size_t(a) * n + b] = elem(r);
        }
    }
    // Generator names: a name used by more than one factor gets that factor's
    // 1-based position appended (C2xC2xC4 -> g1, g2, g3).
    std::map<std::string, int> uses;
    for (const auto& F : factors)
        for (const auto& [nm, g] : F.gens) uses[nm]++;
    std::vector<std::pair<std::string, elem>> gens;
    std::string name;
    for (size_t i = 0; i < k; ++i) {
        if (i) name += "x";
        name += factors[i].name;
        for (const auto& [nm, g] : factors[i].gens) {
            std::string out = uses[nm] > 1 ? nm + int_str(i + 1) : nm;
            gens.emplace_back(out, elem(stride[i] * g));
        }
    }
    return make_group(int(n), std::move(table), std::move(name), std::move(gens),
                      assoc_scan_worthwhile(int(n)));
}

FiniteGroup direct_product(const FiniteGroup& A, const FiniteGroup& B) {
    return direct_product_many({A, B});
}

FiniteGroup semidirect_product(const FiniteGroup& N, const FiniteGroup& H,
                               const std::vector<std::vector<elem>>& phi, std::string name) {
    if (phi.size() != size_t(H.n)) fail(Errc::BadParameter, "need one action map per element of H");
    for (int h = 0; h < H.n; ++h) {
        const auto& f = phi[h];
        if (f.size() != size_t(N.n)) fail(Errc::NotAutomorphism, "action map has wrong size");
        std::vector<char> hit(N.n, 0);
        for (elem v : f) {
            if (v >= N.n || hit[v]) fail(Errc::NotAutomorphism, "action map is not a bijection");
            hit[v] = 1;
        }
        for (int a = 0; a < N.n; ++a)
            for (int b = 0; b < N.n; ++b)
                if (f[N.op(elem(a), elem(b))] != N.op(f[a], f[b]))
                    fail(Errc::NotAutomorphism,
                         "action of h=" + int_str(h) + " does not respect the product");
    }
    for (int h1 = 0; h1 < H.n; ++h1)
        for (int h2 = 0; h2 < H.n; ++h2) {
            const auto& f12 = phi[H.op(elem(h1), elem(h2))];
            for (int a = 0; a < N.n; ++a)
                if (f12[a] != phi[h1][phi[h2][a]])
                    fail(Errc::NotHomomorphism, "action is not a homomorphism at h1=" +
                                                    int_str(h1) + " h2=" + int_str(h2));
        }
    long long n = (long long)N.n * H.n;
    if (n > Caps::max_group_order)
        fail(Errc::CapExceeded, "semidirect product order exceeds cap");
    std::vector<elem> table(size_t(n) * n);
    for (int a1 = 0; a1 < N.n; ++a1)
        for (int h1 = 0; h1 < H.n; ++h1)
            for (int a2 = 0; a2 < N.n; ++a2)
                for (int h2 = 0; h2 < H.n; ++h2) {
                    elem a = N.op(elem(a1), phi[h1][a2]);
                    elem h = H.op(elem(h1), elem(h2));
                    table[size_t(a1 * H.n + h1) * n + (a2 * H.n + h2)] = elem(a * H.n + h);
                }
    std::map<std::string, int> uses;
    for (const auto& [nm, g] : N.gens) uses[nm]++;
    for (const auto& [nm, g] : H.gens) uses[nm]++;
    std::vector<std::pair<std::string, elem>> gens;
    for (const auto& [nm, g] : N.gens)
        gens.emplace_back(uses[nm] > 1 ? nm + "1" : nm, elem(g * H.n));
    for (const auto& [nm, g] : H.gens) gens.emplace_back(uses[nm] > 1 ? nm + "2" : nm, elem(g));
    return make_group(int(n), std::move(table), std::move(name), std::move(gens),
                      assoc_scan_worthwhile(int(n)));
}

namespace {

// Shared two-part layout for the dihedral-like families: element (i, j) with
// i < m, j in {0,1} has index j*m + i; multiplication is
//   (i1, j1)(i2, j2) = (i1 + t^j1 * i2 + twist*[j1 & j2]  mod m,  j1 ^ j2)
// where t = -1 (dihedral, dicyclic) or the defining unit (SD / M), and
// twist = m/2 for dicyclic (b^2 = a^(m/2)), 0 otherwise.
FiniteGroup two_part(int m, long long t, int twist, const std::string& name,
                     const char* a_name, const char* b_name) {
    int n = 2 * m;
    auto tm = [&](long long v) { return int(((v % m) + m) % m); };
    std::vector<elem> table(size_t(n) * n);
    for (int j1 = 0; j1 < 2; ++j1)
        for (int i1 = 0; i1 < m; ++i1)
            for (int j2 = 0; j2 < 2; ++j2)
                for (int i2 = 0; i2 < m; ++i2) {
                    long long i = i1 + (j1 ? t : 1) * i2 + ((j1 & j2) ? twist : 0);
                    table[size_t(j1 * m + i1) * n + (j2 * m + i2)] =
                        elem((j1 ^ j2) * m + tm(i));
                }
    std::vector<std::pair<std::string, elem>> gens;
    if (m > 1) gens.emplace_back(a_name, elem(1));
    gens.emplace_back(b_name, elem(m));
    return make_group(n, std::move(table), name, std::move(gens), assoc_scan_worthwhile(n));
}

bool power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

}  // namespace

FiniteGroup dihedral(int order) {
    if (order < 2 || order % 2) fail(Errc::BadParameter, "dihedral group needs even order >= 2");
    return two_part(order / 2, -1, 0, "D" + int_str(order), "r", "s");
}

FiniteGroup dicyclic(int order) {
    if (order < 4 || order % 4) fail(Errc::BadParameter, "dicyclic group needs order 4k");
    return two_part(order / 2, -1, order / 4, "Q" + int_str(order), "a", "b");
}

FiniteGroup semidihedral(int order) {
    if (order < 16 || !power_of_two(order))
        fail(Errc::BadParameter, "semidihedral group needs order 2^k >= 16");
    return two_part(order / 2, order / 4 - 1, 0, "SD" + int_str(order), "a", "b");
}

FiniteGroup modular_maximal_cyclic(int order) {
    if (order < 16 || !power_of_two(order))
        fail(Errc::BadParameter, "modular maximal-cyclic group needs order 2^k >= 16");
    return two_part(order / 2, order / 4 + 1, 0, "M" + int_str(order), "a", "b");
}

FiniteGroup heisenberg(int p) {
    if (p < 3 || p % 2 == 0) fail(Errc::BadParameter, "need an odd prime");
    for (int d = 3; d * d <= p; d += 2)
        if (p % d == 0) fail(Errc::BadParameter, "need an odd prime");
    long long n = (long long)p * p * p;
    if (n > Caps::max_group_order) fail(Errc::CapExceeded, "order p^3 exceeds cap");
    // Elements a^al b^be c^ga (c central, b a b^-1 = a c^-1), with index
    // al*p^2 + be*p + ga.  Moving b^be past a^al costs c^(-al*be).
    std::vector<elem> table(size_t(n) * n);
    auto idx = [&](int al, int be, int ga) { return elem((al * p + be) * p + ga); };
    for (int a1 = 0; a1 < p; ++a1)
        for (int b1 = 0; b1 < p; ++b1)
            for (int g1 = 0; g1 < p; ++g1)
                for (int a2 = 0; a2 < p; ++a2)
                    for (int b2 = 0; b2 < p; ++b2)
                        for (int g2 = 0; g2 < p; ++g2) {
                            int ga = ((g1 + g2 - a2 * b1) % p + p) % p;
                            table[size_t(idx(a1, b1, g1)) * n + idx(a2, b2, g2)] =
                                idx((a1 + a2) % p, (b1 + b2) % p, ga);
                        }
    std::vector<std::pair<std::string, elem>> gens{
        {"a", idx(1, 0, 0)}, {"b", idx(0, 1, 0)}, {"c", idx(0, 0, 1)}};
    return make_group(int(n), std::move(table), "H" + int_str(n), std::move(gens),
                      assoc_scan_worthwhile(int(n)));
}

FiniteGroup from_permutations(int degree, const std::vector<std::vector<int>>& gens,
                              std::string name, std::vector<std::string> gen_names) {
    if (degree < 1) fail(Errc::BadParameter, "degree must be >= 1");
    for (const auto& g : gens) {
        if (g.size() != size_t(degree)) fail(Errc::BadParameter, "permutation has wrong degree");
        std::vector<char> hit(degree, 0);
        for (int v : g) {
            if (v < 0 || v >= degree || hit[v]) fail(Errc::BadParameter, "not a permutation");
            hit[v] = 1;
        }
    }
    std::vector<int> id(degree);
    for (int i = 0; i < degree; ++i) id[i] = i;
    std::map<std::vector<int>, elem> index;
    std::vector<std::vector<int>> elems{id};
    index[id] = 0;
    auto compose = [&](const std::vector<int>& f, const std::vector<int>& g) {
        std::vector<int> r(degree);
        for (int i = 0; i < degree; ++i) r[i] = f[g[i]];
        return r;
    };
    for (size_t head = 0; head < elems.size(); ++head) {
        for (const auto& g : gens) {
            auto y = compose(elems[head], g);
            if (index.count(y)) continue;
            if (elems.size() >= size_t(Caps::permutation_closure))
                fail(Errc::CapExceeded, "permutation closure exceeds cap " +
                                            int_str(Caps::permutation_closure));
            index[y] = elem(elems.size());
            elems.push_back(std::move(y));
        }
    }
    int n = int(elems.size());
    std::vector<elem> table(size_t(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            auto it = index.find(compose(elems[a], elems[b]));
            if (it == index.end()) fail(Errc::NotClosed, "internal: closure incomplete");
            table[size_t(a) * n + b] = it->second;
        }
    std::vector<std::pair<std::string, elem>> named;
    for (size_t i = 0; i < gens.size(); ++i) {
        std::string nm = i < gen_names.size() ? gen_names[i] : "p" + int_str(i + 1);
        named.emplace_back(nm, index.at(gens[i]));
    }
    if (name.empty()) name = "perm" + int_str(degree) + ":" + int_str(gens.size());
    return make_group(n, std::move(table), std::move(name), std::move(named),
                      assoc_scan_worthwhile(n));
}

FiniteGroup symmetric(int degree) {
    if (degree < 1) fail(Errc::BadParameter, "degree must be >= 1");
    if (degree == 1) {
        FiniteGroup G = cyclic(1);
        G.name = "S1";
        return G;
    }
    std::vector<int> t(degree), c(degree);
    for (int i = 0; i < degree; ++i) t[i] = c[i] = i;
    std::swap(t[0], t[1]);
    for (int i = 0; i < degree; ++i) c[i] = (i + 1) % degree;
    return from_permutations(degree, {t, c}, "S" + int_str(degree), {"t", "c"});
}

FiniteGroup alternating(int degree) {
    if (degree < 1) fail(Errc::BadParameter, "degree must be >= 1");
    if (degree <= 2) {
        FiniteGroup G = cyclic(1);
        G.name = "A" + int_str(degree);
        return G;
    }
    std::vector<std::vector<int>> gens;
    std::vector<std::string> names;
    for (int i = 0; i + 2 < degree; ++i) {
        std::vector<int> g(degree);
        for (int j = 0; j < degree; ++j) g[j] = j;
        g[i] = i + 1;
        g[i + 1] = i + 2;
        g[i + 2] = i;
        gens.push_back(std::move(g));
        names.push_back("c" + int_str(i + 1));
    }
    return from_permutations(degree, gens, "A" + int_str(degree), names);
}

std::optional<std::vector<elem>> hom_from_gen_images(const FiniteGroup& A,
                                                     const std::vector<elem>& gens,
                                                     const FiniteGroup& B,
                                                     const std::vector<elem>& images) {
    if (gens.size() != images.size()) fail(Errc::BadParameter, "generator/image count mismatch");
    std::vector<int> img(A.n, -1);
    img[0] = 0;
    std::vector<elem> members{0};
    for (size_t i = 0; i < members.size(); ++i) {
        for (size_t gi = 0; gi < gens.size(); ++gi) {
            elem y = A.op(members[i], gens[gi]);
            elem v = B.op(elem(img[members[i]]), images[gi]);
            if (img[y] < 0) {
                img[y] = v;
                members.push_back(y);
            } else if (img[y] != v) {
                return std::nullopt;
            }
        }
    }
    if (int(members.size()) != A.n) return std::nullopt;  // gens don't generate A
    return std::vector<elem>(img.begin(), img.end());
}

FiniteGroup with_gen_names(const FiniteGroup& G, const std::vector<std::string>& names) {
    if (names.size() != G.gens.size()) fail(Errc::BadParameter, "name count != generator count");
    std::vector<std::pair<std::string, elem>> gens;
    for (size_t i = 0; i < names.size(); ++i) gens.emplace_back(names[i], G.gens[i].second);
    return make_group(G.n, G.table, G.name, std::move(gens), false);
}

// ---- cayley-v1 --------------------------------------------------------------

FiniteGroup from_cayley_text(const std::string& text, const std::string& name) {
    std::vector<std::string> tok;
    size_t names_at = std::string::npos;  // token position of "names:"
    {
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) {
            if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
            std::istringstream ls(line);
            std::string t;
            while (ls >> t) {
                if (t == "names:") names_at = tok.size();
                tok.push_back(t);
            }
        }
    }
    size_t p = 0;
    auto need = [&](const char* what) -> const std::string& {
        if (p >= tok.size()) fail(Errc::ParseError, std::string("unexpected end of table, wanted ") + what);
        return tok[p++];
    };
    auto need_int = [&](const char* what) {
        const std::string& s = need(what);
        for (char c : s)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                fail(Errc::ParseError, std::string("bad integer '") + s + "' for " + what);
        if (s.empty() || s.size() > 7) fail(Errc::ParseError, std::string("bad integer for ") + what);
        return std::stoi(s);
    };
    if (need("header") != "cayley") fail(Errc::ParseError, "missing 'cayley' header");
    if (need_int("version") != 1) fail(Errc::ParseError, "unsupported cayley version");
    int n = need_int("order");
    if (n < 1 || n > Caps::max_group_order) fail(Errc::ParseError, "order out of range");
    std::vector<elem> table(size_t(n) * n);
    for (auto& e : table) {
        int v = need_int("table entry");
        if (v < 0 || v >= n) fail(Errc::NotClosed, "table entry " + int_str(v) + " out of range");
        e = elem(v);
    }
    std::vector<std::string> labels;
    if (p < tok.size()) {
        if (tok[p] != "names:" || names_at != p)
            fail(Errc::ParseError, "unexpected token '" + tok[p] + "' after table");
        ++p;
        for (int i = 0; i < n; ++i) {
            labels.push_back(need("label"));
            if (!valid_name_token(labels.back()))
                fail(Errc::ParseError, "bad label '" + labels.back() + "'");
        }
        std::vector<std::string> sorted = labels;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            fail(Errc::ParseError, "duplicate labels");
    }
    if (p != tok.size()) fail(Errc::ParseError, "trailing content after table");

    auto at = [&](int a, int b) { return table[size_t(a) * n + b]; };
    int e = -1;
    for (int a = 0; a < n && e < 0; ++a) {
        bool ok = true;
        for (int b = 0; b < n && ok; ++b) ok = at(a, b) == b && at(b, a) == b;
        if (ok) e = a;
    }
    if (e < 0) fail(Errc::NoIdentity, "table has no two-sided identity");
    if (e != 0) {  // relabel so the identity sits at index 0
        auto sw = [&](int x) { return x == 0 ? e : (x == e ? 0 : x); };
        std::vector<elem> t2(size_t(n) * n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) t2[size_t(a) * n + b] = elem(sw(at(sw(a), sw(b))));
        table = std::move(t2);
        if (!labels.empty()) std::swap(labels[0], labels[size_t(e)]);
    }
    if (labels.empty())
        for (int i = 0; i < n; ++i) labels.push_back("e" + int_str(i));
    std::vector<std::pair<std::string, elem>> gens;
    for (int i = 0; i < n; ++i) gens.emplace_back(labels[i], elem(i));
    return make_group(n, std::move(table), name, std::move(gens), /*check_assoc=*/true,
                      std::move(labels));
}

FiniteGroup from_cayley_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::IoError, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_cayley_text(buf.str(), "cayley:" + path);
}

std::string to_cayley_text(const FiniteGroup& G) {
    std::ostringstream os;
    os << "cayley 1\n" << G.n << "\n";
    for (int a = 0; a < G.n; ++a) {
        for (int b = 0; b < G.n; ++b) os << (b ? " " : "") << int(G.op(elem(a), elem(b)));
        os << "\n";
    }
    bool emit_names = true;
    for (const auto& d : G.display)
        if (!valid_name_token(d)) emit_names = false;
    if (emit_names) {
        std::vector<std::string> sorted = G.display;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) emit_names = false;
    }
    if (emit_names) {
        os << "names:";
        for (const auto& d : G.display) os << " " << d;
        os << "\n";
    }
    return os.str();
}

// ---- group-spec grammar ------------------------------------------------

namespace {

int parse_uint(const std::string& s, const std::string& ctx) {
    if (s.empty() || s.size() > 7) fail(Errc::ParseError, "bad number in " + ctx);
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            fail(Errc::ParseError, "bad number '" + s + "' in " + ctx);
    return std::stoi(s);
}

FiniteGroup parse_factor(const std::string& tok) {
    if (tok.rfind("gap:", 0) == 0) {
        std::string rest = tok.substr(4);
        auto dot = rest.find('.');
        if (dot == std::string::npos) fail(Errc::ParseError, "gap: factor needs ORDER.INDEX");
        return registry_build(
            {parse_uint(rest.substr(0, dot), tok), parse_uint(rest.substr(dot + 1), tok)});
    }
    if (tok.rfind("fix:", 0) == 0) return fixture(tok.substr(4));
    if (tok.rfind("SD", 0) == 0) return semidihedral(parse_uint(tok.substr(2), tok));
    if (tok.empty()) fail(Errc::ParseError, "empty factor");
    std::string num = tok.substr(1);
    switch (tok[0]) {
        case 'C': return cyclic(parse_uint(num, tok));
        case 'D': return dihedral(parse_uint(num, tok));
        case 'Q': return dicyclic(parse_uint(num, tok));
        case 'M': return modular_maximal_cyclic(parse_uint(num, tok));
        case 'H': {
            int n = parse_uint(num, tok);
            int p = 1;
            while (p * p * p < n) ++p;
            if (p * p * p != n) fail(Errc::BadParameter, "H factor order must be p^3");
            return heisenberg(p);
        }
        case 'A': return alternating(parse_uint(num, tok));
        case 'S': return symmetric(parse_uint(num, tok));
        default: fail(Errc::ParseError, "unknown factor '" + tok + "'");
    }
}

}  // namespace

FiniteGroup build_group(const std::string& spec) {
    std::vector<FiniteGroup> factors;
    size_t pos = 0;
    while (pos <= spec.size()) {
        if (spec.compare(pos, 7, "cayley:") == 0) {
            // The path runs to the end of the spec, so cayley: must be last.
            std::string path = spec.substr(pos + 7);
            if (path.empty()) fail(Errc::ParseError, "cayley: factor needs a path");
            factors.push_back(from_cayley_file(path));
            pos = spec.size() + 1;
            break;
        }
        // The 'fix:' prefix carries an 'x' of its own; split after it.
        size_t scan = spec.compare(pos, 4, "fix:") == 0 ? pos + 4 : pos;
        size_t xp = spec.find('x', scan);
        std::string tok = spec.substr(pos, xp == std::string::npos ? xp : xp - pos);
        if (tok.empty()) fail(Errc::ParseError, "empty factor in '" + spec + "'");
        factors.push_back(parse_factor(tok));
        if (xp == std::string::npos) {
            pos = spec.size() + 1;
            break;
        }
        pos = xp + 1;
        if (pos >= spec.size()) fail(Errc::ParseError, "trailing 'x' in '" + spec + "'");
    }
    if (factors.empty()) fail(Errc::ParseError, "empty group spec");
    return direct_product_many(factors);
}

}  // namespace dav
