#include "davenport/search.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <set>
#include <string>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "translate.hpp"

namespace dav {
namespace {

using walltime = std::chrono::steady_clock;

double seconds_since(walltime::time_point t0) {
    return std::chrono::duration<double>(walltime::now() - t0).count();
}

int effective_width(int requested) {
#ifdef _OPENMP
    if (requested > 0) return requested;
    return omp_get_max_threads();
#else
    (void)requested;
    return 1;
#endif
}

// Budget policy: explicit budget wins; orders within the exactness cap run
// unbounded; above it a default budget applies (smaller once nodes cost
// O(|G|) each).
uint64_t total_budget(const FiniteGroup& G, const SearchConfig& cfg) {
    if (cfg.node_budget > 0) return cfg.node_budget;
    if (G.n <= cfg.max_order_exact) return UINT64_MAX;
    return G.n <= 64 ? kDefaultNodeBudget : kDefaultNodeBudgetLarge;
}

// The total budget is divided evenly over the depth-2 task frontier so the
// explored region never depends on thread scheduling.
uint64_t split_budget(uint64_t total, size_t tasks) {
    if (total == UINT64_MAX || tasks <= 1) return total;
    uint64_t per = total / tasks;
    return per < 1024 ? 1024 : per;
}

// Runs body(i) for i in [0, count); exceptions are captured and the first
// rethrown after all iterations finish.
template <class Body>
void parallel_for_tasks(int64_t count, int width, Body&& body) {
    std::exception_ptr eptr = nullptr;
    std::mutex emx;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(width)
#else
    (void)width;
#endif
    for (int64_t i = 0; i < count; ++i) {
        try {
            body(i);
        } catch (...) {
            std::lock_guard<std::mutex> lk(emx);
            if (!eptr) eptr = std::current_exception();
        }
    }
    if (eptr) std::rethrow_exception(eptr);
}

// ---- leaf atom test ------------------------------------------------------
//
// Mixed-radix table of pi(T) over every sub-multiset T of the given terms,
// identical in layout to PiTable but reusing caller-owned buffers and a
// shared right-multiplication Translator (the atom search evaluates this at
// every surviving leaf).  Returns 1 = atom, 0 = not an atom, -1 = table
// would exceed dp_cap.
int leaf_atom_check(const FiniteGroup& G, const Translator& tr,
                    const std::vector<std::pair<elem, int>>& terms, uint64_t dp_cap,
                    std::vector<uint64_t>& dp, std::vector<uint8_t>& idflag,
                    std::vector<uint64_t>& weights, std::vector<int>& digits) {
    (void)G;
    const int W = tr.words();
    const size_t k = terms.size();
    if (k == 0) return 0;
    uint64_t R = 1;
    weights.resize(k);
    for (size_t i = 0; i < k; ++i) {
        weights[i] = R;
        const uint64_t radix = uint64_t(terms[i].second) + 1;
        if (R > dp_cap / radix) return -1;
        R *= radix;
    }
    dp.assign(R * W, 0);
    idflag.assign(R, 0);
    dp[0] = 1;  // pi(empty) = {identity}
    digits.assign(k, 0);
    for (uint64_t r = 1; r < R; ++r) {
        for (size_t i = 0;; ++i) {
            if (++digits[i] <= terms[i].second) break;
            digits[i] = 0;
        }
        uint64_t* dst = dp.data() + r * W;
        for (size_t i = 0; i < k; ++i)
            if (digits[i] > 0) tr.or_translate(dst, dp.data() + (r - weights[i]) * W, terms[i].first);
        idflag[r] = uint8_t(dst[0] & 1);
    }
    const uint64_t full = R - 1;
    if (!idflag[full]) return 0;
    for (uint64_t r = 1; 2 * r <= full; ++r)
        if (idflag[r] && idflag[full - r]) return 0;
    return 1;
}

// ---- permutation brute force (reference engines) --------------------------

constexpr int kBruteLenLimit = 20;

bool brute_product_one(const FiniteGroup& G, std::vector<elem> v) {
    if (v.empty()) return true;
    if (G.abelian) {  // order never matters: one pass
        elem p = 0;
        for (elem g : v) p = G.op(p, g);
        return p == 0;
    }
    if ((int)v.size() > kBruteLenLimit)
        fail(Errc::CapExceeded, "reference engine limited to length " +
                                    std::to_string(kBruteLenLimit));
    std::sort(v.begin(), v.end());
    do {
        elem p = 0;
        for (elem g : v) p = G.op(p, g);
        if (p == 0) return true;
    } while (std::next_permutation(v.begin(), v.end()));
    return false;
}

// v ascending.  Scans sub-multisets once each (for runs of equal elements
// only prefixes of the run are taken).
bool brute_free(const FiniteGroup& G, const std::vector<elem>& v) {
    const int L = (int)v.size();
    if (L > kBruteLenLimit)
        fail(Errc::CapExceeded, "reference engine limited to length " +
                                    std::to_string(kBruteLenLimit));
    for (uint32_t m = 1; m < (1u << L); ++m) {
        bool canon = true;
        for (int i = 1; i < L; ++i)
            if (v[i] == v[i - 1] && ((m >> i) & 1) && !((m >> (i - 1)) & 1)) {
                canon = false;
                break;
            }
        if (!canon) continue;
        std::vector<elem> sub;
        for (int i = 0; i < L; ++i)
            if ((m >> i) & 1) sub.push_back(v[i]);
        if (brute_product_one(G, std::move(sub))) return false;
    }
    return true;
}

// ---- freeness contexts -----------------------------------------------------
//
// Both support: try_push(g) -> 0 pushed (extension stays product-one free),
// 1 rejected (not free), 2 rejected (table would exceed the cap); pop();
// product() = product of the current sequence in push order.

// Abelian: free <=> the next element's inverse is not among the subset sums
// so far (and the element is not the identity).  One bitset level per depth.
class AbelianFree {
  public:
    AbelianFree(const FiniteGroup& G, const Translator& tr, int max_len)
        : G_(&G), tr_(&tr), W_(tr.words()) {
        buf_.assign(size_t(max_len + 2) * W_, 0);
        prod_.assign(size_t(max_len + 2), 0);
    }

    int try_push(elem g) {
        const uint64_t* P = buf_.data() + size_t(d_) * W_;
        const elem gi = G_->inv(g);
        if (g == 0 || ((P[gi >> 6] >> (gi & 63)) & 1)) return 1;
        uint64_t* D = buf_.data() + size_t(d_ + 1) * W_;
        std::copy(P, P + W_, D);
        tr_->or_translate(D, P, g);
        D[g >> 6] |= uint64_t(1) << (g & 63);
        prod_[size_t(d_ + 1)] = G_->op(prod_[size_t(d_)], g);
        ++d_;
        return 0;
    }
    void pop() { --d_; }
    elem product() const { return prod_[size_t(d_)]; }

  private:
    const FiniteGroup* G_;
    const Translator* tr_;
    int W_;
    int d_ = 0;
    std::vector<uint64_t> buf_;  // level d: sums of non-empty sub-multisets
    std::vector<elem> prod_;
};

// Any group: incremental table of pi over every sub-multiset (the PiTable
// recurrence), extended in place on push and truncated on pop.  Elements
// must be pushed in non-decreasing order.  Freeness = no non-empty
// sub-multiset's product set contains the identity.
class GenericFree {
  public:
    GenericFree(const FiniteGroup& G, const Translator& tr, uint64_t cap)
        : tr_(&tr), W_(tr.words()), cap_(cap) {
        (void)G;
        data_.assign(size_t(W_), 0);
        data_[0] = 1;  // rank 0 = empty sub-multiset: {identity}
    }

    int try_push(elem g) {
        const bool new_slot = slots_.empty() || g > slots_.back().first;
        const uint64_t delta = new_slot ? size_ : weights_.back();
        if (size_ > cap_ - delta) return 2;
        if (new_slot) {
            slots_.push_back({g, 1});
            weights_.push_back(size_);
        } else {
            ++slots_.back().second;
        }
        const uint64_t old = size_;
        const uint64_t nsz = size_ + delta;
        data_.resize(nsz * W_, 0);
        const size_t k = slots_.size();
        digits_.assign(k - 1, 0);
        bool bad = false;
        for (uint64_t r = old; r < nsz; ++r) {
            uint64_t* dst = data_.data() + r * W_;
            tr_->or_translate(dst, data_.data() + (r - weights_.back()) * W_, g);
            for (size_t i = 0; i + 1 < k; ++i)
                if (digits_[i] > 0)
                    tr_->or_translate(dst, data_.data() + (r - weights_[i]) * W_,
                                      slots_[i].first);
            if (dst[0] & 1) {
                bad = true;
                break;
            }
            for (size_t i = 0; i + 1 < k; ++i) {
                if (++digits_[i] <= slots_[i].second) break;
                digits_[i] = 0;
            }
        }
        if (bad) {
            data_.resize(old * W_);
            if (new_slot) {
                slots_.pop_back();
                weights_.pop_back();
            } else {
                --slots_.back().second;
            }
            return 1;
        }
        size_ = nsz;
        hist_.push_back(new_slot);
        return 0;
    }

    void pop() {
        const bool new_slot = hist_.back();
        hist_.pop_back();
        const uint64_t delta = new_slot ? size_ / 2 : weights_.back();
        size_ -= delta;
        data_.resize(size_ * W_);
        if (new_slot) {
            slots_.pop_back();
            weights_.pop_back();
        } else {
            --slots_.back().second;
        }
    }

    elem product() const { return 0; }  // unused: atoms are recorded only for abelian groups

  private:
    const Translator* tr_;
    int W_;
    uint64_t cap_;
    uint64_t size_ = 1;
    std::vector<uint64_t> data_;
    std::vector<std::pair<elem, int>> slots_;  // (element, multiplicity), ascending
    std::vector<uint64_t> weights_;
    std::vector<bool> hist_;
    std::vector<int> digits_;
};

// ---- free-sequence search (d, and D for abelian groups) -------------------

struct DUnit {
    int best_len = -1;
    std::vector<elem> best;  // free multiset, ascending
    int atom_len = -1;
    std::vector<elem> atom;  // free multiset closed by its product's inverse
    uint64_t nodes = 0;
    bool budget_capped = false;
    bool dp_capped = false;
    bool len_capped = false;
};

void d_record(const FiniteGroup& G, const std::vector<elem>& path, elem prod, bool record_atoms,
              DUnit& R, std::vector<elem>& scratch) {
    const int L = (int)path.size();
    if (L > R.best_len) {
        R.best_len = L;
        R.best = path;
    }
    if (!record_atoms || L + 1 < R.atom_len) return;
    scratch = path;
    const elem closer = G.inv(prod);
    scratch.insert(std::upper_bound(scratch.begin(), scratch.end(), closer), closer);
    if (L + 1 > R.atom_len) {
        R.atom_len = L + 1;
        R.atom = scratch;
    } else if (scratch < R.atom) {
        R.atom = scratch;
    }
}

template <class Ctx>
void d_dfs(const FiniteGroup& G, Ctx& ctx, std::vector<elem>& path, int len_cap, bool can_flag,
           uint64_t budget, bool record_atoms, DUnit& R, std::vector<elem>& scratch) {
    d_record(G, path, ctx.product(), record_atoms, R, scratch);
    if ((int)path.size() >= len_cap) {
        if (can_flag) R.len_capped = true;
        return;
    }
    const elem lo = path.empty() ? elem(1) : path.back();
    for (elem g = lo; g < (elem)G.n; ++g) {
        if (R.nodes >= budget) {
            R.budget_capped = true;
            return;
        }
        const int pr = ctx.try_push(g);
        if (pr == 2) {
            R.dp_capped = true;
            continue;
        }
        if (pr == 1) continue;
        ++R.nodes;
        path.push_back(g);
        d_dfs(G, ctx, path, len_cap, can_flag, budget, record_atoms, R, scratch);
        path.pop_back();
        ctx.pop();
        if (R.budget_capped) return;
    }
}

struct DTask {
    elem g1, g2;
    size_t unit;
};

// Shared driver for "multiset-dfs" (record_atoms = false, the value is the
// deepest free node) and "free-closer" (record_atoms = true, every free node
// also records the atom obtained by appending its product's inverse; for
// abelian groups every atom arises this way).  The tree is cut at depth 2
// into tasks; units are merged in canonical DFS order, so ties keep the
// lexicographically least witness.
template <class Ctx, class MakeCtx>
SearchOutcome d_driver(const FiniteGroup& G, const SearchConfig& cfg, bool record_atoms,
                       const char* engine, MakeCtx make_ctx) {
    const auto t0 = walltime::now();
    const int natural = G.n > 0 ? G.n - 1 : 0;
    const int len_cap = cfg.length_cap > 0 ? std::min(cfg.length_cap, natural) : natural;
    const bool can_flag = len_cap < natural;

    std::vector<DUnit> units;
    std::vector<DTask> tasks;
    uint64_t sweep_nodes = 0;

    {
        Ctx ctx = make_ctx();
        std::vector<elem> path, scratch;
        units.emplace_back();
        d_record(G, path, ctx.product(), record_atoms, units[0], scratch);
        if (len_cap >= 1) {
            for (elem g1 = 1; g1 < (elem)G.n; ++g1) {
                int pr = ctx.try_push(g1);
                if (pr == 2) {
                    units[0].dp_capped = true;
                    continue;
                }
                if (pr == 1) continue;
                ++sweep_nodes;
                path.push_back(g1);
                units.emplace_back();
                const size_t u1 = units.size() - 1;
                d_record(G, path, ctx.product(), record_atoms, units[u1], scratch);
                if (len_cap >= 2) {
                    for (elem g2 = g1; g2 < (elem)G.n; ++g2) {
                        int p2 = ctx.try_push(g2);
                        if (p2 == 2) {
                            units[u1].dp_capped = true;
                            continue;
                        }
                        if (p2 == 1) continue;
                        ++sweep_nodes;  // the task's root push
                        ctx.pop();
                        tasks.push_back({g1, g2, units.size()});
                        units.emplace_back();
                    }
                } else if (can_flag) {
                    units[u1].len_capped = true;
                }
                path.pop_back();
                ctx.pop();
            }
        }
    }

    const uint64_t per_task = split_budget(total_budget(G, cfg), tasks.size());
    parallel_for_tasks((int64_t)tasks.size(), effective_width(cfg.parallel_width),
                       [&](int64_t i) {
                           const DTask& t = tasks[size_t(i)];
                           DUnit R;
                           Ctx ctx = make_ctx();
                           ctx.try_push(t.g1);
                           ctx.try_push(t.g2);
                           std::vector<elem> path{t.g1, t.g2}, scratch;
                           d_dfs(G, ctx, path, len_cap, can_flag, per_task, record_atoms, R,
                                 scratch);
                           units[t.unit] = std::move(R);
                       });

    SearchOutcome out;
    out.quantity = record_atoms ? Quantity::large_davenport : Quantity::small_davenport;
    out.engine = engine;
    int best_len = -1, atom_len = -1;
    std::vector<elem> best, atom;
    uint64_t nodes = sweep_nodes;
    bool bud = false, dpc = false, lenf = false;
    for (const DUnit& U : units) {
        nodes += U.nodes;
        bud |= U.budget_capped;
        dpc |= U.dp_capped;
        lenf |= U.len_capped;
        if (U.best_len > best_len) {
            best_len = U.best_len;
            best = U.best;
        }
        if (record_atoms && U.atom_len >= 0) {
            if (U.atom_len > atom_len) {
                atom_len = U.atom_len;
                atom = U.atom;
            } else if (U.atom_len == atom_len && U.atom < atom) {
                atom = U.atom;
            }
        }
    }
    if (record_atoms) {
        out.value = atom_len;
        out.witness = sequence_from_list(G.n, atom);
        out.ordering = atom_ordering(G, out.witness);
    } else {
        out.value = best_len;
        out.witness = sequence_from_list(G.n, best);
    }
    out.exact = !(bud || dpc || lenf);
    out.nodes = nodes;
    out.seconds = seconds_since(t0);
    return out;
}

// ---- canonical-multiset atom search (D for non-abelian groups) ------------
//
// The engine enumerates term multisets directly rather than orderings: one
// sorted multiset per Aut(G)-orbit, extended in non-decreasing element order.
// For the current multiset it maintains the product sets of every
// sub-multiset, factored through the derived subgroup: all products of a
// sub-multiset T lie in the single G'-coset fixed by T's image in G/G', so
// pi(T) is stored as the subset of G' it occupies inside that coset.  A
// multiset U is an atom exactly when its full rank contains the identity and
// no complementary pair of ranks both do -- read straight off the table.
// Atom length never exceeds |G| because every product-one ordering of an
// atom has pairwise-distinct non-identity proper prefix products (the cyclic
// rotation identity), and |G| is attained only by cyclic groups and dihedral
// groups of order twice an odd number, which caps the tree depth.

struct AUnit {
    int best_len = -1;
    std::vector<elem> best;  // atom multiset, ascending
    uint64_t nodes = 0;
    bool budget_capped = false;
    bool dp_capped = false;
    bool len_capped = false;
};

// Derived-subgroup coset data shared read-only by all tasks of one search.
// Only |G'| <= 16 is supported (every non-abelian group of order <= 32 we
// compute exactly qualifies); larger derived subgroups fall back to the
// constructive lower bound.
struct CosetInfo {
    int nG = 0;
    int dG = 0;  // |G'|
    int nQ = 0;  // |G/G'|
    std::vector<elem> gelem;      // G' index -> element, ascending (index 0 = identity)
    std::vector<uint8_t> gidx;    // element -> G' index (unused entries arbitrary)
    std::vector<elem> rep;        // coset id -> least element
    std::vector<uint8_t> cid;     // element -> coset id (coset of identity = 0)
    std::vector<uint8_t> qmul;    // coset multiplication, nQ x nQ
    std::vector<uint8_t> qinv;    // coset inverse
    std::vector<uint8_t> qreach;  // [L*nQ+c]: c in the subgroup of G/G' generated
                                  // by the cosets of letters >= L
    // bit image of G' index j when a rank in coset c is extended by letter h:
    // single[(c*nG+h)*16 + j] = bit of rep(c*cid(h))^-1 * rep(c) * gelem[j] * h
    std::vector<uint16_t> single;
    std::vector<uint16_t> lut;  // whole-mask images when dG is small
    bool lut_ok = false;
};

CosetInfo build_cosets(const FiniteGroup& G) {
    CosetInfo C;
    C.nG = G.n;
    C.gelem = derived_subgroup(G).to_vector();
    C.dG = (int)C.gelem.size();
    if (C.dG > 16) return C;
    C.gidx.assign(size_t(G.n), 0);
    for (int j = 0; j < C.dG; ++j) C.gidx[C.gelem[size_t(j)]] = uint8_t(j);
    C.cid.assign(size_t(G.n), 255);
    for (elem x = 0; x < (elem)G.n; ++x) {
        if (C.cid[x] != 255) continue;
        const uint8_t c = (uint8_t)C.rep.size();
        C.rep.push_back(x);
        for (int j = 0; j < C.dG; ++j) C.cid[G.op(x, C.gelem[size_t(j)])] = c;
    }
    C.nQ = (int)C.rep.size();
    C.qmul.assign(size_t(C.nQ) * size_t(C.nQ), 0);
    C.qinv.assign(size_t(C.nQ), 0);
    for (int a = 0; a < C.nQ; ++a)
        for (int b = 0; b < C.nQ; ++b) {
            const uint8_t p = C.cid[G.op(C.rep[size_t(a)], C.rep[size_t(b)])];
            C.qmul[size_t(a) * size_t(C.nQ) + size_t(b)] = p;
            if (p == 0) C.qinv[size_t(a)] = uint8_t(b);
        }
    // Closure of {cosets of letters >= L} in G/G', for the product-one
    // reachability prune.
    C.qreach.assign(size_t(G.n + 1) * size_t(C.nQ), 0);
    std::vector<uint8_t> cur(size_t(C.nQ), 0);
    cur[0] = 1;
    std::copy(cur.begin(), cur.end(), C.qreach.begin() + size_t(G.n) * size_t(C.nQ));
    for (int L = G.n - 1; L >= 0; --L) {
        bool grew = cur[C.cid[size_t(L)]] == 0;
        cur[C.cid[size_t(L)]] = 1;
        while (grew) {
            grew = false;
            for (int a = 0; a < C.nQ; ++a) {
                if (!cur[size_t(a)]) continue;
                for (int b = 0; b < C.nQ; ++b) {
                    if (!cur[size_t(b)]) continue;
                    uint8_t& slot = cur[C.qmul[size_t(a) * size_t(C.nQ) + size_t(b)]];
                    if (!slot) {
                        slot = 1;
                        grew = true;
                    }
                }
            }
        }
        std::copy(cur.begin(), cur.end(), C.qreach.begin() + size_t(L) * size_t(C.nQ));
    }
    C.single.assign(size_t(C.nQ) * size_t(G.n) * 16, 0);
    for (int c = 0; c < C.nQ; ++c)
        for (elem h = 0; h < (elem)G.n; ++h) {
            const uint8_t ct = C.qmul[size_t(c) * size_t(C.nQ) + size_t(C.cid[h])];
            const elem pre = G.op(G.inv(C.rep[size_t(ct)]), C.rep[size_t(c)]);
            uint16_t* row = C.single.data() + (size_t(c) * size_t(G.n) + size_t(h)) * 16;
            for (int j = 0; j < C.dG; ++j) {
                const elem x = G.op(G.op(pre, C.gelem[size_t(j)]), h);
                row[j] = uint16_t(uint16_t(1) << C.gidx[x]);
            }
        }
    if (C.dG <= 12) {
        const uint32_t M = uint32_t(1) << C.dG;
        C.lut.assign(size_t(C.nQ) * size_t(G.n) * M, 0);
        for (size_t rowi = 0; rowi < size_t(C.nQ) * size_t(G.n); ++rowi) {
            const uint16_t* s = C.single.data() + rowi * 16;
            uint16_t* l = C.lut.data() + rowi * M;
            for (uint32_t m = 1; m < M; ++m)
                l[m] = uint16_t(l[m & (m - 1)] | s[std::countr_zero(m)]);
        }
        C.lut_ok = true;
    }
    return C;
}

// Automorphism data for the canonical-multiset prune.
struct AutPre {
    std::vector<std::vector<elem>> maps;  // non-identity automorphisms
    std::vector<int> minfrom;             // [ai*(n+1)+L]: min image of letters >= L
    std::vector<int> geqfrom;             // [ai]: least L with phi(g) >= g for all g >= L
};

struct AtomCtx {
    const FiniteGroup* G = nullptr;
    const CosetInfo* ci = nullptr;
    const AutPre* ap = nullptr;
    Symmetry mode = Symmetry::off;
    int n = 0;
    int len_cap = 0;
    int thr = 1;  // constructive lower bound: shorter nodes skip the atom test
    bool can_flag = false;
    uint64_t dp_cap = 0;
    uint64_t budget = UINT64_MAX;

    // Current multiset and its mixed-radix sub-multiset table.  Rank r has
    // digits d_i with rank = sum d_i * weights[i]; the complement of rank r
    // is rank (size-1) - r, digit-wise, since digits never borrow.  Each
    // rank packs one word: bits 0-15 the pi mask (subset of G'), bits 16-23
    // the G/G' coset of every product, bit 24 whether pi holds the identity.
    std::vector<std::pair<elem, int>> slots;  // (element, multiplicity), ascending
    std::vector<uint64_t> weights;
    std::vector<uint8_t> hist;  // 1 = the push opened a new slot
    std::vector<uint32_t> tab;  // per-rank packed product data
    uint64_t size = 1;
    int length = 0;
    std::vector<int> digits;    // ripple scratch for layer fills
    std::vector<uint8_t> cnt;   // letter counts of the current multiset

    // Per-depth automorphism state (canonical mode).  For each still-relevant
    // automorphism: the letter counts of the image multiset and the first
    // letter where they differ from the node's counts (n = identical).  At a
    // canonical node every image is >= the node, i.e. the image has the
    // smaller count at that first difference.
    struct AutLevel {
        std::vector<uint32_t> alive;
        std::vector<int16_t> fd;
        std::vector<uint8_t> img;  // alive.size() rows of n counts
    };
    std::vector<AutLevel> astack;

    AUnit R;

    void wire(const FiniteGroup& g, const CosetInfo& c, const AutPre& a, Symmetry m, int cap,
              int threshold, bool flag, uint64_t dcap, uint64_t bud) {
        G = &g;
        ci = &c;
        ap = &a;
        mode = m;
        n = g.n;
        len_cap = cap;
        thr = threshold;
        can_flag = flag;
        dp_cap = dcap;
        budget = bud;
        slots.clear();
        weights.clear();
        hist.clear();
        tab.assign(1, 1u | (1u << 24));  // pi(empty) = {identity}, coset 0
        tab.reserve(size_t(1) << 16);
        size = 1;
        length = 0;
        cnt.assign(size_t(n), 0);
        if (mode == Symmetry::canonical) {
            astack.assign(size_t(n) + 1, {});
            AutLevel& root = astack[0];
            const size_t A = ap->maps.size();
            root.alive.resize(A);
            for (size_t i = 0; i < A; ++i) root.alive[i] = (uint32_t)i;
            root.fd.assign(A, (int16_t)n);
            root.img.assign(A * size_t(n), 0);
        }
    }

    // Can some extension by letters >= g reach a product-one multiset?  The
    // child's coset must be invertible within the subgroup of G/G' generated
    // by the remaining letters' cosets.
    bool viable(elem g) const {
        const uint8_t cs = uint8_t(tab[size - 1] >> 16);
        const uint8_t cq = ci->qmul[size_t(cs) * size_t(ci->nQ) + ci->cid[g]];
        return ci->qreach[size_t(g) * size_t(ci->nQ) + ci->qinv[cq]] != 0;
    }

    uint16_t translate(uint8_t c, elem h, uint16_t m) const {
        if (ci->lut_ok) return ci->lut[((size_t(c) * size_t(ci->nG) + h) << ci->dG) + m];
        const uint16_t* s = ci->single.data() + (size_t(c) * size_t(ci->nG) + h) * 16;
        uint16_t out = 0;
        while (m) {
            out = uint16_t(out | s[std::countr_zero(m)]);
            m = uint16_t(m & (m - 1));
        }
        return out;
    }

    // Sorted equal-length multisets compare by their count vectors: at the
    // first letter whose counts differ, the larger count is the smaller
    // multiset.  After the image gains phi(g) == f the counts agree through
    // f, so the verdict moves to the next difference.
    bool tie_lt(const uint8_t* X, elem g, int f) const {
        for (int i = f + 1; i < n; ++i) {
            const int xi = X[i];
            const int yi = cnt[size_t(i)] + (i == (int)g ? 1 : 0);
            if (xi != yi) return xi > yi;
        }
        return false;
    }

    // Is S + g the least member of its Aut(G)-orbit?  Orderly generation:
    // dropping the largest element of a canonical multiset leaves a canonical
    // multiset, so pruning non-canonical children loses no canonical node.
    bool canonical_child(elem g) const {
        if (mode == Symmetry::off) return true;
        if (mode == Symmetry::first_step_orbits) {
            if (length > 0) return true;
            for (const auto& f : ap->maps)
                if (f[g] < g) return false;
            return true;
        }
        const AutLevel& lv = astack[size_t(length)];
        const size_t A = lv.alive.size();
        for (size_t t = 0; t < A; ++t) {
            const elem a = ap->maps[lv.alive[t]][g];
            if (a >= g) continue;  // the image cannot drop below the child
            const int f = lv.fd[t];
            if (f >= n) return false;       // image was equal, gains a smaller letter
            if ((int)a < f) return false;   // image gains a letter before the difference
            if ((int)a == f) {
                const uint8_t* X = lv.img.data() + t * size_t(n);
                if (uint8_t(X[f] + 1) == cnt[size_t(f)] && tie_lt(X, g, f)) return false;
            }
        }
        return true;
    }

    void push_aut(elem g) {
        const AutLevel& par = astack[size_t(length - 1)];
        AutLevel& nxt = astack[size_t(length)];
        nxt.alive.clear();
        nxt.fd.clear();
        nxt.img.clear();
        const size_t A = par.alive.size();
        for (size_t t = 0; t < A; ++t) {
            const uint32_t ai = par.alive[t];
            const elem a = ap->maps[ai][g];
            const uint8_t* X = par.img.data() + t * size_t(n);
            const int pf = par.fd[t];
            int nf;
            if (a == g) {
                nf = pf;
            } else if ((int)g < (int)a && (int)g < pf) {
                nf = (int)g;  // the node now has more copies of g than the image
            } else if ((int)a == pf && uint8_t(X[pf] + 1) == cnt[size_t(pf)]) {
                nf = n;  // counts agree through pf now; find the next difference
                for (int i = pf + 1; i < n; ++i)
                    if (X[i] != cnt[size_t(i)]) {
                        nf = i;
                        break;
                    }
            } else {
                nf = pf;
            }
            // Keep only automorphisms that can still veto a descendant: every
            // later letter is >= g, so its image is >= minfrom[g], and a veto
            // needs an image letter at or below the first difference.
            if (nf >= n) {
                if (ap->geqfrom[ai] <= (int)g) continue;
            } else {
                if (ap->minfrom[size_t(ai) * size_t(n + 1) + size_t(g)] > nf) continue;
            }
            nxt.alive.push_back(ai);
            nxt.fd.push_back((int16_t)nf);
            const size_t row = nxt.img.size();
            nxt.img.resize(row + size_t(n));
            uint8_t* D = nxt.img.data() + row;
            std::copy(X, X + n, D);
            ++D[a];
        }
    }

    // Appends one copy of g (g >= every current element) and fills the new
    // layer of ranks.  Ranks are filled in increasing order, so every parent
    // rank -- in the old region for the g-digit, within the layer for the
    // others -- is final before it is read.
    bool push(elem g) {
        const bool new_slot = slots.empty() || g > slots.back().first;
        const uint64_t delta = new_slot ? size : weights.back();
        if (delta > dp_cap || size > dp_cap - delta) return false;
        if (new_slot) {
            weights.push_back(size);
            slots.push_back({g, 1});
        } else {
            ++slots.back().second;
        }
        hist.push_back(new_slot ? 1 : 0);
        const uint64_t old = size, nsz = size + delta;
        tab.resize(nsz);
        const uint64_t wlast = weights.back();
        const size_t k = slots.size();
        const uint8_t cg = ci->cid[g];
        digits.assign(k - 1, 0);
        for (uint64_t r = old; r < nsz; ++r) {
            const uint32_t tpg = tab[r - wlast];
            const uint8_t cp = uint8_t(tpg >> 16);
            const uint32_t cr = ci->qmul[size_t(cp) * size_t(ci->nQ) + size_t(cg)];
            uint32_t m = translate(cp, g, uint16_t(tpg));
            for (size_t i = 0; i + 1 < k; ++i)
                if (digits[i] > 0) {
                    const uint32_t tpi = tab[r - weights[i]];
                    m |= translate(uint8_t(tpi >> 16), slots[i].first, uint16_t(tpi));
                }
            tab[r] = m | (cr << 16) | ((uint32_t(cr == 0) & m & 1u) << 24);
            for (size_t i = 0; i + 1 < k; ++i) {
                if (++digits[i] <= slots[i].second) break;
                digits[i] = 0;
            }
        }
        size = nsz;
        ++length;
        ++cnt[g];
        if (mode == Symmetry::canonical) push_aut(g);
        return true;
    }

    void pop() {
        const elem g = slots.back().first;
        const bool new_slot = hist.back() != 0;
        hist.pop_back();
        const uint64_t delta = new_slot ? size / 2 : weights.back();
        size -= delta;
        tab.resize(size);
        if (new_slot) {
            slots.pop_back();
            weights.pop_back();
        } else {
            --slots.back().second;
        }
        --length;
        --cnt[g];
    }

    // The atom test for the current multiset, off the table: product-one at
    // the full rank and no complementary pair of product-one ranks.  thr
    // guards the scan; atoms of length 1..2 always lose to the seeds.
    void record() {
        if (length < thr || length < R.best_len) return;
        const uint64_t full = size - 1;
        if (!(tab[full] >> 24)) return;
        for (uint64_t r = 1; 2 * r <= full; ++r)
            if ((tab[r] >> 24) & (tab[full - r] >> 24)) return;
        std::vector<elem> v;
        v.reserve(size_t(length));
        for (const auto& [e, m] : slots) v.insert(v.end(), size_t(m), e);
        if (length > R.best_len) {
            R.best_len = length;
            R.best = std::move(v);
        } else if (v < R.best) {
            R.best = std::move(v);
        }
    }
};

void atom_dfs(AtomCtx& C) {
    C.record();
    if (C.length >= C.len_cap) {
        if (C.can_flag) C.R.len_capped = true;
        return;
    }
    const elem lo = C.slots.empty() ? elem(1) : C.slots.back().first;
    for (elem g = lo; g < (elem)C.n; ++g) {
        if (!C.viable(g)) continue;
        if (!C.canonical_child(g)) continue;
        if (C.R.nodes >= C.budget) {
            C.R.budget_capped = true;
            return;
        }
        if (!C.push(g)) {
            C.R.dp_capped = true;
            continue;
        }
        ++C.R.nodes;
        atom_dfs(C);
        C.pop();
        if (C.R.budget_capped) return;
    }
}

SearchOutcome atom_driver(const FiniteGroup& G, const SearchConfig& cfg) {
    const auto t0 = walltime::now();
    const int n = G.n;

    // Constructive lower bounds.  Seeds are genuine atoms: g repeated ord(g)
    // times for an element of maximal order, and the free d-search witness
    // closed by its product's inverse.  When a cyclic subgroup has index 2
    // the formula value |G|/2 + |G'| further raises the reporting threshold
    // (atoms of that length exist and will be collected; the formula itself
    // contributes no witness).
    int maxord = 0;
    elem gstar = 0;
    for (elem g = 0; g < (elem)n; ++g)
        if (G.order_of[g] > maxord) {
            maxord = G.order_of[g];
            gstar = g;
        }
    std::vector<elem> seed(size_t(maxord), gstar);
    const SearchOutcome ds = small_davenport(G, cfg);
    {
        std::vector<elem> w = ds.witness.expanded();
        elem p = 0;
        for (elem g : w) p = G.op(p, g);
        w.push_back(G.inv(p));
        std::sort(w.begin(), w.end());
        if (w.size() > seed.size() || (w.size() == seed.size() && w < seed)) seed = std::move(w);
    }
    const CosetInfo ci = build_cosets(G);
    const int dsz = (int)ci.gelem.size();
    int thr = std::max<int>(1, (int)seed.size());
    const bool idx2 = (n % 2 == 0) && maxord == n / 2;
    if (idx2) thr = std::max(thr, n / 2 + dsz);

    SearchOutcome out;
    out.quantity = Quantity::large_davenport;
    out.engine = "atom-dfs";

    if (ci.dG > 16) {
        // No exactness promise is made at these orders; report the seed.
        out.value = (int)seed.size();
        out.witness = sequence_from_list(n, seed);
        out.ordering = atom_ordering(G, out.witness);
        out.exact = false;
        out.nodes = ds.nodes;
        out.seconds = seconds_since(t0);
        return out;
    }

    // Sound depth caps.  A non-abelian group with a cyclic index-2 subgroup
    // (equivalently here: some element has order |G|/2) satisfies
    // D = |G|/2 + |G'| exactly, so no atom is longer than that; the search
    // still has to exhibit one of that length, which keeps the value a
    // genuine search result.  Every other non-abelian group has D < |G|:
    // the value |G| is attained only by cyclic groups and by dihedral groups
    // of order twice an odd number, and the latter all have a cyclic
    // index-2 subgroup.
    const int natural = idx2 ? n / 2 + dsz : std::max(n - 1, 0);
    const int len_cap = cfg.length_cap > 0 ? std::min(cfg.length_cap, natural) : natural;
    const bool can_flag = len_cap < natural;

    Symmetry mode = cfg.symmetry;
    AutPre ap;
    if (mode != Symmetry::off && n <= Caps::automorphism_order) {
        for (auto& f : automorphisms(G)) {
            bool ident = true;
            for (int i = 0; i < n; ++i)
                if (f[size_t(i)] != (elem)i) {
                    ident = false;
                    break;
                }
            if (!ident) ap.maps.push_back(std::move(f));
        }
        if (ap.maps.empty()) mode = Symmetry::off;
    } else {
        mode = Symmetry::off;
    }
    // The per-depth image state is quadratic in the automorphism count; very
    // large automorphism groups keep only the first-letter reduction.
    if (mode == Symmetry::canonical && ap.maps.size() > 2048) mode = Symmetry::first_step_orbits;
    if (mode == Symmetry::canonical) {
        const size_t A = ap.maps.size();
        ap.minfrom.assign(A * size_t(n + 1), n);
        ap.geqfrom.assign(A, 0);
        for (size_t ai = 0; ai < A; ++ai) {
            const auto& f = ap.maps[ai];
            int* row = ap.minfrom.data() + ai * size_t(n + 1);
            row[n] = n;
            int gq = 0;
            for (int L = n - 1; L >= 0; --L) {
                row[L] = std::min<int>(row[L + 1], f[size_t(L)]);
                if (gq == 0 && (int)f[size_t(L)] < L) gq = L + 1;
            }
            ap.geqfrom[ai] = gq;
        }
    }

    // Serial sweep over depths 0..1; each surviving depth-2 prefix becomes a
    // task.  Length-1..2 atoms never matter: thr >= 3 for every non-abelian
    // group (some element has order >= 3).
    std::vector<AUnit> units;
    struct ATask {
        elem g1, g2;
        size_t unit;
    };
    std::vector<ATask> tasks;
    uint64_t sweep_nodes = 0;
    bool sweep_dpc = false, sweep_lenf = false;

    AtomCtx sweep;
    sweep.wire(G, ci, ap, mode, len_cap, thr, can_flag, cfg.dp_cap, UINT64_MAX);
    if (len_cap >= 1) {
        for (elem g1 = 1; g1 < (elem)n; ++g1) {
            if (!sweep.viable(g1)) continue;
            if (!sweep.canonical_child(g1)) continue;
            if (!sweep.push(g1)) {
                sweep_dpc = true;
                continue;
            }
            ++sweep_nodes;
            if (len_cap >= 2) {
                for (elem g2 = g1; g2 < (elem)n; ++g2) {
                    if (!sweep.viable(g2)) continue;
                    if (!sweep.canonical_child(g2)) continue;
                    ++sweep_nodes;  // the task's root push
                    tasks.push_back({g1, g2, units.size()});
                    units.emplace_back();
                }
            } else if (can_flag) {
                sweep_lenf = true;
            }
            sweep.pop();
        }
    } else if (can_flag) {
        sweep_lenf = true;
    }

    const uint64_t per_task = split_budget(total_budget(G, cfg), tasks.size());
    parallel_for_tasks((int64_t)tasks.size(), effective_width(cfg.parallel_width),
                       [&](int64_t i) {
                           const ATask& t = tasks[size_t(i)];
                           AtomCtx C;
                           C.wire(G, ci, ap, mode, len_cap, thr, can_flag, cfg.dp_cap, per_task);
                           if (!C.push(t.g1) || !C.push(t.g2)) {
                               C.R.dp_capped = true;
                           } else {
                               atom_dfs(C);
                           }
                           units[t.unit] = std::move(C.R);
                       });

    int best_len = (int)seed.size();  // seeds compete as ordinary candidates
    std::vector<elem> best = std::move(seed);
    uint64_t nodes = ds.nodes + sweep_nodes;
    bool bud = false, dpc = sweep_dpc, lenf = sweep_lenf;
    for (const AUnit& U : units) {
        nodes += U.nodes;
        bud |= U.budget_capped;
        dpc |= U.dp_capped;
        lenf |= U.len_capped;
        if (U.best_len > best_len) {
            best_len = U.best_len;
            best = U.best;
        } else if (U.best_len == best_len && U.best_len >= 0 && U.best < best) {
            best = U.best;
        }
    }

    out.value = best_len;
    out.witness = sequence_from_list(n, best);
    out.ordering = atom_ordering(G, out.witness);
    out.exact = !(bud || dpc || lenf);
    out.nodes = nodes;
    out.seconds = seconds_since(t0);
    return out;
}

}  // namespace

// ---- public entry points ---------------------------------------------------

const char* symmetry_name(Symmetry s) {
    switch (s) {
        case Symmetry::off: return "off";
        case Symmetry::first_step_orbits: return "first-step-orbits";
        case Symmetry::canonical: return "canonical";
    }
    return "?";
}

SearchOutcome small_davenport(const FiniteGroup& G, const SearchConfig& cfg) {
    Translator tr;
    tr.init(G);
    if (G.abelian) {
        const int natural = G.n > 0 ? G.n - 1 : 0;
        const int len_cap =
            cfg.length_cap > 0 ? std::min(cfg.length_cap, natural) : natural;
        return d_driver<AbelianFree>(G, cfg, false, "multiset-dfs",
                                     [&]() { return AbelianFree(G, tr, len_cap); });
    }
    return d_driver<GenericFree>(G, cfg, false, "multiset-dfs",
                                 [&]() { return GenericFree(G, tr, cfg.dp_cap); });
}

SearchOutcome large_davenport(const FiniteGroup& G, const SearchConfig& cfg) {
    if (G.abelian) {
        Translator tr;
        tr.init(G);
        const int natural = G.n > 0 ? G.n - 1 : 0;
        const int len_cap =
            cfg.length_cap > 0 ? std::min(cfg.length_cap, natural) : natural;
        return d_driver<AbelianFree>(G, cfg, true, "free-closer",
                                     [&]() { return AbelianFree(G, tr, len_cap); });
    }
    return atom_driver(G, cfg);
}

SearchOutcome small_davenport_reference(const FiniteGroup& G, const SearchConfig& cfg) {
    const auto t0 = walltime::now();
    const int natural = G.n > 0 ? G.n - 1 : 0;
    const int len_cap = cfg.length_cap > 0 ? std::min(cfg.length_cap, natural) : natural;
    const bool can_flag = len_cap < natural;
    const uint64_t budget = total_budget(G, cfg);

    int best_len = -1;
    std::vector<elem> best, path;
    uint64_t nodes = 0;
    bool bud = false, lenf = false;
    std::function<void()> rec = [&]() {
        if ((int)path.size() > best_len) {
            best_len = (int)path.size();
            best = path;
        }
        if ((int)path.size() >= len_cap) {
            if (can_flag) lenf = true;
            return;
        }
        const elem lo = path.empty() ? elem(1) : path.back();
        for (elem g = lo; g < (elem)G.n; ++g) {
            if (nodes >= budget) {
                bud = true;
                return;
            }
            path.push_back(g);
            if (brute_free(G, path)) {
                ++nodes;
                rec();
                path.pop_back();
                if (bud) return;
            } else {
                path.pop_back();
            }
        }
    };
    rec();

    SearchOutcome out;
    out.quantity = Quantity::small_davenport;
    out.engine = "multiset-dfs-reference";
    out.value = best_len;
    out.witness = sequence_from_list(G.n, best);
    out.exact = !(bud || lenf);
    out.nodes = nodes;
    out.seconds = seconds_since(t0);
    return out;
}

SearchOutcome large_davenport_reference(const FiniteGroup& G, const SearchConfig& cfg) {
    const auto t0 = walltime::now();
    const int n = G.n;
    Translator tr;
    tr.init(G);
    const int len_cap = cfg.length_cap > 0 ? std::min(cfg.length_cap, n) : n;
    const bool can_flag = len_cap < n;
    const uint64_t budget = total_budget(G, cfg);

    std::set<std::vector<elem>> seen;
    std::vector<elem> steps, ms, best;
    std::vector<uint8_t> used(size_t(n), 0);
    std::vector<uint64_t> dpbuf, wts;
    std::vector<uint8_t> idbuf;
    std::vector<int> digs;
    std::vector<std::pair<elem, int>> terms;
    int best_len = -1;
    uint64_t nodes = 0;
    bool bud = false, lenf = false, dpc = false;

    std::function<void(elem)> rec = [&](elem p) {
        const int t = (int)steps.size();
        const elem* row = &G.table[size_t(p) * size_t(n)];
        for (int a = 0; a < n; ++a) {
            const elem q = row[a];
            if (q == 0) {
                const int L = t + 1;
                ms.assign(steps.begin(), steps.end());
                ms.push_back(elem(a));
                std::sort(ms.begin(), ms.end());
                if (seen.size() >= (size_t(1) << 20)) seen.clear();
                if (!seen.insert(ms).second) continue;
                terms.clear();
                for (size_t i = 0; i < ms.size();) {
                    size_t j = i;
                    while (j < ms.size() && ms[j] == ms[i]) ++j;
                    terms.push_back({ms[i], int(j - i)});
                    i = j;
                }
                const int verdict =
                    leaf_atom_check(G, tr, terms, cfg.dp_cap, dpbuf, idbuf, wts, digs);
                if (verdict < 0) {
                    dpc = true;
                    continue;
                }
                if (verdict == 0) continue;
                if (L > best_len) {
                    best_len = L;
                    best = ms;
                } else if (L == best_len && ms < best) {
                    best = ms;
                }
            } else if (!used[q]) {
                if (t + 1 < len_cap) {
                    if (nodes >= budget) {
                        bud = true;
                        return;
                    }
                    ++nodes;
                    steps.push_back(elem(a));
                    used[q] = 1;
                    rec(q);
                    used[q] = 0;
                    steps.pop_back();
                    if (bud) return;
                } else if (can_flag) {
                    lenf = true;
                }
            }
        }
    };
    rec(0);

    SearchOutcome out;
    out.quantity = Quantity::large_davenport;
    out.engine = "closed-walk-reference";
    out.value = best_len;  // never -1: the identity atom closes at the root
    out.witness = sequence_from_list(n, best);
    out.ordering = atom_ordering(G, out.witness);
    out.exact = !(bud || lenf || dpc);
    out.nodes = nodes;
    out.seconds = seconds_since(t0);
    return out;
}

AbelianDavenport abelian_davenport(const FiniteGroup& G) {
    const std::vector<int> inv = abelian_invariants(G);  // NotAbelian when it is not
    AbelianDavenport r;
    r.value = 1;
    for (int x : inv) r.value += x - 1;
    const int rank = (int)inv.size();
    if (rank <= 2) {
        r.exact = true;
        return r;
    }
    int m = G.n;  // p-group test: a single prime divides the order
    int p = 0;
    for (int d = 2; d * d <= m; ++d)
        if (m % d == 0) {
            p = d;
            break;
        }
    if (p == 0) p = m;
    while (m % p == 0) m /= p;
    if (m == 1) {
        r.exact = true;
        return r;
    }
    bool all2 = true;  // C2^k x C_{2u}, u odd, k <= 3
    for (int i = 0; i + 1 < rank; ++i)
        if (inv[size_t(i)] != 2) all2 = false;
    if (all2 && rank - 1 <= 3 && inv.back() % 4 == 2) r.exact = true;
    return r;
}

Bounds bounds(const FiniteGroup& G) {
    Bounds b;
    b.D_high = G.n;
    int maxord = 0;
    for (elem g = 0; g < (elem)G.n; ++g) maxord = std::max(maxord, G.order_of[g]);
    int d_low = maxord - 1;
    if (G.abelian) {
        const AbelianDavenport ad = abelian_davenport(G);
        d_low = std::max(d_low, ad.value - 1);
        if (ad.exact) {
            b.d_exact = true;
            b.D_exact = true;
        }
        b.d_low = d_low;
        b.D_low = d_low + 1;
        if (b.D_exact) b.D_high = b.D_low;
        return b;
    }
    if (G.n <= Caps::subgroup_enum_order) {
        for (const ElementSet& H : all_subgroups(G)) {
            const auto sub = subgroup_as_group(G, H);
            if (!sub.first.abelian) continue;
            d_low = std::max(d_low, abelian_davenport(sub.first).value - 1);
        }
    }
    const bool idx2 = (G.n % 2 == 0) && maxord == G.n / 2;
    if (idx2) {
        // cyclic subgroup of index 2: d = |G|/2 and D = |G|/2 + |G'| exactly
        d_low = std::max(d_low, G.n / 2);
        b.d_exact = true;
        b.D_exact = true;
    }
    b.d_low = d_low;
    b.D_low = std::max(d_low + 1, maxord);
    if (idx2) {
        b.D_low = std::max(b.D_low, G.n / 2 + derived_subgroup(G).count());
        b.D_high = b.D_low;
    }
    return b;
}

IneqWitness ineq_witness(const FiniteGroup& G, const ElementSet& H, const Sequence& S_free,
                         elem h, uint64_t dp_cap) {
    if (H.universe() != G.n) fail(Errc::BadParameter, "subgroup set is over a different group");
    if (S_free.universe != G.n) fail(Errc::BadParameter, "sequence is over a different group");
    if (h >= (elem)G.n) fail(Errc::BadParameter, "element out of range");
    if (!is_subgroup(G, H)) fail(Errc::BadParameter, "the given set is not a subgroup");
    for (const auto& [g, m] : S_free.terms) {
        (void)m;
        if (!H.test(g))
            fail(Errc::BadParameter,
                 "sequence term " + G.elem_name(g) + " lies outside the subgroup");
    }
    if (H.count() == G.n) fail(Errc::HNotProper, "the subgroup is the whole group");
    if (H.test(h)) fail(Errc::HNotProper, "the extending element lies in the subgroup");
    if (!is_product_one_free(G, S_free, dp_cap))
        fail(Errc::NotFree, "sequence is not product-one free");

    std::vector<elem> ord = S_free.expanded();  // ascending
    elem g = 0;
    for (elem x : ord) g = G.op(g, x);
    ord.push_back(G.inv(h));
    ord.push_back(G.op(h, G.inv(g)));

    IneqWitness w;
    w.ordering = ord;
    std::vector<elem> all = ord;
    std::sort(all.begin(), all.end());
    w.atom = sequence_from_list(G.n, std::move(all));
    try {
        if (!is_atom(G, w.atom, dp_cap))
            throw std::logic_error("extension witness failed the atom test");
    } catch (const Error& e) {
        if (e.code() != Errc::CapExceeded) throw;  // verification is best-effort
    }
    return w;
}

std::vector<elem> atom_ordering(const FiniteGroup& G, const Sequence& S) {
    if (S.universe != G.n) fail(Errc::BadParameter, "sequence is over a different group");
    const std::vector<elem> v = S.expanded();
    const size_t L = v.size();
    if (L == 0) fail(Errc::BadParameter, "the empty sequence has no product-one ordering");
    std::vector<uint8_t> used(L, 0), seen(size_t(G.n), 0);
    std::vector<elem> out;
    out.reserve(L);
    std::function<bool(elem)> rec = [&](elem p) -> bool {
        const size_t k = out.size();
        for (size_t i = 0; i < L; ++i) {
            if (used[i]) continue;
            if (i > 0 && v[i] == v[i - 1] && !used[i - 1]) continue;  // skip equal letters
            const elem q = G.op(p, v[i]);
            if (k + 1 == L) {
                if (q != 0) continue;
            } else if (q == 0 || seen[q]) {
                continue;  // proper prefix products stay distinct and non-identity
            }
            used[i] = 1;
            out.push_back(v[i]);
            if (k + 1 == L) return true;
            seen[q] = 1;
            if (rec(q)) return true;
            seen[q] = 0;
            used[i] = 0;
            out.pop_back();
        }
        return false;
    };
    if (!rec(0)) fail(Errc::BadParameter, "sequence has no product-one ordering");
    return out;
}

}  // namespace dav
