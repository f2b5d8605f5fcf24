#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "davenport/group.hpp"
#include "davenport/sequence.hpp"

namespace dav {

// Automorphism-based pruning applied by the atom search (non-abelian D):
//   off              - no automorphism pruning
//   first_step_orbits- the first (least) element of a multiset is restricted
//                      to automorphism-orbit minima
//   canonical        - only multisets that are lexicographically least in
//                      their Aut(G)-orbit are explored (orderly generation:
//                      removing the largest element of a canonical multiset
//                      leaves a canonical multiset, so the pruned tree still
//                      reaches every canonical multiset)
// All modes are exhaustive up to symmetry: on uninterrupted runs value,
// witness, ordering and the exact flag are identical across modes, and at
// any parallel width every run (interrupted or not) is reproducible.  The
// free-sequence search never uses automorphism pruning (canonical multiset
// order already visits each multiset once).  Modes other than `off` require
// |G| <= Caps::automorphism_order and silently degrade to `off` above it;
// `canonical` further degrades to `first_step_orbits` beyond 2048
// automorphisms (its per-depth bookkeeping is quadratic in the count).
enum class Symmetry { off, first_step_orbits, canonical };
const char* symmetry_name(Symmetry s);

struct SearchConfig {
    // Orders up to this run to exhaustion with no default node budget; above
    // it a default budget applies and results may come back exact=false.
    int max_order_exact = 16;
    // Cap on sub-multiset table sizes (freeness contexts, leaf atom checks).
    uint64_t dp_cap = kDefaultDpCap;
    // Worker threads; 0 = all available.  Results never depend on this.
    int parallel_width = 0;
    Symmetry symmetry = Symmetry::canonical;
    // Total node budget, split evenly over root branches; 0 = unlimited when
    // |G| <= max_order_exact, otherwise a default of kDefaultNodeBudget
    // (kDefaultNodeBudgetLarge above order 64, where each node costs O(|G|)).
    uint64_t node_budget = 0;
    // Hard length cap on explored sequences/walks; 0 = the natural cap |G|.
    int length_cap = 0;
};

constexpr uint64_t kDefaultNodeBudget = 20'000'000;
constexpr uint64_t kDefaultNodeBudgetLarge = 500'000;

enum class Quantity { small_davenport, large_davenport };

struct SearchOutcome {
    Quantity quantity = Quantity::small_davenport;
    int value = 0;
    Sequence witness;             // length == value; empty only when value 0
    std::vector<elem> ordering;   // for D: a product-one ordering of witness
    bool exact = true;            // false only when a cap or budget was hit;
                                  // value is then a verified lower bound
    uint64_t nodes = 0;           // search-tree nodes visited (deterministic)
    std::string engine;           // which engine produced the result
    double seconds = 0.0;         // wall time (not part of any JSON output)
};

// d(G): maximum length of a product-one-free sequence.  Depth-first search
// over multisets in non-decreasing element order (the identity is never a
// candidate); a node is extended only while the extension stays free, so the
// deepest node reached is exact.  Witness: the lexicographically least
// maximum-length multiset.  Engine label "multiset-dfs".
SearchOutcome small_davenport(const FiniteGroup& G, const SearchConfig& cfg = {});

// D(G): maximum length of an atom (minimal product-one sequence).
//
// Abelian groups ("free-closer" engine): every atom of length L+1 is a free
// multiset S of length L together with the inverse of its product, so the
// free-sequence search doubles as the atom search; D = d+1.
//
// Non-abelian groups ("atom-dfs" engine): depth-first enumeration of term
// multisets in non-decreasing element order, maintaining for every
// sub-multiset its product set factored through the derived subgroup (all
// products of a fixed sub-multiset land in a single G'-coset, stored as a
// |G'|-bit mask).  A multiset is an atom exactly when its full product set
// contains the identity and no complementary pair of proper sub-multisets
// both do.  Branches whose running coset cannot be cancelled by the letters
// still allowed are cut, and optionally only orbit-canonical multisets are
// explored (cfg.symmetry).  Atom length never exceeds |G| because every
// product-one ordering of an atom has pairwise-distinct proper prefix
// products; |G| is attained by no non-abelian group except the dihedral
// groups of order twice an odd number, which caps the depth one lower for
// everything else.  Nodes shorter than the best constructive lower bound
// (longest element order, d+1 via a product closer, the cyclic-index-2
// formula) skip the atom test.  Groups with |G'| > 16 fall back to the
// constructive lower bound and report exact=false.
//
// Witness: the lexicographically least maximum-length atom multiset, plus
// its lexicographically least product-one ordering.
SearchOutcome large_davenport(const FiniteGroup& G, const SearchConfig& cfg = {});

// Serial reference engines: same contracts and identical outcomes (value,
// witness, ordering), but single-threaded and algorithmically independent.
// The free-sequence reference re-tests freeness by brute-force permutation
// products.  The atom reference ("closed-walk-reference") enumerates closed
// identity-based walks in the Cayley graph whose proper prefix products are
// pairwise distinct and not the identity -- every product-one ordering of an
// atom is such a walk, so no atom is missed and walk length is <= |G| -- and
// tests each walk's term multiset with the leaf atom predicate (itself
// cross-checked against permutation brute force in the tests).  Practical
// for small orders; kept as the baseline the production engines are tested
// and benchmarked against.
SearchOutcome small_davenport_reference(const FiniteGroup& G, const SearchConfig& cfg = {});
SearchOutcome large_davenport_reference(const FiniteGroup& G, const SearchConfig& cfg = {});

// D(G) for abelian G by formula: with invariant factors n_1 | ... | n_r the
// value sum(n_i - 1) + 1 is always a lower bound; it is exact when G is a
// p-group, has rank <= 2, or is C2^k x C2n with k <= 3 and n odd.
// Errc::NotAbelian otherwise.
struct AbelianDavenport {
    int value = 0;
    bool exact = false;  // false: value is a lower bound only
};
AbelianDavenport abelian_davenport(const FiniteGroup& G);

// Structural bounds needing no search.
//   d_low : best of max element order - 1 and the abelian formula over the
//           abelian subgroups (enumerated when |G| <= Caps::subgroup_enum_order)
//   D_low : best of d_low + 1, the max element order, and |G|/2 + |G'| when a
//           non-abelian G has a cyclic subgroup of index 2
//   D_high: |G|, sharpened to D_low when D_exact is set
// The exact flags mark the two cases where the bound is the true value:
// abelian groups whose formula is exact, and non-abelian groups with a
// cyclic index-2 subgroup (then d = |G|/2 and D = |G|/2 + |G'|).
struct Bounds {
    int d_low = 0;
    int D_low = 1;
    int D_high = 1;
    bool d_exact = false;
    bool D_exact = false;
};
Bounds bounds(const FiniteGroup& G);

// The constructive step from a free sequence to an atom: for a proper
// subgroup H, a product-one-free sequence S over H with product g (taken in
// ascending element order), and h outside H, the sequence
//     U = S . h^-1 . (h g^-1)
// is an atom of length |S| + 2; the returned ordering lists S ascending and
// then the two closing terms.  The atom property is re-verified before
// returning.  Errors: HNotProper (H = G, or h in H), NotFree, BadParameter
// (terms outside H / universe mismatch).
struct IneqWitness {
    Sequence atom;
    std::vector<elem> ordering;
};
IneqWitness ineq_witness(const FiniteGroup& G, const ElementSet& H, const Sequence& S_free,
                         elem h, uint64_t dp_cap = kDefaultDpCap);

// Lexicographically least product-one ordering of an atom.  (Searches the
// orderings whose proper prefix products avoid repeats and the identity;
// for an atom every product-one ordering qualifies, so none is missed.)
// Errc::BadParameter when no such ordering exists.
std::vector<elem> atom_ordering(const FiniteGroup& G, const Sequence& S);

}  // namespace dav
