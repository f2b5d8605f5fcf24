#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "davenport/element_set.hpp"
#include "davenport/errors.hpp"

namespace dav {

// Work caps.  Exceeding one raises Errc::CapExceeded; nothing is ever
// silently truncated.
struct Caps {
    static constexpr int max_group_order = 5040;     // any materialized table
    static constexpr int subgroup_enum_order = 64;   // all_subgroups / is_isomorphic
    static constexpr int automorphism_order = 32;    // automorphisms()
    static constexpr int permutation_closure = 5040; // from_permutations
};

// A finite group as a fully materialized multiplication table.
// Element 0 is always the identity.  `gens` are the named generators used by
// the sequence parser and for rendering elements as words.
struct FiniteGroup {
    int n = 0;
    std::vector<elem> table;    // row-major: table[a*n+b] = a*b
    std::vector<elem> inverse;  // inverse[a]
    std::vector<int> order_of;  // element orders
    bool abelian = false;
    std::string name;
    std::vector<std::pair<std::string, elem>> gens;  // ordered, names unique
    std::vector<std::string> display;                // element -> shortest word in gens

    elem op(elem a, elem b) const { return table[size_t(a) * n + b]; }
    elem inv(elem a) const { return inverse[a]; }
    elem conj(elem h, elem g) const { return op(op(h, g), inv(h)); }  // h g h^-1
    elem power(elem g, long long k) const;

    const std::string& elem_name(elem g) const { return display[g]; }
    // Generator lookup by name; -1 if absent.
    int gen_by_name(const std::string& s) const;
};

// Validation performed by make_group:
//   identity  - element 0 is a two-sided identity (always checked)
//   inverses  - every element has a two-sided inverse (always checked)
//   closure   - all table entries < n (always checked)
//   assoc     - full O(n^3) associativity scan (only when check_assoc;
//               constructors that derive tables from verified models skip it,
//               ingested tables never do)
// `display` overrides the generated element names (must have exactly n
// entries when given); otherwise each element is named by its shortest word
// over the generators.
FiniteGroup make_group(int n, std::vector<elem> table, std::string name,
                       std::vector<std::pair<std::string, elem>> gens, bool check_assoc,
                       std::vector<std::string> display = {});

// Identifier-shaped: letter or underscore first, then letters/digits/_ .
// Generator names and cayley-file labels must satisfy this so the sequence
// grammar can refer to them.
bool valid_name_token(const std::string& s);

int element_order(const FiniteGroup& G, elem g);
int exponent(const FiniteGroup& G);
ElementSet center(const FiniteGroup& G);
ElementSet derived_subgroup(const FiniteGroup& G);

// Closure of `seed` (plus identity) under multiplication.
ElementSet subgroup_closure(const FiniteGroup& G, const ElementSet& seed);
bool is_subgroup(const FiniteGroup& G, const ElementSet& H);
bool is_normal(const FiniteGroup& G, const ElementSet& H);

// Every subgroup, by closing all <=3-element generating sets and then taking
// pairwise joins to a fixpoint.  Requires |G| <= Caps::subgroup_enum_order.
std::vector<ElementSet> all_subgroups(const FiniteGroup& G);

// Quotient G/N (N must be normal).  Coset of the identity gets index 0;
// cosets are numbered by their smallest member, in element order.
FiniteGroup quotient_group(const FiniteGroup& G, const ElementSet& N);

// The subgroup H as a group in its own right: elements renumbered in
// increasing element order (identity stays 0).  Second result maps new
// indices back to elements of G.
std::pair<FiniteGroup, std::vector<elem>> subgroup_as_group(const FiniteGroup& G,
                                                            const ElementSet& H);

// Invariant factors n_1 | n_2 | ... | n_r of an abelian group (empty for the
// trivial group).  Errc::NotAbelian otherwise.
std::vector<int> abelian_invariants(const FiniteGroup& G);
// Invariant factors of G/[G,G]; defined for every group.
std::vector<int> abelianization_invariants(const FiniteGroup& G);

std::vector<int> conjugacy_class_sizes(const FiniteGroup& G);  // sorted ascending
std::vector<std::pair<int, int>> order_multiset(const FiniteGroup& G);  // (order, count)

// Cheap relabeling-invariant signature used to gate isomorphism tests and to
// pin registry fixtures.
struct GroupFingerprint {
    int order = 0;
    int exponent = 0;
    int center_order = 0;
    int derived_order = 0;
    std::vector<std::pair<int, int>> order_multiset;  // (element order, count)
    std::vector<int> abelianization;                  // invariant factors
    std::vector<int> class_sizes;                     // sorted

    bool operator==(const GroupFingerprint&) const = default;
    std::string to_string() const;
};

GroupFingerprint fingerprint(const FiniteGroup& G);

// Exact isomorphism test (fingerprint gate + generator-image backtracking).
// Requires both orders <= Caps::subgroup_enum_order.
bool is_isomorphic(const FiniteGroup& A, const FiniteGroup& B);

// All automorphisms, each as an image table.  Requires
// |G| <= Caps::automorphism_order.
std::vector<std::vector<elem>> automorphisms(const FiniteGroup& G);

}  // namespace dav
