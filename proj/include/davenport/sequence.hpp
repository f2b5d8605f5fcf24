#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "davenport/group.hpp"

namespace dav {

// A sequence over a group: a finite multiset of elements (order carries no
// information).  Stored as (element, multiplicity) pairs sorted by element.
struct Sequence {
    int universe = 0;  // group order the elements index into
    std::vector<std::pair<elem, int>> terms;

    int length() const {
        int L = 0;
        for (auto& [g, m] : terms) L += m;
        return L;
    }
    bool empty() const { return terms.empty(); }
    int multiplicity(elem g) const {
        for (auto& [h, m] : terms)
            if (h == g) return m;
        return 0;
    }
    // Element list with repeats, ascending.
    std::vector<elem> expanded() const {
        std::vector<elem> v;
        for (auto& [g, m] : terms) v.insert(v.end(), size_t(m), g);
        return v;
    }
    bool operator==(const Sequence&) const = default;
};

Sequence sequence_from_list(int universe, std::vector<elem> elems);

// ---- sequence grammar --------------------------------------------------
//
//   seq    := term*                          (terms separated by whitespace)
//   term   := atom ('[' uint ']')?           (multiplicity, default 1)
//   atom   := '(' word ')' | word
//   word   := factor ('*' factor)*           (product, left to right)
//   factor := genname ('^' sint)?            (negative powers = inverses)
//
// Example: "r^2*s (r*s)[3] g[2]".  A multiplicity of 0 contributes nothing.

// Order-preserving parse with multiplicities expanded in place; this is the
// form used for explicit orderings.
std::vector<elem> parse_element_list(const FiniteGroup& G, const std::string& text);
Sequence parse_sequence(const FiniteGroup& G, const std::string& text);

// Canonical rendering: terms ascending by element, element names wrapped in
// parentheses when they are multi-factor words, multiplicities as [k].
std::string render_sequence(const FiniteGroup& G, const Sequence& S);
std::string render_element_list(const FiniteGroup& G, const std::vector<elem>& ordered);

elem product_of(const FiniteGroup& G, const std::vector<elem>& ordered);

// ---- product sets -----------------------------------------------------------
//
// pi(S) = set of products over all orderings of S; pi of the empty sequence
// is {identity}.  The table below materializes pi(T) for every sub-multiset
// T of S via the recurrence pi(T) = union over g in supp(T) of pi(T - g)*g.
// Sub-multisets are ranked in mixed radix: slot i (ascending support) has
// digit = multiplicity in T and weight prod_{j<i}(mult_j + 1).

class PiTable {
  public:
    PiTable(const FiniteGroup& G, const Sequence& S, uint64_t dp_cap);

    uint64_t size() const { return size_; }           // number of sub-multisets
    uint64_t full_rank() const { return size_ - 1; }  // rank of S itself
    int words() const { return W_; }
    const uint64_t* at(uint64_t rank) const { return data_.data() + rank * W_; }
    bool contains_identity(uint64_t rank) const { return at(rank)[0] & 1; }
    ElementSet set_at(uint64_t rank) const;
    const std::vector<std::pair<elem, int>>& support() const { return supp_; }

  private:
    int n_, W_;
    uint64_t size_;
    std::vector<std::pair<elem, int>> supp_;
    std::vector<uint64_t> data_;
};

// pi(S) as a set.  Cost grows with the number of sub-multisets of S
// (Errc::CapExceeded above dp_cap).
ElementSet product_set(const FiniteGroup& G, const Sequence& S, uint64_t dp_cap);

// identity in pi(S); the empty sequence is product-one.
bool is_product_one(const FiniteGroup& G, const Sequence& S, uint64_t dp_cap);

// no non-empty sub-multiset is product-one; the empty sequence is free.
bool is_product_one_free(const FiniteGroup& G, const Sequence& S, uint64_t dp_cap);

// S is product-one and cannot be split into two non-empty product-one
// sub-multisets.  The identity singleton is the unique length-1 atom.
bool is_atom(const FiniteGroup& G, const Sequence& S, uint64_t dp_cap);

constexpr uint64_t kDefaultDpCap = uint64_t(1) << 24;

}  // namespace dav
