#pragma once

#include <optional>
#include <string>
#include <vector>

#include "davenport/group.hpp"

namespace dav {

// ---- constructors ----------------------------------------------------------

FiniteGroup cyclic(int n);  // generator "g"

// Direct product; factor generator names that collide get a numeric suffix
// per factor position (g -> g1, g2, ...).
FiniteGroup direct_product(const FiniteGroup& A, const FiniteGroup& B);
FiniteGroup direct_product_many(const std::vector<FiniteGroup>& factors);

// Semidirect product N x| H given, for every element h of H, the image table
// of the automorphism phi_h of N.  Validates that each phi_h is an
// automorphism (Errc::NotAutomorphism) and that h -> phi_h is a homomorphism
// (Errc::NotHomomorphism).  Element (a, h) has index a*|H| + h.
FiniteGroup semidirect_product(const FiniteGroup& N, const FiniteGroup& H,
                               const std::vector<std::vector<elem>>& phi, std::string name);

FiniteGroup dihedral(int order);                // order even >= 2; gens r, s
FiniteGroup dicyclic(int order);                // order divisible by 4; gens a (order n/2), b; b^2 = a^(n/4)
FiniteGroup semidihedral(int order);            // order 2^k >= 16; b a b = a^(n/4 - 1)
FiniteGroup modular_maximal_cyclic(int order);  // order 2^k >= 16; b a b = a^(n/4 + 1)
FiniteGroup heisenberg(int p);                  // extraspecial exponent-p group of order p^3, p odd prime; gens a, b, c with [b,a] = c^-1 central
FiniteGroup symmetric(int degree);              // gens t = (1 2), c = (1 2 ... n)
FiniteGroup alternating(int degree);            // gens: consecutive 3-cycles

// Closure of `gens` (0-based one-line permutations of `degree` points) under
// composition; capped at Caps::permutation_closure elements.
FiniteGroup from_permutations(int degree, const std::vector<std::vector<int>>& gens,
                              std::string name = "", std::vector<std::string> gen_names = {});

// Extend a map defined on generators of A to a homomorphism A -> B by
// closing under multiplication; nullopt if the extension is inconsistent or
// the generators do not generate A.
std::optional<std::vector<elem>> hom_from_gen_images(const FiniteGroup& A,
                                                     const std::vector<elem>& gens,
                                                     const FiniteGroup& B,
                                                     const std::vector<elem>& images);

// Rebuild G with new generator names (positional) and regenerated element
// display names.
FiniteGroup with_gen_names(const FiniteGroup& G, const std::vector<std::string>& names);

// ---- cayley-v1 text format -------------------------------------------------
//
//   cayley 1
//   <n>
//   <n rows of n 0-based indices>
//   names: <n whitespace-separated labels>     (optional line)
//
// '#' starts a comment; blank lines are ignored.  The identity may sit at any
// index in the file; ingestion relabels it to 0.  Ingested tables always get
// the full O(n^3) associativity check.

FiniteGroup from_cayley_text(const std::string& text, const std::string& name);
FiniteGroup from_cayley_file(const std::string& path);
std::string to_cayley_text(const FiniteGroup& G);

// ---- group-spec grammar ------------------------------------------------
//
//   spec   := factor ('x' factor)*
//   factor := 'C'n | 'D'n | 'Q'n | 'SD'n | 'M'n | 'H'n | 'A'n | 'S'n
//           | 'gap:'m'.'k | 'fix:'name | 'cayley:'path
//
// C - cyclic, D - dihedral (order n), Q - dicyclic (order n), SD/M -
// semidihedral / modular maximal-cyclic (order n = 2^k), H - extraspecial
// exponent-p of order n = p^3, A/S - alternating/symmetric of degree n,
// gap: - registry fixture by id, fix: - named pinned presentation,
// cayley: - table file (consumes the rest of the string, so it must be the
// last factor).  Products multiply left to right.

FiniteGroup build_group(const std::string& spec);

// ---- registry of pinned fixtures -------------------------------------------

struct GapId {
    int order = 0;
    int index = 0;
    auto operator<=>(const GapId&) const = default;
    std::string to_string() const {
        return std::to_string(order) + "." + std::to_string(index);
    }
};

bool registry_has(GapId id);
FiniteGroup registry_build(GapId id);  // Errc::UnknownRegistryId if absent
std::vector<GapId> registry_ids();     // sorted

// Pinned presentations behind the fix: grammar factor; these carry the
// generator names the bundled witness sequences are written in.
//   w48:  (C4 x C4) x| C3,  gens a b c,  c a c^-1 = a b^-1, c b c^-1 = a^-1 b^2
//   w80:  C2^4 x| C5,       gens a b c d e,  e maps a->d, b->ad, c->bd, d->cd
//   w81:  C3 x H27,         gens a (central) and c d x with d c d^-1 = c x^-1
FiniteGroup fixture(const std::string& name);

}  // namespace dav
