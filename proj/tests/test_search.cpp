#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <string>
#include <vector>

#include "davenport/construct.hpp"
#include "davenport/search.hpp"
#include "oracles.hpp"

using namespace dav;

namespace {

template <typename F>
Errc thrown_code(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected a dav::Error");
    return Errc::BadParameter;
}

// Invariants every outcome must satisfy, independent of the engine.
void check_outcome_wellformed(const FiniteGroup& G, const SearchOutcome& o) {
    CHECK(o.witness.length() == o.value);
    if (o.quantity == Quantity::small_davenport) {
        CHECK(is_product_one_free(G, o.witness, kDefaultDpCap));
        CHECK(o.ordering.empty());
    } else {
        CHECK(is_atom(G, o.witness, kDefaultDpCap));
        REQUIRE(o.ordering.size() == size_t(o.value));
        CHECK(product_of(G, o.ordering) == 0);
        std::vector<elem> sorted = o.ordering;
        std::sort(sorted.begin(), sorted.end());
        CHECK(sorted == o.witness.expanded());
    }
}

bool same_outcome(const SearchOutcome& a, const SearchOutcome& b) {
    return a.value == b.value && a.witness == b.witness && a.ordering == b.ordering &&
           a.exact == b.exact;
}

}  // namespace

TEST_CASE("searched constants match the brute-force oracle up to order 8") {
    for (const char* spec :
         {"C2", "C3", "C4", "C2xC2", "C5", "C6", "D6", "C7", "C8", "C2xC4", "C2xC2xC2",
          "D8", "Q8"}) {
        CAPTURE(spec);
        FiniteGroup G = build_group(spec);
        SearchOutcome d = small_davenport(G), D = large_davenport(G);
        CHECK(d.exact);
        CHECK(D.exact);
        CHECK(d.value == oracle::small_davenport(G));
        CHECK(D.value == oracle::large_davenport(G));
        check_outcome_wellformed(G, d);
        check_outcome_wellformed(G, D);
    }
}

TEST_CASE("production and reference engines agree up to order 10") {
    for (const char* spec : {"C4", "C2xC2", "C6", "D6", "C8", "C2xC4", "C2xC2xC2", "D8",
                             "Q8", "C3xC3", "C10", "D10"}) {
        CAPTURE(spec);
        FiniteGroup G = build_group(spec);
        CHECK(same_outcome(small_davenport(G), small_davenport_reference(G)));
        SearchOutcome D = large_davenport(G), Dref = large_davenport_reference(G);
        CHECK(same_outcome(D, Dref));
        CHECK(Dref.engine == "closed-walk-reference");
    }
}

TEST_CASE("table spot checks for orders 10 to 32") {
    auto run = [](const char* spec, int want_d, int want_D, int max_order_exact = 16) {
        CAPTURE(spec);
        FiniteGroup G = build_group(spec);
        SearchConfig cfg;
        cfg.max_order_exact = max_order_exact;
        SearchOutcome d = small_davenport(G, cfg), D = large_davenport(G, cfg);
        CHECK(d.exact);
        CHECK(D.exact);
        CHECK(d.value == want_d);
        CHECK(D.value == want_D);
        check_outcome_wellformed(G, d);
        check_outcome_wellformed(G, D);
    };
    run("D10", 5, 10);
    run("gap:12.1", 6, 9);  // dicyclic of order 12
    run("A4", 4, 7);
    run("D12", 6, 9);
    run("D14", 7, 14);
    run("M16", 8, 10);
    run("D16", 8, 12);
    run("SD16", 8, 12);
    run("Q16", 8, 12);
}

TEST_CASE("a cyclic index-2 subgroup soundly caps the atom search") {
    // In-cap order: the exact search lands exactly on |G|/2 + |G'|.
    {
        FiniteGroup G = dihedral(12);
        CHECK(large_davenport(G).value == 6 + (int)derived_subgroup(G).count());
    }
    // Beyond the exactness cap the formula acts only as a sound length cap
    // and reporting threshold: a budgeted run never claims exactness, never
    // exceeds the formula value, and reports either the seed (an element of
    // maximal order repeated, or the closed d-witness if longer) or a found
    // full-length atom -- nothing in between.
    {
        FiniteGroup G = dihedral(32);
        SearchConfig cfg;
        cfg.node_budget = 50'000;
        SearchOutcome d = small_davenport(G, cfg);
        CHECK(!d.exact);
        CHECK(d.value <= 16);
        SearchOutcome D = large_davenport(G, cfg);
        CHECK(!D.exact);
        const int seed_len = std::max(16, d.value + 1);
        CHECK((D.value == seed_len || D.value == 16 + 8));
        check_outcome_wellformed(G, D);
        // The structural bounds carry the formula's lower bound instantly.
        Bounds b = bounds(G);
        CHECK(b.D_low >= 16 + 8);
        CHECK(b.D_high >= b.D_low);
    }
}

TEST_CASE("outcomes are identical across parallel widths and symmetry modes") {
    for (const char* spec : {"D12", "A4", "Q8"}) {
        CAPTURE(spec);
        FiniteGroup G = build_group(spec);
        SearchConfig base;
        SearchOutcome ref_d = small_davenport(G, base);
        SearchOutcome ref_D = large_davenport(G, base);
        std::vector<uint64_t> nodes_by_mode;
        for (Symmetry mode : {Symmetry::off, Symmetry::first_step_orbits, Symmetry::canonical}) {
            CAPTURE(symmetry_name(mode));
            uint64_t nodes_first = 0;
            for (int width : {1, 2, 8}) {
                CAPTURE(width);
                SearchConfig cfg;
                cfg.symmetry = mode;
                cfg.parallel_width = width;
                SearchOutcome d = small_davenport(G, cfg), D = large_davenport(G, cfg);
                CHECK(same_outcome(d, ref_d));
                CHECK(same_outcome(D, ref_D));
                if (width == 1)
                    nodes_first = D.nodes;
                else
                    CHECK(D.nodes == nodes_first);  // node count is width-independent
            }
            nodes_by_mode.push_back(nodes_first);
        }
        // more pruning never visits more nodes
        CHECK(nodes_by_mode[2] <= nodes_by_mode[1]);
        CHECK(nodes_by_mode[1] <= nodes_by_mode[0]);
    }
}

TEST_CASE("symmetry mode names") {
    CHECK(std::string(symmetry_name(Symmetry::off)) == "off");
    CHECK(std::string(symmetry_name(Symmetry::first_step_orbits)) == "first-step-orbits");
    CHECK(std::string(symmetry_name(Symmetry::canonical)) == "canonical");
}

TEST_CASE("an explicit node budget caps work and is reported as inexact") {
    FiniteGroup G = dihedral(16);
    SearchConfig cfg;
    cfg.node_budget = 40;
    SearchOutcome d = small_davenport(G, cfg);
    CHECK_FALSE(d.exact);
    CHECK(d.value <= 8);  // never more than the true value
    check_outcome_wellformed(G, d);  // the lower bound still has a witness

    FiniteGroup A = build_group("gap:16.3");
    SearchOutcome D = large_davenport(A, cfg);
    CHECK_FALSE(D.exact);
    CHECK(D.value <= 7);
    check_outcome_wellformed(A, D);

    // same budget, same result: budgeted runs are still deterministic
    for (int width : {2, 8}) {
        SearchConfig c2 = cfg;
        c2.parallel_width = width;
        CHECK(same_outcome(large_davenport(A, c2), D));
    }
}

TEST_CASE("a length cap truncates the search and drops exactness") {
    FiniteGroup G = cyclic(8);
    SearchConfig cfg;
    cfg.length_cap = 3;
    SearchOutcome d = small_davenport(G, cfg);
    CHECK(d.value == 3);
    CHECK_FALSE(d.exact);

    FiniteGroup D8g = dihedral(8);
    SearchConfig cfg2;
    cfg2.length_cap = 2;
    SearchOutcome D = large_davenport(D8g, cfg2);
    CHECK(D.value == 2);  // r . r^3 closes at length 2
    CHECK_FALSE(D.exact);

    // a cap at or above the answer changes nothing
    SearchConfig cfg3;
    cfg3.length_cap = 6;
    SearchOutcome Dfull = large_davenport(D8g, cfg3);
    CHECK(Dfull.value == 6);
    CHECK(Dfull.exact);
}

TEST_CASE("abelian searches go through the free-closer engine with D = d + 1") {
    for (const char* spec : {"C12", "C2xC6", "C3xC3", "C2xC2xC4"}) {
        CAPTURE(spec);
        FiniteGroup G = build_group(spec);
        SearchOutcome d = small_davenport(G), D = large_davenport(G);
        CHECK(d.engine == "multiset-dfs");
        CHECK(D.engine == "free-closer");
        CHECK(D.value == d.value + 1);
        AbelianDavenport f = abelian_davenport(G);
        CHECK(f.exact);
        CHECK(f.value == D.value);
    }
}

TEST_CASE("abelian_davenport formula values and exactness") {
    CHECK(abelian_davenport(cyclic(12)).value == 12);
    CHECK(abelian_davenport(cyclic(12)).exact);
    CHECK(abelian_davenport(build_group("C2xC4")).value == 5);     // rank 2
    CHECK(abelian_davenport(build_group("C3xC3xC3")).value == 7);  // p-group
    CHECK(abelian_davenport(build_group("C3xC3xC3")).exact);
    AbelianDavenport f = abelian_davenport(build_group("C2xC2xC6"));  // C2^2 x C6
    CHECK(f.value == 8);
    CHECK(f.exact);
    AbelianDavenport g = abelian_davenport(build_group("C2xC6xC6"));  // rank 3, mixed
    CHECK(g.value == 12);
    CHECK_FALSE(g.exact);  // only a lower bound here
    CHECK(thrown_code([] { abelian_davenport(dihedral(8)); }) == Errc::NotAbelian);
}

TEST_CASE("structural bounds") {
    Bounds c = bounds(cyclic(12));
    CHECK(c.d_low == 11);
    CHECK(c.d_exact);
    CHECK(c.D_low == 12);
    CHECK(c.D_high == 12);
    CHECK(c.D_exact);

    Bounds d8 = bounds(dihedral(8));  // cyclic index-2 subgroup
    CHECK(d8.d_low == 4);
    CHECK(d8.d_exact);
    CHECK(d8.D_low == 6);
    CHECK(d8.D_high == 6);
    CHECK(d8.D_exact);

    Bounds a4 = bounds(alternating(4));
    CHECK(a4.d_low == 3);  // Klein four-subgroup
    CHECK_FALSE(a4.d_exact);
    CHECK(a4.D_low == 4);
    CHECK(a4.D_high == 12);
    CHECK_FALSE(a4.D_exact);
    CHECK(a4.d_low + 1 <= a4.D_low);
}

TEST_CASE("ineq_witness builds a verified atom from a free sequence") {
    FiniteGroup G = dihedral(12);
    const elem r = elem(G.gen_by_name("r")), s = elem(G.gen_by_name("s"));
    ElementSet seed(G.n);
    seed.set(r);
    ElementSet H = subgroup_closure(G, seed);  // C6, index 2
    Sequence S = parse_sequence(G, "r[5]");    // free over H, product r^5

    IneqWitness w = ineq_witness(G, H, S, s);
    CHECK(w.atom.length() == 7);  // |S| + 2
    CHECK(is_atom(G, w.atom, kDefaultDpCap));
    CHECK(product_of(G, w.ordering) == 0);
    CHECK(w.ordering.size() == 7);
    // ordering = S ascending, then h^-1, then h g^-1
    CHECK(w.ordering[5] == G.inv(s));
    CHECK(w.ordering[6] == G.op(s, G.inv(G.power(r, 5))));

    // H must be proper and h outside it
    CHECK(thrown_code([&] {
              ElementSet full(G.n);
              for (int i = 0; i < G.n; ++i) full.set(i);
              ineq_witness(G, full, S, s);
          }) == Errc::HNotProper);
    CHECK(thrown_code([&] { ineq_witness(G, H, S, r); }) == Errc::HNotProper);
    // S must be free...
    CHECK(thrown_code([&] { ineq_witness(G, H, parse_sequence(G, "r[6]"), s); }) ==
          Errc::NotFree);
    // ...and supported inside H
    CHECK(thrown_code([&] { ineq_witness(G, H, parse_sequence(G, "s"), s); }) ==
          Errc::BadParameter);
}

TEST_CASE("atom_ordering returns the least product-one ordering") {
    FiniteGroup G = dihedral(8);
    Sequence S = parse_sequence(G, "r[4] s (r^2*s)");
    std::vector<elem> ord = atom_ordering(G, S);
    CHECK(product_of(G, ord) == 0);
    std::vector<elem> sorted = ord;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == S.expanded());
    CHECK(ord == parse_element_list(G, "r r r s r (r^2*s)"));
    // no product-one ordering exists for a free sequence
    CHECK(thrown_code([&] { atom_ordering(G, parse_sequence(G, "r")); }) ==
          Errc::BadParameter);
}

TEST_CASE("searches on the trivial and two-element group") {
    FiniteGroup C1 = cyclic(1);
    SearchOutcome d1 = small_davenport(C1), D1 = large_davenport(C1);
    CHECK(d1.value == 0);
    CHECK(D1.value == 1);  // the identity singleton
    CHECK(D1.witness == sequence_from_list(1, {0}));

    FiniteGroup C2g = cyclic(2);
    CHECK(small_davenport(C2g).value == 1);
    CHECK(large_davenport(C2g).value == 2);
}
