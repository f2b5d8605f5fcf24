#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "davenport/construct.hpp"
#include "davenport/sequence.hpp"

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

}  // namespace

TEST_CASE("family constructors produce the advertised groups") {
    CHECK(cyclic(1).n == 1);
    CHECK(cyclic(7).abelian);
    CHECK(exponent(cyclic(7)) == 7);
    CHECK(dihedral(2).n == 2);  // degenerate dihedral = C2
    CHECK_FALSE(dihedral(12).abelian);
    CHECK(dicyclic(8).order_of[dicyclic(8).gen_by_name("b")] == 4);
    CHECK(semidihedral(16).n == 16);
    CHECK(modular_maximal_cyclic(16).n == 16);
    CHECK(exponent(semidihedral(16)) == 8);
    CHECK(exponent(modular_maximal_cyclic(16)) == 8);
    CHECK_FALSE(is_isomorphic(semidihedral(16), modular_maximal_cyclic(16)));
    CHECK_FALSE(is_isomorphic(semidihedral(16), dihedral(16)));
    CHECK(heisenberg(3).n == 27);
    CHECK(exponent(heisenberg(3)) == 3);
    CHECK(heisenberg(5).n == 125);
    CHECK(exponent(heisenberg(5)) == 5);
    CHECK(symmetric(4).n == 24);
    CHECK(alternating(4).n == 12);
    CHECK(alternating(5).n == 60);
    CHECK(is_isomorphic(symmetric(3), dihedral(6)));
}

TEST_CASE("constructor domain errors") {
    CHECK(thrown_code([] { cyclic(0); }) == Errc::BadParameter);
    CHECK(thrown_code([] { dihedral(7); }) == Errc::BadParameter);
    CHECK(thrown_code([] { dicyclic(6); }) == Errc::BadParameter);
    CHECK(thrown_code([] { semidihedral(8); }) == Errc::BadParameter);
    CHECK(thrown_code([] { modular_maximal_cyclic(12); }) == Errc::BadParameter);
    CHECK(thrown_code([] { heisenberg(4); }) == Errc::BadParameter);
    CHECK(thrown_code([] { heisenberg(9); }) == Errc::BadParameter);
    CHECK(thrown_code([] { cyclic(6000); }) == Errc::CapExceeded);
}

TEST_CASE("direct products rename colliding generators") {
    FiniteGroup G = direct_product(cyclic(2), cyclic(3));
    CHECK(G.n == 6);
    CHECK(G.abelian);
    CHECK(G.gen_by_name("g1") >= 0);
    CHECK(G.gen_by_name("g2") >= 0);
    CHECK(is_isomorphic(G, cyclic(6)));

    FiniteGroup H = direct_product_many({cyclic(2), cyclic(2), cyclic(2)});
    CHECK(H.n == 8);
    CHECK(abelian_invariants(H) == std::vector<int>{2, 2, 2});

    // distinct base names survive unchanged
    FiniteGroup K = direct_product(cyclic(3), dihedral(8));
    CHECK(K.gen_by_name("g") >= 0);
    CHECK(K.gen_by_name("r") >= 0);
    CHECK(K.gen_by_name("s") >= 0);
    CHECK_FALSE(K.abelian);
}

TEST_CASE("semidirect product validates the action") {
    FiniteGroup N = cyclic(3), H = cyclic(2);
    // inversion action of C2 on C3 gives D6
    std::vector<std::vector<elem>> inv_phi = {{0, 1, 2}, {0, 2, 1}};
    FiniteGroup G = semidirect_product(N, H, inv_phi, "C3:C2");
    CHECK(G.n == 6);
    CHECK(is_isomorphic(G, dihedral(6)));

    // map that is not a bijection
    std::vector<std::vector<elem>> bad1 = {{0, 1, 2}, {0, 0, 1}};
    CHECK(thrown_code([&] { semidirect_product(N, H, bad1, "x"); }) == Errc::NotAutomorphism);
    // bijection that is not multiplicative: fixes 1, swaps 0 and 2 - breaks identity
    std::vector<std::vector<elem>> bad2 = {{0, 1, 2}, {2, 1, 0}};
    CHECK(thrown_code([&] { semidirect_product(N, H, bad2, "x"); }) == Errc::NotAutomorphism);
    // phi_h an automorphism for each h but h -> phi_h not a homomorphism:
    // nontrivial action indexed by the identity of H
    std::vector<std::vector<elem>> bad3 = {{0, 2, 1}, {0, 1, 2}};
    CHECK(thrown_code([&] { semidirect_product(N, H, bad3, "x"); }) == Errc::NotHomomorphism);
    // wrong outer arity
    std::vector<std::vector<elem>> bad4 = {{0, 1, 2}};
    CHECK(thrown_code([&] { semidirect_product(N, H, bad4, "x"); }) == Errc::BadParameter);
}

TEST_CASE("from_permutations closes generator sets") {
    // S3 from a transposition and a 3-cycle
    FiniteGroup G = from_permutations(3, {{1, 0, 2}, {1, 2, 0}}, "S3", {"t", "c"});
    CHECK(G.n == 6);
    CHECK(is_isomorphic(G, symmetric(3)));
    CHECK(G.gen_by_name("t") >= 0);
    CHECK(G.gen_by_name("c") >= 0);

    // Klein four-group from two disjoint double transpositions
    FiniteGroup V = from_permutations(4, {{1, 0, 3, 2}, {2, 3, 0, 1}});
    CHECK(V.n == 4);
    CHECK(abelian_invariants(V) == std::vector<int>{2, 2});

    CHECK(thrown_code([] { from_permutations(3, {{0, 0, 1}}); }) == Errc::BadParameter);
    CHECK(thrown_code([] { from_permutations(3, {{0, 1}}); }) == Errc::BadParameter);
}

TEST_CASE("hom_from_gen_images extends exactly the consistent maps") {
    FiniteGroup C6 = cyclic(6), C3 = cyclic(3), C4 = cyclic(4);
    const elem g6 = elem(C6.gen_by_name("g")), g3 = elem(C3.gen_by_name("g"));
    auto h = hom_from_gen_images(C6, {g6}, C3, {g3});
    REQUIRE(h.has_value());
    for (int x = 0; x < 6; ++x)
        for (int y = 0; y < 6; ++y)
            CHECK((*h)[C6.op(elem(x), elem(y))] == C3.op((*h)[x], (*h)[y]));

    // order 4 cannot map onto order 3
    CHECK_FALSE(hom_from_gen_images(C4, {elem(C4.gen_by_name("g"))}, C3, {g3}).has_value());

    // generators that do not generate leave the extension undefined
    FiniteGroup D8g = dihedral(8);
    const elem r = elem(D8g.gen_by_name("r"));
    CHECK_FALSE(hom_from_gen_images(D8g, {r}, C3, {0}).has_value());
}

TEST_CASE("with_gen_names renames and re-renders") {
    FiniteGroup G = with_gen_names(dihedral(8), {"x", "y"});
    CHECK(G.gen_by_name("x") >= 0);
    CHECK(G.gen_by_name("r") == -1);
    Sequence S = parse_sequence(G, "x^2*y");
    CHECK(S.length() == 1);
    CHECK(thrown_code([] { with_gen_names(dihedral(8), {"x"}); }) == Errc::BadParameter);
    CHECK(thrown_code([] { with_gen_names(dihedral(8), {"x", "2y"}); }) == Errc::BadParameter);
}

TEST_CASE("cayley text round-trips") {
    for (const char* spec : {"C6", "D8", "Q8", "A4"}) {
        CAPTURE(spec);
        FiniteGroup G = build_group(spec);
        FiniteGroup H = from_cayley_text(to_cayley_text(G), G.name);
        CHECK(H.n == G.n);
        CHECK(H.table == G.table);  // same labeling, not just isomorphic
    }
}

TEST_CASE("cayley ingestion relabels a shifted identity to index 0") {
    // C3 written with the identity at index 2 (x = 0 maps 0->1->2->0 ... )
    const char* text =
        "cayley 1\n"
        "# a comment line\n"
        "3\n"
        "1 2 0\n"
        "2 0 1\n"
        "0 1 2\n"
        "names: u v e\n";
    FiniteGroup G = from_cayley_text(text, "shifted");
    CHECK(G.n == 3);
    CHECK(G.op(0, 0) == 0);
    CHECK(is_isomorphic(G, cyclic(3)));
    CHECK(G.elem_name(0) == "e");
}

TEST_CASE("cayley ingestion rejects malformed input with specific codes") {
    CHECK(thrown_code([] { from_cayley_text("caylee 1\n1\n0\n", "x"); }) == Errc::ParseError);
    CHECK(thrown_code([] { from_cayley_text("cayley 2\n1\n0\n", "x"); }) == Errc::ParseError);
    CHECK(thrown_code([] { from_cayley_text("cayley 1\n2\n0 1\n", "x"); }) == Errc::ParseError);
    CHECK(thrown_code([] { from_cayley_text("cayley 1\n2\n0 1\n1 5\n", "x"); }) ==
          Errc::NotClosed);
    CHECK(thrown_code([] { from_cayley_text("cayley 1\n2\n0 1\n1 0\nnames: a 2b\n", "x"); }) ==
          Errc::ParseError);
    CHECK(thrown_code([] { from_cayley_text("cayley 1\n2\n0 1\n1 0\nnames: a a\n", "x"); }) ==
          Errc::ParseError);
    CHECK(thrown_code([] { from_cayley_text("cayley 1\n2\n0 1\n1 0\njunk\n", "x"); }) ==
          Errc::ParseError);
    // latin square with no two-sided identity anywhere (no row equals 0 1 2)
    CHECK(thrown_code([] { from_cayley_text("cayley 1\n3\n1 0 2\n0 2 1\n2 1 0\n", "x"); }) ==
          Errc::NoIdentity);
    CHECK(thrown_code([] { from_cayley_file("/nonexistent/path.cay"); }) == Errc::IoError);
}

TEST_CASE("group-spec grammar") {
    CHECK(build_group("C12").n == 12);
    CHECK(build_group("D8").n == 8);
    CHECK(build_group("Q8").n == 8);
    CHECK(build_group("SD16").n == 16);
    CHECK(build_group("M16").n == 16);
    CHECK(build_group("H27").n == 27);
    CHECK(build_group("A4").n == 12);
    CHECK(build_group("S4").n == 24);
    CHECK(build_group("C2xC2xC3").n == 12);
    CHECK(is_isomorphic(build_group("C2xD6"), build_group("D12")));
    CHECK(build_group("gap:8.4").name == "Q8");
    CHECK(build_group("fix:w48").n == 48);

    CHECK(thrown_code([] { build_group(""); }) == Errc::ParseError);
    CHECK(thrown_code([] { build_group("C"); }) == Errc::ParseError);
    CHECK(thrown_code([] { build_group("X5"); }) == Errc::ParseError);
    CHECK(thrown_code([] { build_group("C4x"); }) == Errc::ParseError);
    CHECK(thrown_code([] { build_group("gap:99.1"); }) == Errc::UnknownRegistryId);
    CHECK(thrown_code([] { build_group("gap:8"); }) == Errc::ParseError);
    CHECK(thrown_code([] { build_group("D7"); }) == Errc::BadParameter);
    CHECK(thrown_code([] { build_group("cayley:/nonexistent.cay"); }) == Errc::IoError);
}

TEST_CASE("cayley file via the spec grammar") {
    const std::string path = "test_construct_tmp.cay";
    {
        std::ofstream out(path);
        out << to_cayley_text(dihedral(8));
    }
    FiniteGroup G = build_group("cayley:" + path);
    CHECK(G.n == 8);
    CHECK(is_isomorphic(G, dihedral(8)));
    // as a product factor it must come last; the whole tail is the path
    FiniteGroup P = build_group("C2xcayley:" + path);
    CHECK(P.n == 16);
    std::remove(path.c_str());
}

TEST_CASE("registry ids are sorted, unique, and build what they claim") {
    const std::vector<GapId> ids = registry_ids();
    REQUIRE(!ids.empty());
    CHECK(std::is_sorted(ids.begin(), ids.end()));
    CHECK(std::adjacent_find(ids.begin(), ids.end()) == ids.end());
    for (const GapId& id : ids) {
        CAPTURE(id.to_string());
        CHECK(registry_has(id));
        if (id.order > 128) continue;  // keep the loop fast
        FiniteGroup G = registry_build(id);
        CHECK(G.n == id.order);
    }
    CHECK_FALSE(registry_has({7, 2}));
    CHECK(thrown_code([] { registry_build({7, 2}); }) == Errc::UnknownRegistryId);
}

TEST_CASE("registry spot identifications") {
    CHECK(is_isomorphic(registry_build({8, 3}), dihedral(8)));
    CHECK(is_isomorphic(registry_build({8, 4}), dicyclic(8)));
    CHECK(is_isomorphic(registry_build({12, 3}), alternating(4)));
    CHECK(is_isomorphic(registry_build({16, 7}), dihedral(16)));
    CHECK(is_isomorphic(registry_build({16, 8}), semidihedral(16)));
    CHECK(is_isomorphic(registry_build({16, 9}), dicyclic(16)));
    CHECK(is_isomorphic(registry_build({16, 6}), modular_maximal_cyclic(16)));
    CHECK(is_isomorphic(registry_build({24, 12}), symmetric(4)));
    CHECK(is_isomorphic(registry_build({27, 3}), heisenberg(3)));
    CHECK(fingerprint(registry_build({27, 4})) != fingerprint(heisenberg(3)));
}

TEST_CASE("pinned witness fixtures") {
    FiniteGroup w48 = fixture("w48");
    CHECK(w48.n == 48);
    const elem a = elem(w48.gen_by_name("a")), b = elem(w48.gen_by_name("b")),
               c = elem(w48.gen_by_name("c"));
    CHECK(w48.order_of[a] == 4);
    CHECK(w48.order_of[b] == 4);
    CHECK(w48.order_of[c] == 3);
    CHECK(w48.conj(c, a) == w48.op(a, w48.inv(b)));         // c a c^-1 = a b^-1
    CHECK(w48.conj(c, b) == w48.op(w48.inv(a), w48.power(b, 2)));  // c b c^-1 = a^-1 b^2

    FiniteGroup w80 = fixture("w80");
    CHECK(w80.n == 80);
    const elem e = elem(w80.gen_by_name("e"));
    CHECK(w80.order_of[e] == 5);
    // e maps a -> d, and the token "bd" names the product b*d
    CHECK(w80.conj(e, elem(w80.gen_by_name("a"))) == elem(w80.gen_by_name("d")));
    CHECK(elem(w80.gen_by_name("bd")) ==
          w80.op(elem(w80.gen_by_name("b")), elem(w80.gen_by_name("d"))));

    FiniteGroup w81 = fixture("w81");
    CHECK(w81.n == 81);
    CHECK(w81.order_of[w81.gen_by_name("a")] == 3);
    CHECK(elem(w81.gen_by_name("ac")) ==
          w81.op(elem(w81.gen_by_name("a")), elem(w81.gen_by_name("c"))));

    CHECK(thrown_code([] { fixture("w99"); }) == Errc::UnknownRegistryId);
}

TEST_CASE("pinned automorphism group sizes") {
    CHECK(automorphisms(build_group("C4xC4")).size() == 96);
    CHECK(automorphisms(build_group("gap:16.3")).size() == 32);
    CHECK(automorphisms(build_group("C2xD8")).size() == 64);
    CHECK(automorphisms(build_group("C2xQ8")).size() == 192);
    CHECK(automorphisms(heisenberg(3)).size() == 432);
}
