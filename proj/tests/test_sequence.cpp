#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <vector>

#include "davenport/construct.hpp"
#include "davenport/sequence.hpp"
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

Sequence random_sequence(const FiniteGroup& G, uint64_t& state, int max_len) {
    std::vector<elem> v;
    const int len = int(oracle::splitmix64(state) % (max_len + 1));
    for (int i = 0; i < len; ++i) v.push_back(elem(oracle::splitmix64(state) % G.n));
    return sequence_from_list(G.n, v);
}

}  // namespace

TEST_CASE("sequence_from_list sorts and merges") {
    Sequence S = sequence_from_list(8, {5, 1, 5, 3, 1, 1});
    CHECK(S.universe == 8);
    CHECK(S.terms == std::vector<std::pair<elem, int>>{{1, 3}, {3, 1}, {5, 2}});
    CHECK(S.length() == 6);
    CHECK(S.multiplicity(5) == 2);
    CHECK(S.multiplicity(2) == 0);
    CHECK(S.expanded() == std::vector<elem>{1, 1, 1, 3, 5, 5});
    CHECK(sequence_from_list(8, {}).empty());
}

TEST_CASE("parsing terms, powers, words, and multiplicities") {
    FiniteGroup G = dihedral(8);
    const elem r = elem(G.gen_by_name("r")), s = elem(G.gen_by_name("s"));

    Sequence S = parse_sequence(G, "r^2*s (r*s)[3] r[2]");
    CHECK(S.length() == 6);
    CHECK(S.multiplicity(G.op(G.power(r, 2), s)) == 1);
    CHECK(S.multiplicity(G.op(r, s)) == 3);
    CHECK(S.multiplicity(r) == 2);

    // negative powers are inverses; multiplicity 0 contributes nothing
    CHECK(parse_sequence(G, "r^-1").terms ==
          std::vector<std::pair<elem, int>>{{G.inv(r), 1}});
    CHECK(parse_sequence(G, "r[0] s").terms ==
          std::vector<std::pair<elem, int>>{{s, 1}});
    CHECK(parse_sequence(G, "").empty());
    CHECK(parse_sequence(G, "  \t\n ").empty());

    // ordering in the text does not matter
    CHECK(parse_sequence(G, "s r r") == parse_sequence(G, "r s r"));
}

TEST_CASE("parse errors carry the right codes") {
    FiniteGroup G = dihedral(8);
    CHECK(thrown_code([&] { parse_sequence(G, "q"); }) == Errc::UnknownGenerator);
    CHECK(thrown_code([&] { parse_sequence(G, "r^"); }) == Errc::ParseError);
    CHECK(thrown_code([&] { parse_sequence(G, "r^x"); }) == Errc::ParseError);
    CHECK(thrown_code([&] { parse_sequence(G, "(r*s"); }) == Errc::ParseError);
    CHECK(thrown_code([&] { parse_sequence(G, "r["); }) == Errc::ParseError);
    CHECK(thrown_code([&] { parse_sequence(G, "r[2"); }) == Errc::ParseError);
    CHECK(thrown_code([&] { parse_sequence(G, "r[-2]"); }) == Errc::ParseError);
    CHECK(thrown_code([&] { parse_sequence(G, "r**s"); }) == Errc::ParseError);
    CHECK(thrown_code([&] { parse_sequence(G, "r s %"); }) == Errc::ParseError);
    CHECK(thrown_code([&] { parse_sequence(G, "()"); }) == Errc::ParseError);
}

TEST_CASE("element lists preserve order; sequences do not") {
    FiniteGroup G = dihedral(8);
    const elem r = elem(G.gen_by_name("r")), s = elem(G.gen_by_name("s"));
    std::vector<elem> v = parse_element_list(G, "s r r^3 (r*s)[2]");
    REQUIRE(v.size() == 5);
    CHECK(v[0] == s);
    CHECK(v[1] == r);
    CHECK(v[2] == G.power(r, 3));
    CHECK(v[3] == G.op(r, s));
    CHECK(v[3] == v[4]);
    // round trip through the renderer
    CHECK(parse_element_list(G, render_element_list(G, v)) == v);
}

TEST_CASE("render_sequence is canonical and parses back") {
    FiniteGroup G = dihedral(8);
    for (const char* text : {"s r r", "(r*s)[2] r^2*s s", "r[3] s[2] (r^2)[2]", ""}) {
        CAPTURE(text);
        Sequence S = parse_sequence(G, text);
        CHECK(parse_sequence(G, render_sequence(G, S)) == S);
    }
    // ascending by element index, multiplicities bracketed
    CHECK(render_sequence(G, parse_sequence(G, "s r r")) == "r[2] s");
}

TEST_CASE("product_of multiplies left to right") {
    FiniteGroup G = dihedral(8);
    const elem r = elem(G.gen_by_name("r")), s = elem(G.gen_by_name("s"));
    CHECK(product_of(G, {}) == 0);
    CHECK(product_of(G, {r, r, r, r}) == 0);
    CHECK(product_of(G, {r, s}) == G.op(r, s));
    CHECK(product_of(G, {s, r}) == G.op(s, r));
    CHECK(G.op(r, s) != G.op(s, r));
}

TEST_CASE("PiTable layout and ranks") {
    FiniteGroup G = cyclic(6);
    Sequence S = parse_sequence(G, "g[2] g^2 g^3[3]");  // multiplicities 2,1,3
    PiTable T(G, S, kDefaultDpCap);
    CHECK(T.size() == 3 * 2 * 4);
    CHECK(T.full_rank() == T.size() - 1);
    CHECK(T.words() == 1);
    CHECK(T.support() == S.terms);
    // rank 0 is the empty sub-multiset: pi = {identity}
    CHECK(T.set_at(0).to_vector() == std::vector<elem>{0});
    CHECK(T.contains_identity(0));
    CHECK(T.set_at(T.full_rank()) == product_set(G, S, kDefaultDpCap));
}

TEST_CASE("product sets match the permutation oracle on fixed cases") {
    FiniteGroup G = dihedral(8);
    for (const char* text : {"", "r", "r s", "r[2] s[2]", "r r^2 r^3 s", "(r*s)[3] r",
                             "s[4]", "r[3] s (r^2*s)"}) {
        CAPTURE(text);
        Sequence S = parse_sequence(G, text);
        CHECK(product_set(G, S, kDefaultDpCap) == oracle::product_set(G, S));
    }
}

TEST_CASE("product sets match the permutation oracle on random sequences") {
    uint64_t state = 42;
    for (const char* spec : {"C5", "C2xC4", "C3xC3", "D8", "Q8", "A4", "D12", "C12"}) {
        CAPTURE(spec);
        FiniteGroup G = build_group(spec);
        for (int i = 0; i < 40; ++i) {
            Sequence S = random_sequence(G, state, 6);
            CAPTURE(render_sequence(G, S));
            CHECK(product_set(G, S, kDefaultDpCap) == oracle::product_set(G, S));
        }
    }
}

TEST_CASE("predicates match the oracle on random sequences") {
    uint64_t state = 7;
    for (const char* spec : {"C6", "D8", "Q8", "C2xC2xC2", "A4"}) {
        CAPTURE(spec);
        FiniteGroup G = build_group(spec);
        for (int i = 0; i < 30; ++i) {
            Sequence S = random_sequence(G, state, 5);
            CAPTURE(render_sequence(G, S));
            CHECK(is_product_one(G, S, kDefaultDpCap) == oracle::product_one(G, S));
            CHECK(is_product_one_free(G, S, kDefaultDpCap) == oracle::product_one_free(G, S));
            CHECK(is_atom(G, S, kDefaultDpCap) == oracle::atom(G, S));
        }
    }
}

TEST_CASE("predicate edge cases") {
    FiniteGroup G = dihedral(8);
    const Sequence empty{G.n, {}};
    CHECK(is_product_one(G, empty, kDefaultDpCap));
    CHECK(is_product_one_free(G, empty, kDefaultDpCap));
    CHECK_FALSE(is_atom(G, empty, kDefaultDpCap));

    const Sequence id_single = sequence_from_list(G.n, {0});
    CHECK(is_atom(G, id_single, kDefaultDpCap));  // the unique atom with identity
    CHECK_FALSE(is_product_one_free(G, id_single, kDefaultDpCap));

    // identity inside a longer product-one sequence splits off
    Sequence S = parse_sequence(G, "r r^3");
    CHECK(is_atom(G, S, kDefaultDpCap));
    Sequence T = sequence_from_list(G.n, {0, elem(G.gen_by_name("r")),
                                          G.power(elem(G.gen_by_name("r")), 3)});
    CHECK(is_product_one(G, T, kDefaultDpCap));
    CHECK_FALSE(is_atom(G, T, kDefaultDpCap));

    // a maximum-length atom of D8 (D = 6)
    CHECK(is_atom(G, parse_sequence(G, "r[4] s (r^2*s)"), kDefaultDpCap));
    // s^2 = 1 splits off, so this is product-one but not an atom
    CHECK(is_product_one(G, parse_sequence(G, "r[4] s[2]"), kDefaultDpCap));
    CHECK_FALSE(is_atom(G, parse_sequence(G, "r[4] s[2]"), kDefaultDpCap));
}

TEST_CASE("dp cap is enforced at the exact boundary") {
    FiniteGroup G = cyclic(12);
    Sequence S = parse_sequence(G, "g[5]");  // 6 sub-multisets
    CHECK(product_set(G, S, 6) == oracle::product_set(G, S));
    CHECK(thrown_code([&] { product_set(G, S, 5); }) == Errc::CapExceeded);
    Sequence S2 = parse_sequence(G, "g[2] g^2 g^3");  // 3*2*2 = 12
    CHECK_NOTHROW(PiTable(G, S2, 12));
    CHECK(thrown_code([&] { PiTable(G, S2, 11); }) == Errc::CapExceeded);
}
