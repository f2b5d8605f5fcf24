#include <algorithm>
#include <vector>

#include "davenport/construct.hpp"

namespace dav {

namespace {

std::vector<elem> aut_identity(int n) {
    std::vector<elem> f(n);
    for (int i = 0; i < n; ++i) f[i] = elem(i);
    return f;
}

std::vector<elem> aut_compose(const std::vector<elem>& f, const std::vector<elem>& g) {
    std::vector<elem> r(f.size());
    for (size_t i = 0; i < f.size(); ++i) r[i] = f[g[i]];
    return r;
}

// N x| C_nH where the chosen generator of C_nH acts by the automorphism with
// the given generator images; phi_{w^j} = phi^j.
FiniteGroup sd_cyclic_top(FiniteGroup N, int nH, const char* hgen,
                          const std::vector<elem>& gens, const std::vector<elem>& images,
                          std::string name) {
    auto f = hom_from_gen_images(N, gens, N, images);
    if (!f) fail(Errc::NotAutomorphism, "action images are inconsistent");
    std::vector<std::vector<elem>> phi(nH);
    phi[0] = aut_identity(N.n);
    for (int j = 1; j < nH; ++j) phi[j] = aut_compose(*f, phi[j - 1]);
    auto H = with_gen_names(cyclic(nH), {hgen});
    return semidirect_product(N, H, phi, std::move(name));
}

// C_nN x| C_nH with w u w^-1 = u^k.
FiniteGroup sd_cc(int nN, int nH, long long k, std::string name) {
    auto N = with_gen_names(cyclic(nN), {"u"});
    k = ((k % nN) + nN) % nN;
    return sd_cyclic_top(std::move(N), nH, "w", {elem(1)}, {elem(k)}, std::move(name));
}

// Generalized dihedral: abelian A extended by the inverting involution.
FiniteGroup gen_dihedral(const FiniteGroup& A, std::string name) {
    if (!A.abelian) fail(Errc::NotAbelian, "generalized dihedral needs an abelian base");
    std::vector<elem> invmap(A.inverse.begin(), A.inverse.end());
    std::vector<std::vector<elem>> phi{aut_identity(A.n), invmap};
    auto H = with_gen_names(cyclic(2), {"s"});
    return semidirect_product(A, H, phi, std::move(name));
}

FiniteGroup g16_3() {  // C2^2 x| C4, the C4 generator swapping the two factors
    auto N = with_gen_names(direct_product(cyclic(2), cyclic(2)), {"u", "v"});
    return sd_cyclic_top(std::move(N), 4, "w", {2, 1}, {1, 2}, "C2^2:C4");
}

FiniteGroup g16_4() { return sd_cc(4, 4, -1, "C4:C4"); }

FiniteGroup g16_13() {  // (C2xC4) x| C2 with w u w = u v^2, w v w = v; center C4
    auto N = with_gen_names(direct_product(cyclic(2), cyclic(4)), {"u", "v"});
    return sd_cyclic_top(std::move(N), 2, "w", {4, 1}, {6, 1}, "(C2xC4):C2");
}

FiniteGroup g18_4() { return gen_dihedral(with_gen_names(direct_product(cyclic(3), cyclic(3)), {"u", "v"}), "C3^2:C2"); }
FiniteGroup g20_3() { return sd_cc(5, 4, 2, "C5:C4"); }
FiniteGroup g21_1() { return sd_cc(7, 3, 2, "C7:C3"); }
FiniteGroup g24_1() { return sd_cc(3, 8, -1, "C3:C8"); }

FiniteGroup g24_3() {  // Q8 x| C3 cycling a -> b -> ab; isomorphic to SL(2,3)
    auto N = with_gen_names(dicyclic(8), {"a", "b"});
    return sd_cyclic_top(std::move(N), 3, "w", {1, 4}, {4, 5}, "SL2(3)");
}

FiniteGroup g24_8() {  // C3 x| D8, rotation inverts, reflection acts trivially
    auto N = with_gen_names(cyclic(3), {"u"});
    auto H = dihedral(8);
    std::vector<elem> inv{0, 2, 1};
    std::vector<std::vector<elem>> phi(8);
    for (int h = 0; h < 8; ++h) phi[h] = (h % 4) % 2 ? inv : aut_identity(3);
    return semidirect_product(N, H, phi, "C3:D8");
}

FiniteGroup g27_4() { return sd_cc(9, 3, 4, "C9:C3"); }

FiniteGroup g36_3() {  // C2^2 x| C9 acting through the order-3 rotation u -> v -> uv
    auto N = with_gen_names(direct_product(cyclic(2), cyclic(2)), {"u", "v"});
    return sd_cyclic_top(std::move(N), 9, "w", {2, 1}, {1, 3}, "C2^2:C9");
}

// Two groups share the description C3^2 x| C4; the action pins them apart.
// (36,7) has the C4 generator inverting (center of order 2); (36,9) is the
// Frobenius group with the faithful rotation action (trivial center).
FiniteGroup g36_7() {
    auto N = with_gen_names(direct_product(cyclic(3), cyclic(3)), {"u", "v"});
    return sd_cyclic_top(std::move(N), 4, "w", {3, 1}, {6, 2}, "C3^2:C4");
}
FiniteGroup g36_9() {
    auto N = with_gen_names(direct_product(cyclic(3), cyclic(3)), {"u", "v"});
    return sd_cyclic_top(std::move(N), 4, "w", {3, 1}, {1, 6}, "C3^2:C4f");
}

FiniteGroup g39_1() { return sd_cc(13, 3, 3, "C13:C3"); }

// Two groups share the description C5 x| C8.  (40,1) has the generator of C8
// inverting C5, so <u, w^2> is a cyclic index-2 subgroup and D = 20 + |G'| =
// 25 as expected for that id; (40,3) has the faithful order-4 action.
FiniteGroup g40_1() { return sd_cc(5, 8, -1, "C5:C8"); }
FiniteGroup g40_3() { return sd_cc(5, 8, 2, "C5:C8f"); }

FiniteGroup g40_8() { return gen_dihedral(with_gen_names(direct_product(cyclic(2), cyclic(10)), {"u", "v"}), "(C2xC10):C2"); }
FiniteGroup g42_1() { return sd_cc(7, 6, 3, "C7:C6"); }

FiniteGroup w48() {  // (C4xC4) x| C3: c a c^-1 = a b^-1, c b c^-1 = a^-1 b^2
    auto N = with_gen_names(direct_product(cyclic(4), cyclic(4)), {"a", "b"});
    return sd_cyclic_top(std::move(N), 3, "c", {4, 1}, {7, 14}, "C4^2:C3");
}

FiniteGroup w80() {  // C2^4 x| C5: e maps a -> d, b -> ad, c -> bd, d -> cd
    auto N = with_gen_names(
        direct_product_many({cyclic(2), cyclic(2), cyclic(2), cyclic(2)}), {"a", "b", "c", "d"});
    auto G = sd_cyclic_top(std::move(N), 5, "e", {8, 4, 2, 1}, {1, 9, 5, 3}, "C2^4:C5");
    // The bundled witness data spells the product b*d as the single token
    // "bd"; register it as a named (redundant) generator so it parses.
    G.gens.emplace_back("bd", G.op(elem(G.gen_by_name("b")), elem(G.gen_by_name("d"))));
    return G;
}

FiniteGroup w81() {  // C3 x H27 with the H27 generators named c, d, x (d c d^-1 = c x^-1)
    auto A = with_gen_names(cyclic(3), {"a"});
    auto H = with_gen_names(heisenberg(3), {"c", "d", "x"});
    auto G = direct_product(A, H);
    G.name = "C3xH27";
    // As in w80: the witness data spells a*c as "ac".
    G.gens.emplace_back("ac", G.op(elem(G.gen_by_name("a")), elem(G.gen_by_name("c"))));
    return G;
}

struct Entry {
    int m, k;
    const char* spec;        // built via build_group when non-null
    FiniteGroup (*fn)();     // otherwise via this
};

const Entry kRegistry[] = {
    {2, 1, "C2", nullptr},
    {3, 1, "C3", nullptr},
    {4, 1, "C4", nullptr},
    {4, 2, "C2xC2", nullptr},
    {5, 1, "C5", nullptr},
    {6, 1, "D6", nullptr},
    {6, 2, "C6", nullptr},
    {7, 1, "C7", nullptr},
    {8, 1, "C8", nullptr},
    {8, 2, "C2xC4", nullptr},
    {8, 3, "D8", nullptr},
    {8, 4, "Q8", nullptr},
    {8, 5, "C2xC2xC2", nullptr},
    {9, 1, "C9", nullptr},
    {9, 2, "C3xC3", nullptr},
    {10, 1, "D10", nullptr},
    {12, 1, "Q12", nullptr},
    {12, 3, "A4", nullptr},
    {12, 4, "D12", nullptr},
    {12, 5, "C2xC6", nullptr},
    {14, 1, "D14", nullptr},
    {16, 2, "C4xC4", nullptr},
    {16, 3, nullptr, g16_3},
    {16, 4, nullptr, g16_4},
    {16, 5, "C2xC8", nullptr},
    {16, 6, "M16", nullptr},
    {16, 7, "D16", nullptr},
    {16, 8, "SD16", nullptr},
    {16, 9, "Q16", nullptr},
    {16, 10, "C2xC2xC4", nullptr},
    {16, 11, "C2xD8", nullptr},
    {16, 12, "C2xQ8", nullptr},
    {16, 13, nullptr, g16_13},
    {16, 14, "C2xC2xC2xC2", nullptr},
    {18, 1, "D18", nullptr},
    {18, 3, "C3xD6", nullptr},
    {18, 4, nullptr, g18_4},
    {18, 5, "C3xC6", nullptr},
    {20, 1, "Q20", nullptr},
    {20, 3, nullptr, g20_3},
    {20, 4, "D20", nullptr},
    {21, 1, nullptr, g21_1},
    {22, 1, "D22", nullptr},
    {24, 1, nullptr, g24_1},
    {24, 3, nullptr, g24_3},
    {24, 4, "Q24", nullptr},
    {24, 5, "C4xD6", nullptr},
    {24, 6, "D24", nullptr},
    {24, 7, "C2xQ12", nullptr},
    {24, 8, nullptr, g24_8},
    {24, 10, "C3xD8", nullptr},
    {24, 11, "C3xQ8", nullptr},
    {24, 12, "S4", nullptr},
    {24, 13, "C2xA4", nullptr},
    {24, 14, "C2xD12", nullptr},
    {24, 15, "C2xC2xC6", nullptr},
    {25, 2, "C5xC5", nullptr},
    {26, 1, "D26", nullptr},
    {27, 3, "H27", nullptr},
    {27, 4, nullptr, g27_4},
    {27, 5, "C3xC3xC3", nullptr},
    {28, 1, "Q28", nullptr},
    {28, 3, "D28", nullptr},
    {30, 1, "C5xD6", nullptr},
    {30, 2, "C3xD10", nullptr},
    {30, 3, "D30", nullptr},
    {32, 17, "M32", nullptr},
    {32, 18, "D32", nullptr},
    {32, 19, "SD32", nullptr},
    {32, 20, "Q32", nullptr},
    {32, 21, "C2xC4xC4", nullptr},
    {32, 22, "C2xgap:16.3", nullptr},
    {32, 23, "C2xgap:16.4", nullptr},
    {32, 25, "C4xD8", nullptr},
    {32, 26, "C4xQ8", nullptr},
    {32, 37, "C2xM16", nullptr},
    {32, 39, "C2xD16", nullptr},
    {32, 40, "C2xSD16", nullptr},
    {32, 41, "C2xQ16", nullptr},
    {32, 45, "C2xC2xC2xC4", nullptr},
    {32, 46, "C2xC2xD8", nullptr},
    {32, 47, "C2xC2xQ8", nullptr},
    {32, 48, "C2xgap:16.13", nullptr},
    {32, 51, "C2xC2xC2xC2xC2", nullptr},
    {34, 1, "D34", nullptr},
    {36, 1, "Q36", nullptr},
    {36, 3, nullptr, g36_3},
    {36, 4, "D36", nullptr},
    {36, 6, "C3xQ12", nullptr},
    {36, 7, nullptr, g36_7},
    {36, 9, nullptr, g36_9},
    {36, 10, "D6xD6", nullptr},
    {36, 11, "C3xA4", nullptr},
    {36, 12, "C6xD6", nullptr},
    {36, 13, "C2xgap:18.4", nullptr},
    {38, 1, "D38", nullptr},
    {39, 1, nullptr, g39_1},
    {40, 1, nullptr, g40_1},
    {40, 3, nullptr, g40_3},
    {40, 4, "Q40", nullptr},
    {40, 5, "C4xD10", nullptr},
    {40, 6, "D40", nullptr},
    {40, 8, nullptr, g40_8},
    {40, 10, "C5xD8", nullptr},
    {40, 11, "C5xQ8", nullptr},
    {40, 13, "C2xC2xD10", nullptr},
    {42, 1, nullptr, g42_1},
    {42, 2, "C2xgap:21.1", nullptr},
    {42, 3, "C7xD6", nullptr},
    {42, 4, "C3xD14", nullptr},
    {42, 5, "D42", nullptr},
    {48, 3, nullptr, w48},
    {48, 52, "C2xC2xC2xC6", nullptr},
    {64, 192, "C2xC2xC4xC4", nullptr},
    {64, 260, "C2xC2xC2xC2xC4", nullptr},
    {64, 267, "C2xC2xC2xC2xC2xC2", nullptr},
    {80, 49, nullptr, w80},
    {81, 15, "C3xC3xC3xC3", nullptr},
    {128, 2319, "C2xC2xC2xC2xC2xC4", nullptr},
    {128, 2328, "C2xC2xC2xC2xC2xC2xC2", nullptr},
    {256, 56092, "C2xC2xC2xC2xC2xC2xC2xC2", nullptr},
};

const Entry* find_entry(GapId id) {
    for (const auto& e : kRegistry)
        if (e.m == id.order && e.k == id.index) return &e;
    return nullptr;
}

}  // namespace

bool registry_has(GapId id) { return find_entry(id) != nullptr; }

FiniteGroup registry_build(GapId id) {
    const Entry* e = find_entry(id);
    if (!e) fail(Errc::UnknownRegistryId, "no fixture for id " + id.to_string());
    return e->spec ? build_group(e->spec) : e->fn();
}

std::vector<GapId> registry_ids() {
    std::vector<GapId> ids;
    for (const auto& e : kRegistry) ids.push_back({e.m, e.k});
    std::sort(ids.begin(), ids.end());
    return ids;
}

FiniteGroup fixture(const std::string& name) {
    if (name == "w48") return w48();
    if (name == "w80") return w80();
    if (name == "w81") return w81();
    fail(Errc::UnknownRegistryId, "unknown fixture '" + name + "'");
}

}  // namespace dav
