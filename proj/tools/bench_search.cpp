// Benchmark: OpenMP-parallel search engines vs the serial reference
// implementation.  With no --group arguments a built-in suite of small
// groups runs both and cross-checks that value, witness and exactness
// agree; with --group only the production engines run (add --reference to
// compare, practical for small orders only).

#include <cinttypes>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "davenport/construct.hpp"
#include "davenport/search.hpp"

using namespace dav;

namespace {

Symmetry parse_symmetry(const std::string& s) {
    if (s == "off") return Symmetry::off;
    if (s == "first-step-orbits") return Symmetry::first_step_orbits;
    return Symmetry::canonical;
}

void print_row(const FiniteGroup& G, const SearchOutcome& r) {
    std::printf("  %-24s %-22s %s=%-3d %-7s nodes=%-12" PRIu64 " %8.3fs  witness=%s\n",
                G.name.c_str(), r.engine.c_str(),
                r.quantity == Quantity::small_davenport ? "d" : "D", r.value,
                r.exact ? "exact" : "lower", r.nodes, r.seconds,
                render_sequence(G, r.witness).c_str());
}

// Returns 1 on disagreement so the suite can fail loudly.
int compare(const FiniteGroup& G, const SearchOutcome& a, const SearchOutcome& b) {
    if (a.value == b.value && a.witness == b.witness && a.exact == b.exact &&
        a.ordering == b.ordering)
        return 0;
    std::printf("  MISMATCH on %s\n", G.name.c_str());
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Compare the parallel Davenport-constant engines against the serial "
        "reference implementation"};
    std::vector<std::string> specs;
    std::string what = "both";
    std::string sym = "canonical";
    int width = 0;
    int max_order_exact = 16;
    uint64_t budget = 0;
    bool reference = false;
    app.add_option("-g,--group", specs,
                   "group spec(s); default: built-in cross-check suite");
    app.add_option("--what", what, "quantity: d, D or both")
        ->check(CLI::IsMember({"d", "D", "both"}));
    app.add_option("--symmetry", sym, "walk-engine pruning mode")
        ->check(CLI::IsMember({"off", "first-step-orbits", "canonical"}));
    app.add_option("--parallel", width, "worker threads (0 = all cores)");
    app.add_option("--node-budget", budget, "total node budget (0 = policy default)");
    app.add_option("--max-order-exact", max_order_exact,
                   "orders up to this run unbudgeted");
    app.add_flag("--reference", reference, "also run the serial reference engines");
    CLI11_PARSE(app, argc, argv);

    SearchConfig cfg;
    cfg.parallel_width = width;
    cfg.node_budget = budget;
    cfg.symmetry = parse_symmetry(sym);
    cfg.max_order_exact = max_order_exact;

    std::setvbuf(stdout, nullptr, _IOLBF, 0);
    const bool suite = specs.empty();
    if (suite) {
        // Orders <= 10: the reference walk enumerates every closed walk with
        // distinct prefix products, so it grows like (order - 1)!.
        specs = {"C8", "C2xC4", "C3xC3", "C10", "D8", "Q8", "D10"};
        reference = true;
    }

    int bad = 0;
    for (const std::string& spec : specs) {
        FiniteGroup G = build_group(spec);
        std::printf("%s  (order %d, %s)\n", G.name.c_str(), G.n,
                    G.abelian ? "abelian" : "non-abelian");
        if (what != "D") {
            SearchOutcome r = small_davenport(G, cfg);
            print_row(G, r);
            if (reference) {
                SearchOutcome s = small_davenport_reference(G, cfg);
                print_row(G, s);
                bad += compare(G, r, s);
            }
        }
        if (what != "d") {
            SearchOutcome r = large_davenport(G, cfg);
            print_row(G, r);
            if (reference) {
                SearchOutcome s = large_davenport_reference(G, cfg);
                print_row(G, s);
                bad += compare(G, r, s);
            }
        }
    }
    if (reference) std::printf(bad ? "FAIL: %d disagreement(s)\n" : "all engines agree\n", bad);
    return bad ? 1 : 0;
}
