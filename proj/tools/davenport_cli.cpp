// Command-line front end for the Davenport-constant library: group info,
// exact d/D searches, product sets, sequence predicates, and verification
// against the bundled expected-values table.
//
// Exit codes: 0 success, 1 verification mismatch, 2 input error, 3 cap
// exceeded.  Every subcommand takes --json; JSON output contains no timing
// fields (unless verify --timings is given), is identical at every
// --parallel width, and re-rendering the parsed JSON reproduces it byte for
// byte.  Witnesses are printed in the sequence grammar, so they can be fed
// back to `check`.

#include <cinttypes>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "davenport/construct.hpp"
#include "davenport/search.hpp"
#include "davenport/verify.hpp"

using namespace dav;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitInput = 2;
constexpr int kExitCap = 3;

Symmetry parse_symmetry(const std::string& s) {
    if (s == "off") return Symmetry::off;
    if (s == "first-step-orbits") return Symmetry::first_step_orbits;
    return Symmetry::canonical;
}

void emit(const ordered_json& j) { std::fputs((j.dump(2) + "\n").c_str(), stdout); }

int run_info(const FiniteGroup& G, bool json) {
    const GroupFingerprint fp = fingerprint(G);
    if (json) {
        ordered_json j;
        j["name"] = G.name;
        j["order"] = G.n;
        j["abelian"] = G.abelian;
        j["exponent"] = fp.exponent;
        j["generators"] = ordered_json::array();
        for (const auto& [nm, g] : G.gens)
            j["generators"].push_back({{"name", nm}, {"element", g}, {"order", G.order_of[g]}});
        j["fingerprint"] = fp.to_string();
        emit(j);
    } else {
        std::printf("name:        %s\n", G.name.c_str());
        std::printf("order:       %d\n", G.n);
        std::printf("abelian:     %s\n", G.abelian ? "yes" : "no");
        std::printf("exponent:    %d\n", fp.exponent);
        std::printf("generators: ");
        for (const auto& [nm, g] : G.gens)
            std::printf(" %s (order %d)", nm.c_str(), G.order_of[g]);
        std::printf("\nfingerprint: %s\n", fp.to_string().c_str());
    }
    return kExitOk;
}

int run_compute(const FiniteGroup& G, const std::string& what, const SearchConfig& cfg,
                bool json) {
    std::vector<SearchOutcome> outs;
    if (what != "D") outs.push_back(small_davenport(G, cfg));
    if (what != "d") outs.push_back(large_davenport(G, cfg));
    if (json) {
        ordered_json j;
        j["group"] = G.name;
        j["order"] = G.n;
        j["results"] = ordered_json::array();
        for (const auto& o : outs) {
            ordered_json jr;
            jr["quantity"] = o.quantity == Quantity::small_davenport ? "d" : "D";
            jr["value"] = o.value;
            jr["exact"] = o.exact;
            jr["engine"] = o.engine;
            jr["nodes"] = o.nodes;
            jr["witness"] = render_sequence(G, o.witness);
            if (!o.ordering.empty()) jr["ordering"] = render_element_list(G, o.ordering);
            j["results"].push_back(std::move(jr));
        }
        emit(j);
    } else {
        for (const auto& o : outs) {
            std::printf("%s: %s = %d (%s, engine %s, %" PRIu64 " nodes, %.2f s)\n", G.name.c_str(),
                        o.quantity == Quantity::small_davenport ? "d" : "D", o.value,
                        o.exact ? "exact" : "verified lower bound", o.engine.c_str(), o.nodes,
                        o.seconds);
            std::printf("  witness:  %s\n", render_sequence(G, o.witness).c_str());
            if (!o.ordering.empty())
                std::printf("  ordering: %s\n", render_element_list(G, o.ordering).c_str());
        }
    }
    return kExitOk;
}

int run_pi(const FiniteGroup& G, const std::string& seq, uint64_t dp_cap, bool json) {
    const Sequence S = parse_sequence(G, seq);
    const ElementSet ps = product_set(G, S, dp_cap);
    if (json) {
        ordered_json j;
        j["group"] = G.name;
        j["sequence"] = render_sequence(G, S);
        j["count"] = ps.count();
        j["elements"] = ordered_json::array();
        ps.for_each([&](int g) {
            j["elements"].push_back({{"index", g}, {"name", G.elem_name(elem(g))}});
        });
        emit(j);
    } else {
        std::printf("pi(%s) over %s: %d element(s)\n", render_sequence(G, S).c_str(),
                    G.name.c_str(), ps.count());
        ps.for_each(
            [&](int g) { std::printf("  %4d  %s\n", g, G.elem_name(elem(g)).c_str()); });
    }
    return kExitOk;
}

int run_check(const FiniteGroup& G, const std::string& seq, const std::string& predicate,
              uint64_t dp_cap, bool json) {
    const Sequence S = parse_sequence(G, seq);
    bool result = false;
    if (predicate == "atom") result = is_atom(G, S, dp_cap);
    if (predicate == "free") result = is_product_one_free(G, S, dp_cap);
    if (predicate == "product-one") result = is_product_one(G, S, dp_cap);
    if (json) {
        ordered_json j;
        j["group"] = G.name;
        j["sequence"] = render_sequence(G, S);
        j["predicate"] = predicate;
        j["result"] = result;
        emit(j);
    } else {
        std::printf("%s over %s: %s = %s\n", render_sequence(G, S).c_str(), G.name.c_str(),
                    predicate.c_str(), result ? "yes" : "no");
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Davenport constants of finite groups: searches, product sets, "
                 "sequence predicates, and verification against bundled expected values"};
    app.require_subcommand(1);

    std::string spec, seq, what = "both", sym = "canonical", expected_path;
    bool json = false, stretch = false, witnesses = false, properties = false, timings = false;
    bool p_atom = false, p_free = false, p_one = false;
    int max_order = 16;
    uint64_t seed = kDefaultPropertySeed;
    SearchConfig cfg;

    auto add_common = [&](CLI::App* c, bool search_knobs) {
        c->add_flag("--json", json, "machine-readable output");
        if (search_knobs) {
            c->add_option("--symmetry", sym, "atom-search pruning: off, first-step-orbits, canonical")
                ->check(CLI::IsMember({"off", "first-step-orbits", "canonical"}));
            c->add_option("--parallel", cfg.parallel_width,
                          "worker threads (0 = all cores; never changes results)");
            c->add_option("--node-budget", cfg.node_budget, "total node budget (0 = policy default)");
            c->add_option("--max-order-exact", cfg.max_order_exact,
                          "orders up to this run unbudgeted");
            c->add_option("--length-cap", cfg.length_cap, "hard length cap (0 = natural)");
        }
        c->add_option("--dp-cap", cfg.dp_cap, "sub-multiset table cap");
    };

    CLI::App* cinfo = app.add_subcommand("info", "order, fingerprint, and generators of a group");
    cinfo->add_option("-g,--group", spec, "group spec")->required();
    cinfo->add_flag("--json", json, "machine-readable output");

    CLI::App* ccompute = app.add_subcommand("compute", "search the Davenport constants d and D");
    ccompute->add_option("-g,--group", spec, "group spec")->required();
    ccompute->add_option("--what", what, "quantity: d, D or both")
        ->check(CLI::IsMember({"d", "D", "both"}));
    add_common(ccompute, true);

    CLI::App* cpi = app.add_subcommand("pi", "product set of a sequence over all orderings");
    cpi->add_option("-g,--group", spec, "group spec")->required();
    cpi->add_option("-s,--seq", seq, "sequence literal")->required();
    add_common(cpi, false);

    CLI::App* ccheck = app.add_subcommand("check", "test a sequence predicate");
    ccheck->add_option("-g,--group", spec, "group spec")->required();
    ccheck->add_option("-s,--seq", seq, "sequence literal")->required();
    auto* fa = ccheck->add_flag("--atom", p_atom, "minimal product-one sequence");
    auto* ff = ccheck->add_flag("--free", p_free, "product-one free sequence");
    auto* fp = ccheck->add_flag("--product-one", p_one, "identity in the product set");
    fa->excludes(ff)->excludes(fp);
    ff->excludes(fp);
    add_common(ccheck, false);

    CLI::App* cverify =
        app.add_subcommand("verify", "recompute expected values / check bundled witness data");
    cverify->add_option("--max-order", max_order, "verify registry entries up to this order");
    auto* fw = cverify->add_flag("--witnesses", witnesses,
                                 "check the bundled witness sequences instead of the tables");
    auto* fprop = cverify->add_flag(
        "--properties", properties,
        "run the seeded randomized property checks instead of the tables");
    fw->excludes(fprop);
    cverify->add_option("--seed", seed, "seed for --properties (default 55902)");
    cverify->add_flag("--stretch", stretch,
                      "attempt entries beyond the exactness cap under the default budget");
    cverify->add_option("--expected", expected_path,
                        "override the bundled expected-values CSV");
    cverify->add_flag("--timings", timings, "include wall-clock millis in the JSON report");
    add_common(cverify, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        cfg.symmetry = parse_symmetry(sym);
        if (*cinfo) return run_info(build_group(spec), json);
        if (*ccompute) return run_compute(build_group(spec), what, cfg, json);
        if (*cpi) return run_pi(build_group(spec), seq, cfg.dp_cap, json);
        if (*ccheck) {
            if (!p_atom && !p_free && !p_one)
                fail(Errc::BadParameter, "check needs one of --atom, --free, --product-one");
            const std::string predicate = p_atom ? "atom" : p_free ? "free" : "product-one";
            return run_check(build_group(spec), seq, predicate, cfg.dp_cap, json);
        }
        // verify
        VerifyReport rep;
        if (witnesses) {
            rep = verify_witnesses();
        } else if (properties) {
            rep = verify_properties(seed);
        } else {
            VerifyConfig vcfg;
            vcfg.search = cfg;
            vcfg.stretch = stretch;
            vcfg.expected_path = expected_path;
            rep = verify_range(max_order, vcfg);
        }
        std::fputs((json ? verify_report_json(rep, timings) : verify_report_text(rep)).c_str(),
                   stdout);
        return rep.ok() ? kExitOk : kExitMismatch;
    } catch (const Error& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return e.code() == Errc::CapExceeded ? kExitCap : kExitInput;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInput;
    }
}
