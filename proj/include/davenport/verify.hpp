#pragma once

#include <optional>
#include <string>
#include <vector>

#include "davenport/construct.hpp"
#include "davenport/search.hpp"

namespace dav {

// ---- expected values ---------------------------------------------------
//
// The repository bundles a CSV of expected Davenport constants (also shipped
// as data/expected_davenport.csv) with one row per (source, gap id):
//
//   gap_m, gap_k, name, order, d, D, source
//
// '#' starts a comment, the header row is optional, d may be empty.  Sources:
//   Table1  - classification list of the groups with D <= 7
//   Table2  - classification list of the groups with 8 <= D <= 9
//   LemmaDD - reference values for non-abelian groups of order <= 42
// Table rows list only D; the loader derives d for them (abelian groups:
// d = D - 1; non-abelian groups: copied from the LemmaDD row with the same
// id).  Errc::DataCorrupt on malformed rows, violated invariants
// (0 <= d < D <= order = gap_m, LemmaDD rows must carry d), or entries that
// disagree across sources about name, order, d, or D.

enum class ExpectedSource { Table1, Table2, LemmaDD };
const char* source_name(ExpectedSource s);

struct ExpectedEntry {
    GapId id;
    std::string name;      // structure description, display only
    int order = 0;
    std::optional<int> d;  // always present after loading (see above)
    int D = 0;
    ExpectedSource source = ExpectedSource::Table1;
};

std::vector<ExpectedEntry> load_expected();                           // bundled table
std::vector<ExpectedEntry> load_expected_file(const std::string& path);  // same format
std::vector<ExpectedEntry> parse_expected(const std::string& text);

// ---- verification reports ----------------------------------------------

enum class VerifyStatus {
    match,     // exact search result equal to the expected pair
    mismatch,  // exact search result different from the expected pair, or a
               // failed witness/classification check
    skipped,   // not attempted (reason in detail)
    inexact,   // search hit a budget or cap; values are verified lower
               // bounds and are never reported as mismatches
};
const char* status_name(VerifyStatus s);

struct VerifyEntry {
    GapId id;           // {0,0} on witness-check entries
    std::string name;   // group name, or what a witness check verified
    std::optional<int> expected_d, expected_D;
    std::optional<int> found_d, found_D;
    bool exact = false;          // found values are exact (not lower bounds)
    VerifyStatus status = VerifyStatus::skipped;
    std::string detail;          // skip reason / mismatch description / notes
    double seconds = 0.0;
};

struct VerifyTotals {
    int match = 0, mismatch = 0, skipped = 0, inexact = 0;
    int attempted() const { return match + mismatch + skipped + inexact; }
};

enum class VerifyKind { range, witnesses, properties };

struct VerifyReport {
    VerifyKind kind = VerifyKind::range;
    int max_order = 0;      // range reports
    bool stretch = false;   // range reports
    SearchConfig config;    // range reports: the search configuration used
    uint64_t seed = 0;      // properties reports
    std::vector<VerifyEntry> entries;  // ordered by gap id / check order
    VerifyTotals totals;               // partition of entries by status
    double seconds = 0.0;
    bool ok() const { return totals.mismatch == 0; }
};

struct VerifyConfig {
    SearchConfig search;
    // Entries whose order exceeds search.max_order_exact are skipped
    // ("order beyond exactness cap") unless stretch is set, in which case
    // they run under the default node budget and may come back inexact.
    bool stretch = false;
    // Path to an expected-values CSV; empty = the bundled table.
    std::string expected_path;
};

// Verify one registry entry: build the fixture, search d and D, compare with
// the expected pair.  Errc::UnknownRegistryId when no fixture exists.
VerifyEntry verify_group(GapId id, const VerifyConfig& cfg = {});

// Verify every registry entry with order <= max_order (entries run
// independently, in parallel, merged in id order).  Each match additionally
// cross-checks the classification direction: D <= 7 requires a Table1
// listing and 8 <= D <= 9 a Table2 listing or a proper subgroup of order 32
// (decided via all_subgroups when the order is within the enumeration cap,
// otherwise reported as undecided in the entry detail, not failed).
VerifyReport verify_range(int max_order, const VerifyConfig& cfg = {});

// Check the explicit witness data bundled for the order-48, order-80, and
// order-81 fixtures, independent of any search configuration:
//   (i)   the three stated length-10 sequences are atoms (so D >= 10);
//   (ii)  the three stated orderings are orderings of those sequences and
//         multiply to the identity;
//   (iii) the product sets of b[2]c[3] (order 48) and c e[5] (order 80)
//         equal the stated 6- and 5-element sets;
//   (iv)  c[3]d[3]x[2] over the Heisenberg group of order 27 is an atom of
//         length 8, the large Davenport constant of that group;
//   (v)   the subgroup-extension construction (free sequence over a proper
//         subgroup, closed by h^-1 and h*product^-1) yields verified atoms
//         on fixed sample triples.
VerifyReport verify_witnesses();

// Seeded randomized property checks, reproducible for a fixed seed:
//   - `sequences` random sequences of length <= 7 over 10 groups drawn from
//     the order <= 12 registry entries: the table-based product set must
//     equal brute force over all permutations;
//   - `triples` random (G, H, h) samples with |G| <= 16, H a proper
//     subgroup, h outside H: the subgroup-extension construction must yield
//     a sequence that is_atom verifies.
// Independent of the search configuration.
constexpr uint64_t kDefaultPropertySeed = 0xDA5E;  // 55902
VerifyReport verify_properties(uint64_t seed = kDefaultPropertySeed, int sequences = 200,
                               int triples = 50);

// Report renderings: an aligned text table, and JSON with deterministic key
// order and no timing fields unless requested (timings are the only
// non-reproducible part of a report).
std::string verify_report_text(const VerifyReport& r);
std::string verify_report_json(const VerifyReport& r, bool timings = false);

}  // namespace dav
