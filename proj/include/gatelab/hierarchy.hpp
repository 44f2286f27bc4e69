#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gatelab::hierarchy {

// Ordered tie-groups over gate names; earlier groups are simpler / quicker to
// evolve. `unit` is the effort unit of the source statistics; empty for
// unitless orders (behavioural rankings, reference chains).
struct Ranking {
    std::vector<std::vector<std::string>> groups;
    std::string source;
    std::string unit;

    std::vector<std::string> names() const;
    bool contains(const std::string& name) const;
    // Group index per name; throws if absent.
    int group_of(const std::string& name) const;
    // e.g. {OR,NOR} < AND < NOT < NAND < XOR
    std::string chain_string() const;
    friend bool operator==(const Ranking& a, const Ranking& b) {
        return a.groups == b.groups;
    }
};

struct UnitMismatchError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct FixtureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Effort-like ranking key. Censored values are lower bounds (">value"): a
// plain value sorts before a censored one at the same point, and two censored
// values at the same cutoff compare equal.
struct KeyValue {
    double value = 0.0;
    bool censored = false;
};
int compare(const KeyValue& a, const KeyValue& b);  // -1 / 0 / +1

struct StatRowView {
    std::string name;
    KeyValue min, max, avg;
    std::string unit;
    std::string protocol;
};

enum class StatKey : uint8_t { min, max, avg };
std::string_view to_string(StatKey k);
StatKey parse_stat_key(std::string_view name);

// Stable ascending sort by the key column; exact key equality forms a
// tie-group (input order preserved inside groups). Throws UnitMismatchError
// if rows mix units or protocols.
Ranking ranking_from_stats(std::span<const StatRowView> rows, StatKey key,
                           const std::string& source);

// Kendall tau-b with tie correction over the intersection of the gate sets.
// Throws if the intersection has fewer than 2 gates, if both rankings carry
// different nonempty units, or if either ranking restricted to the
// intersection is fully tied (tau-b undefined).
double kendall_tau_b(const Ranking& r1, const Ranking& r2);

// Fraction of unordered gate pairs whose relative order (tie counts as
// agreeing only with tie) matches. Same preconditions as tau-b except
// degenerate tie structures are fine.
double pairwise_agreement(const Ranking& r1, const Ranking& r2);

// ---- Embedded reference tables (transcribed published effort statistics) --

struct Fig1aRow {
    std::string gate;
    int min_evals, max_evals, avg_evals;
    double std_dev;
};

struct Fig1bRow {
    std::string gate;
    std::string controller;  // "Coevolutionary" | "Random"
    int mutation_rate;       // 4000 | 6000
    int successes, runs;
    int min_gens;
    int max_gens;  // cutoff value when censored
    bool max_censored;
    int avg_gens;
    double std_dev;
};

struct PaperFixture {
    std::string id;  // "FIG_1A" | "FIG_1B"
    std::vector<Fig1aRow> rows_1a;
    std::vector<Fig1bRow> rows_1b;
};

const PaperFixture& fig1a();
const PaperFixture& fig1b();

// FNV-1a over the canonical CSV rendering; guards against transcription
// drift. The frozen constants are what the shipped tables hash to.
uint64_t fixture_checksum(const PaperFixture& f);
extern const uint64_t kFig1aChecksum;
extern const uint64_t kFig1bChecksum;
void verify_fixture(const PaperFixture& f);  // throws FixtureError

std::vector<StatRowView> stats_from_fig1a(const PaperFixture& f);
// Filter by controller ("Coevolutionary"/"Random") and mutation rate.
std::vector<StatRowView> stats_from_fig1b(const PaperFixture& f,
                                          const std::string& controller,
                                          int mutation_rate);

// The two candidate reference orders for the behavioural chain: the literal
// published chain and the prose-consistent variant ({AND,OR} at the bottom).
Ranking finding3_literal();
Ranking finding3_prose();

// ---- Findings checks -------------------------------------------------------

struct FindingCheck {
    std::string id;
    std::string description;
    std::string expected;
    std::string actual;
    bool pass = false;
};

struct FindingsReport {
    std::vector<FindingCheck> checks;
    std::vector<std::string> notes;
    // Always true: the behavioural chain's literal order conflicts with the
    // prose order, and the report states both instead of resolving them.
    bool finding3_discrepancy_flagged = false;
    bool all_pass() const;
};

// Pure function of the fixtures; verifies checksums first.
FindingsReport check_findings(const PaperFixture& a, const PaperFixture& b);
FindingsReport check_findings();

std::string render_text(const FindingsReport& report);

}  // namespace gatelab::hierarchy
