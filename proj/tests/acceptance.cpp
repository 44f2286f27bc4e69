// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion. Exit code 0 only if all pass.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "gatelab/ca.hpp"
#include "gatelab/evolution.hpp"
#include "gatelab/gates.hpp"
#include "gatelab/hierarchy.hpp"
#include "gatelab/kernels.hpp"
#include "gatelab/measures.hpp"
#include "gatelab/rng.hpp"
#include "naive_ref.hpp"
#include "rank_oracle.hpp"

using namespace gatelab;
namespace hy = gatelab::hierarchy;

namespace {

int g_failed_criteria = 0;

void detail(const std::string& line) { std::printf("    %s\n", line.c_str()); }

void verdict(int id, const std::string& name, bool pass) {
    std::printf("criterion %d: %s - %s\n", id, pass ? "PASS" : "FAIL",
                name.c_str());
    if (!pass) ++g_failed_criteria;
}

std::string groups_string(const std::vector<std::vector<std::string>>& groups) {
    return hy::Ranking{groups, "", ""}.chain_string();
}

// ---- criterion 1: Fig 1a chains ------------------------------------------------

void criterion_1() {
    const auto rows = hy::stats_from_fig1a(hy::fig1a());
    const auto min_rank = hy::ranking_from_stats(rows, hy::StatKey::min, "fig1a");
    const auto avg_rank = hy::ranking_from_stats(rows, hy::StatKey::avg, "fig1a");
    const std::vector<std::vector<std::string>> want_min{
        {"OR", "NOR"}, {"AND"}, {"NOT"}, {"NAND"}, {"XOR"}};
    const std::vector<std::vector<std::string>> want_avg{
        {"NOT"}, {"XOR"}, {"OR"}, {"NAND"}, {"NOR"}, {"AND"}};
    const bool min_ok = min_rank.groups == want_min &&
                        min_rank.chain_string() == groups_string(want_min);
    const bool avg_ok = avg_rank.groups == want_avg &&
                        avg_rank.chain_string() == groups_string(want_avg);
    detail("min: " + min_rank.chain_string() + (min_ok ? "  [ok]" : "  [MISMATCH]"));
    detail("avg: " + avg_rank.chain_string() + (avg_ok ? "  [ok]" : "  [MISMATCH]"));
    verdict(1, "fixture hierarchy reproduction (Fig 1a, min & avg)", min_ok && avg_ok);
}

// ---- criterion 2: Fig 1b chains ------------------------------------------------

void criterion_2() {
    const auto coev6000 = hy::stats_from_fig1b(hy::fig1b(), "Coevolutionary", 6000);
    const auto coev4000 = hy::stats_from_fig1b(hy::fig1b(), "Coevolutionary", 4000);
    const auto min6 = hy::ranking_from_stats(coev6000, hy::StatKey::min, "f");
    const auto avg6 = hy::ranking_from_stats(coev6000, hy::StatKey::avg, "f");
    const auto max6 = hy::ranking_from_stats(coev6000, hy::StatKey::max, "f");
    const auto avg4 = hy::ranking_from_stats(coev4000, hy::StatKey::avg, "f");
    const std::vector<std::vector<std::string>> chain{{"AND"}, {"NAND"}, {"XOR"}};
    const std::vector<std::vector<std::string>> censored_tie{{"AND"},
                                                             {"NAND", "XOR"}};
    const std::vector<std::vector<std::string>> reversal{{"AND"}, {"XOR"}, {"NAND"}};
    const bool ok = min6.groups == chain && avg6.groups == chain &&
                    max6.groups == censored_tie && avg4.groups == reversal;
    detail("coev/6000 min: " + min6.chain_string());
    detail("coev/6000 avg: " + avg6.chain_string());
    detail("coev/6000 max: " + max6.chain_string() + "  (censored tie)");
    detail("coev/4000 avg: " + avg4.chain_string() + "  (reversal)");
    verdict(2, "Finding 2 reproduction (Fig 1b coevolutionary)", ok);
}

// ---- criterion 3: rule numbers -------------------------------------------------

void criterion_3() {
    const std::vector<std::pair<Gate, int>> expected{{Gate::AND, 160},
                                                     {Gate::OR, 250},
                                                     {Gate::XOR, 90},
                                                     {Gate::NAND, 95},
                                                     {Gate::NOR, 5}};
    bool ok = true;
    for (const auto& [gate, rule] : expected) {
        // independent eight-triple enumeration oracle
        int oracle = 0;
        for (int l = 0; l <= 1; ++l)
            for (int c = 0; c <= 1; ++c)
                for (int r = 0; r <= 1; ++r)
                    if (apply2(gate, l != 0, r != 0))
                        oracle |= 1 << (4 * l + 2 * c + r);
        const int got = eca_rule_number(gate);
        if (got != rule || got != oracle) ok = false;
        detail(std::string(to_string(gate)) + " -> " + std::to_string(got) +
               " (oracle " + std::to_string(oracle) + ", expected " +
               std::to_string(rule) + ")");
    }
    verdict(3, "gate/rule equivalence with enumeration oracle", ok);
}

// ---- criteria 4 & 7: CA behaviour at N=200 ------------------------------------

struct SeedOutcome {
    AttractorResult det;
    bool all_homogeneous = true;
    bool attractor_all_false = false;
    bool attractor_all_true = false;
};

SeedOutcome outcome_for(Gate gate, uint64_t seed, uint32_t n, uint64_t cap) {
    SeedOutcome o;
    const auto initial = random_configuration(n, 0.5, seed);
    o.det = detect_attractor(initial, gate, cap);
    if (!o.det.censored) {
        const auto rows = attractor_rows(initial, gate, o.det);
        for (const auto& row : rows)
            if (!row.homogeneous()) o.all_homogeneous = false;
        o.attractor_all_false = o.det.period == 1 && rows.front().all_zero();
        o.attractor_all_true = o.det.period == 1 && rows.front().all_one();
    } else {
        o.all_homogeneous = false;
    }
    return o;
}

void criterion_4(const std::vector<uint64_t>& seeds) {
    constexpr uint32_t kN = 200;
    constexpr uint64_t kCap = 1ull << 20;

    // Pin expectations with the stored-orbit oracle at N=16 before trusting
    // the packed detector at N=200.
    bool oracle_pin_ok = true;
    for (Gate g : kBinaryGates) {
        for (int i = 0; i < 20; ++i) {
            const auto initial = random_configuration(16, 0.5, 7000 + i);
            naive::Cells cells(16);
            for (uint32_t c = 0; c < 16; ++c)
                cells[c] = initial.cells.get(c) ? 1 : 0;
            const auto got = detect_attractor(initial, g, 1 << 16);
            const auto want = naive::orbit(cells, g, 1 << 16);
            if (got.censored || got.transient != want.transient ||
                got.period != want.period)
                oracle_pin_ok = false;
        }
    }
    detail(std::string("N=16 oracle pin: ") + (oracle_pin_ok ? "ok" : "MISMATCH"));

    int and_ok = 0, or_ok = 0, nor_ok = 0, nand_ok = 0, xor_ok = 0;
    for (uint64_t seed : seeds) {
        const auto a = outcome_for(Gate::AND, seed, kN, kCap);
        if (a.attractor_all_false && a.det.transient <= 32) ++and_ok;
        const auto o = outcome_for(Gate::OR, seed, kN, kCap);
        if (o.attractor_all_true && o.det.transient <= 32) ++or_ok;
        const auto nr = outcome_for(Gate::NOR, seed, kN, kCap);
        if (!nr.det.censored && nr.det.period == 2 && nr.all_homogeneous) ++nor_ok;
        const auto nd = outcome_for(Gate::NAND, seed, kN, kCap);
        if (!nd.det.censored && nd.det.period == 2 && !nd.all_homogeneous)
            ++nand_ok;
        const auto x = outcome_for(Gate::XOR, seed, kN, kCap);
        if (x.det.transient_plus_period() > 2000) ++xor_ok;
    }
    const int n = static_cast<int>(seeds.size());
    const bool and_pass = and_ok == n;
    const bool or_pass = or_ok == n;
    const bool nor_pass = nor_ok == n;
    const bool nand_pass = nand_ok >= 15;
    const bool xor_pass = xor_ok == n;
    detail("AND  all-FALSE fixed point, T<=32: " + std::to_string(and_ok) + "/" +
           std::to_string(n) + (and_pass ? "  [ok]" : "  [FAIL]"));
    detail("OR   all-TRUE fixed point, T<=32:  " + std::to_string(or_ok) + "/" +
           std::to_string(n) + (or_pass ? "  [ok]" : "  [FAIL]"));
    detail("NOR  homogeneous period-2:         " + std::to_string(nor_ok) + "/" +
           std::to_string(n) + (nor_pass ? "  [ok]" : "  [FAIL]") +
           "  (observed: period-2 attractors keep isolated TRUE still-lifes)");
    detail("NAND period-2, heterogeneous row:  " + std::to_string(nand_ok) + "/" +
           std::to_string(n) + " (need >= 15)" + (nand_pass ? "  [ok]" : "  [FAIL]"));
    detail("XOR  T+P > 2000:                   " + std::to_string(xor_ok) + "/" +
           std::to_string(n) + (xor_pass ? "  [ok]" : "  [FAIL]"));
    verdict(4, "CA behaviour at N=200 over 20 random seeds",
            oracle_pin_ok && and_pass && or_pass && nor_pass && nand_pass &&
                xor_pass);
}

void criterion_7(const std::vector<uint64_t>& seeds) {
    ClassifyParams params;  // N=200, cap 2^20, theta 10*N, p_small 8
    std::vector<BehaviourProfile> profiles;
    for (Gate g : kBinaryGates)
        profiles.push_back(classify_behaviour(g, seeds, params));
    const auto ranking = behavioural_ranking(profiles);
    for (const auto& p : profiles) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%-4s %-22s mean_T+P=%-8.2f entropy=%.4f",
                      std::string(to_string(p.gate)).c_str(),
                      std::string(to_string(p.morphology)).c_str(),
                      p.mean_transient_plus_period, p.mean_attractor_entropy);
        detail(buf);
    }
    const std::vector<std::vector<std::string>> expected{
        {"AND", "OR"}, {"NOR"}, {"NAND"}, {"XOR"}};
    const bool exact = ranking.groups == expected;
    detail("measured: " + ranking.chain_string());
    detail("expected: " + groups_string(expected) + " (exact tie-group match)");

    // The coarser reading used by the measurement command's contract: every
    // strict order of the expected chain holds in the measured ranking.
    const hy::Ranking reference{expected, "reference", ""};
    bool consistent = true;
    const auto names = reference.names();
    for (size_t i = 0; i < names.size(); ++i) {
        for (size_t j = i + 1; j < names.size(); ++j) {
            const int want =
                reference.group_of(names[i]) - reference.group_of(names[j]);
            if (want == 0) continue;
            const int got =
                ranking.group_of(names[i]) - ranking.group_of(names[j]);
            if ((want < 0) != (got < 0) || got == 0) consistent = false;
        }
    }
    detail(std::string("order-consistency reading: ") +
           (consistent ? "holds" : "violated") +
           " (NOR and NAND are complement-conjugate rules; their measures are "
           "identically distributed)");

    const bool flag = hy::check_findings().finding3_discrepancy_flagged;
    detail(std::string("findings report flags the literal-vs-prose "
                       "discrepancy: ") +
           (flag ? "yes" : "NO"));
    verdict(7, "behavioural ranking of the five gates", exact && flag);
}

// ---- criterion 5: oracle equivalence -------------------------------------------

void criterion_5() {
    bool ok = true;
    int checked = 0;
    for (uint32_t n : {8u, 12u, 16u}) {
        for (Gate g : kBinaryGates) {
            for (int i = 0; i < 100; ++i) {
                const uint64_t seed = rng::derive(1000 + n, i);
                const auto initial = random_configuration(n, 0.5, seed);
                naive::Cells cells(n);
                for (uint32_t c = 0; c < n; ++c)
                    cells[c] = initial.cells.get(c) ? 1 : 0;
                const auto got = detect_attractor(initial, g, 1 << 16);
                const auto want = naive::orbit(cells, g, 1 << 16);
                ++checked;
                if (want.period == 0 || got.censored ||
                    got.transient != want.transient || got.period != want.period) {
                    ok = false;
                    detail("mismatch at n=" + std::to_string(n) + " gate=" +
                           std::string(to_string(g)) + " seed=" +
                           std::to_string(seed));
                }
            }
        }
    }
    detail(std::to_string(checked) + " orbits compared against the stored-orbit oracle");
    verdict(5, "attractor detection matches the brute-force oracle", ok);
}

// ---- criterion 6: rule-90 analytic check ---------------------------------------

void criterion_6() {
    const auto initial = single_seed_configuration(64);
    const auto diagram = run(initial, Gate::XOR, 16);
    bool ok = true;
    for (uint32_t t = 0; t <= 16; ++t) {
        const uint32_t want = 1u << __builtin_popcount(t);
        if (diagram.rows[t].popcount() != want) {
            ok = false;
            detail("row " + std::to_string(t) + ": " +
                   std::to_string(diagram.rows[t].popcount()) + " != " +
                   std::to_string(want));
        }
    }
    detail("rows 0..16 on N=64 all have 2^popcount(t) TRUE cells");
    verdict(6, "rule-90 single-seed row counts", ok);
}

// ---- criterion 8: evolution harness --------------------------------------------

ExperimentConfig small_lc() {
    ExperimentConfig c;
    c.protocol = Protocol::lc_style;
    c.targets = {Gate::OR};
    c.runs = 6;
    c.master_seed = 7;
    c.generation_cutoff = 50;
    c.material_seed = 1;
    c.material_planted = true;
    return c;
}

ExperimentConfig small_bz() {
    ExperimentConfig c;
    c.protocol = Protocol::bz_coevolutionary;
    c.targets = {Gate::AND};
    c.runs = 2;
    c.master_seed = 9;
    c.population = 4;
    c.elite = 1;
    c.generation_cutoff = 3;
    c.mutation_rate = 500;
    c.fitness_iterations = 10;
    return c;
}

void criterion_8() {
    // (a) worker-count invariance, byte-for-byte
    const auto lc = small_lc();
    const auto lc1 = run_experiment(lc, 1);
    const auto lc8 = run_experiment(lc, 8);
    const bool lc_invariant = stats_csv(lc1.stats) == stats_csv(lc8.stats) &&
                              records_jsonl(lc1.records) ==
                                  records_jsonl(lc8.records);
    const auto bz = small_bz();
    const auto bz1 = run_experiment(bz, 1);
    const auto bz8 = run_experiment(bz, 8);
    const bool bz_invariant = stats_csv(bz1.stats) == stats_csv(bz8.stats) &&
                              records_jsonl(bz1.records) ==
                                  records_jsonl(bz8.records);
    detail(std::string("worker invariance: LC ") +
           (lc_invariant ? "ok" : "FAIL") + ", BZ " +
           (bz_invariant ? "ok" : "FAIL"));

    // (b) elitist traces are monotone in every run
    bool monotone = true;
    for (const auto& records : {lc1.records, bz1.records})
        for (const auto& rec : records)
            for (size_t i = 1; i < rec.best_fitness_trace.size(); ++i)
                if (rec.best_fitness_trace[i] < rec.best_fitness_trace[i - 1])
                    monotone = false;
    detail(std::string("elitist fitness traces monotone: ") +
           (monotone ? "ok" : "FAIL"));

    // (c) planted material, target OR, the published protocol constants
    ExperimentConfig full = small_lc();
    full.runs = 10;
    full.master_seed = 2025;
    full.generation_cutoff = 200;
    const auto result = run_experiment(full, 8);
    const auto& stats = result.stats.front();
    bool accounting_ok = true;
    for (const auto& rec : result.records) {
        if (rec.evaluations % 4 != 0) accounting_ok = false;
        if (rec.success && rec.effort.value != rec.evaluations)
            accounting_ok = false;
    }
    detail("planted-OR success rate: " + std::to_string(stats.successes) + "/" +
           std::to_string(stats.runs) + ", min effort " +
           effort_cell(stats.min_effort) + " " +
           std::string(to_string(stats.unit)));
    detail(std::string("evaluation accounting (4 rows per fitness call): ") +
           (accounting_ok ? "ok" : "FAIL"));
    verdict(8, "evolution harness determinism, monotonicity, evolvability",
            lc_invariant && bz_invariant && monotone &&
                stats.successes == stats.runs && accounting_ok);
}

// ---- criterion 9: rank-correlation property ------------------------------------

void criterion_9() {
    bool ok = true;
    int64_t compared = 0;
    for (int k = 2; k <= 5; ++k) {
        const auto rankings = rank_oracle::all_rankings(k);
        for (const auto& r1 : rankings) {
            for (const auto& r2 : rankings) {
                ++compared;
                const double agree_got = hy::pairwise_agreement(r1, r2);
                const double agree_want = rank_oracle::agreement(r1, r2);
                if (std::abs(agree_got - agree_want) > 1e-12) ok = false;
                if (rank_oracle::fully_tied(r1) || rank_oracle::fully_tied(r2)) {
                    try {
                        (void)hy::kendall_tau_b(r1, r2);
                        ok = false;  // degenerate tau-b must be refused
                    } catch (const std::invalid_argument&) {
                    }
                } else {
                    const double tau_got = hy::kendall_tau_b(r1, r2);
                    const double tau_want = rank_oracle::tau_b(r1, r2);
                    if (std::abs(tau_got - tau_want) > 1e-12) ok = false;
                }
            }
        }
    }
    detail(std::to_string(compared) +
           " ranking pairs (all tie structures over 2..5 gates) checked "
           "against the contingency-table oracle");
    verdict(9, "tau-b and pairwise agreement match exhaustive enumeration", ok);
}

}  // namespace

int main() {
    std::printf("gatelab acceptance suite (kernel: %s)\n",
                std::string(kernels::active_name()).c_str());

    std::vector<uint64_t> seeds(20);
    for (uint32_t i = 0; i < seeds.size(); ++i) seeds[i] = rng::derive(1, i);

    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4(seeds);
    criterion_5();
    criterion_6();
    criterion_7(seeds);
    criterion_8();
    criterion_9();

    std::printf("ACCEPTANCE: %d/9 criteria passed\n", 9 - g_failed_criteria);
    return g_failed_criteria == 0 ? 0 : 1;
}
