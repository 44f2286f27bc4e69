#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gatelab/gates.hpp"
#include "gatelab/substrates.hpp"

namespace gatelab {

enum class Protocol : uint8_t { lc_style, bz_coevolutionary, bz_random };
enum class EffortUnit : uint8_t { evaluations, generations };

std::string_view to_string(Protocol p);
Protocol parse_protocol(std::string_view name);
std::string_view to_string(EffortUnit u);

// Possibly-censored run effort. A censored value means "> value" (the run hit
// the cutoff without success); two values censored at the same point compare
// equal.
struct Effort {
    uint64_t value = 0;
    EffortUnit unit = EffortUnit::evaluations;
    bool censored = false;
};

struct ExperimentConfig {
    Protocol protocol = Protocol::lc_style;
    std::vector<Gate> targets;
    uint32_t runs = 10;
    uint64_t master_seed = 0;

    uint32_t population = 40;
    uint32_t elite = 5;
    uint32_t mutations_per_individual = 5;  // LC clone mutation count
    uint32_t generation_cutoff = 200;       // 200 LC, 2000 BZ
    uint32_t mutation_rate = 4000;          // BZ bit flips per generation
    uint32_t fitness_iterations = 25;       // BZ medium iterations per row

    uint64_t material_seed = 1;
    bool material_planted = false;
    uint32_t settle_steps = 8;
    MediumParams medium;

    bool is_bz() const { return protocol != Protocol::lc_style; }
    EffortUnit effort_unit() const {
        return is_bz() ? EffortUnit::generations : EffortUnit::evaluations;
    }
    // Empty when valid; otherwise one message per bad field.
    std::vector<std::string> validate() const;
};

// Flat key = value sections: [experiment], [material], [medium]. Unknown keys
// and malformed values are all reported together.
ExperimentConfig parse_config(std::istream& in,
                              std::vector<std::string>& errors);
ExperimentConfig parse_config_file(const std::string& path,
                                   std::vector<std::string>& errors);
std::string config_to_ini(const ExperimentConfig& config);

struct RunRecord {
    uint32_t run_index = 0;
    uint64_t run_seed = 0;
    Gate target = Gate::OR;
    std::vector<double> best_fitness_trace;  // per generation
    Effort effort;
    bool success = false;
    std::string winner_hex;  // empty when censored
    uint64_t evaluations = 0;
    uint32_t generations = 0;
};

struct GateStats {
    std::string gate;
    std::string protocol;
    uint32_t mutation_rate = 0;  // 0 for the LC protocol
    uint32_t successes = 0;
    uint32_t runs = 0;
    Effort min_effort, max_effort;
    double avg = 0.0;     // censored runs enter at their cutoff value
    double stddev = 0.0;  // population standard deviation
    uint32_t censored_runs = 0;
    EffortUnit unit = EffortUnit::evaluations;
};

// Fraction of truth-table rows the substrate reproduces; each row costs one
// substrate evaluation. 4 rows for binary targets, 2 for NOT (input B is
// driven FALSE).
double fitness(const VirtualMaterial& material, const MaterialGenotype& genotype,
               Gate target, uint64_t& eval_counter);
double fitness(const ControllerGenotype& controller, Gate target,
               const MediumParams& params, uint64_t& eval_counter);

// One deterministic run of the configured protocol for one target gate.
RunRecord run_evolution(const ExperimentConfig& config, Gate target,
                        uint32_t run_index, uint64_t run_seed);

struct ExperimentResult {
    std::vector<GateStats> stats;        // one row per target gate
    std::vector<RunRecord> records;      // grouped by gate, run order
};

// All targets x runs. Per-run seeds derive from master_seed by index, so the
// result is identical for any worker count.
ExperimentResult run_experiment(const ExperimentConfig& config, int workers = 1);

// Recompute a GateStats row from its run records (the persisted form).
GateStats aggregate_stats(const ExperimentConfig& config, Gate target,
                          const std::vector<RunRecord>& records);

std::string effort_cell(const Effort& e);  // "144" or ">2000"
std::string stats_csv(const std::vector<GateStats>& stats);
std::string records_jsonl(const std::vector<RunRecord>& records);

}  // namespace gatelab
