#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "gatelab/ca.hpp"
#include "gatelab/gates.hpp"
#include "gatelab/hierarchy.hpp"

namespace gatelab {

struct AttractorResult {
    uint64_t transient = 0;  // T
    uint64_t period = 1;     // P >= 1
    bool censored = false;
    uint64_t cap = 0;
    // For censored results (T, P) = (cap, 1): the orbit showed no repeat
    // within cap steps, so only the joint bound T + P > cap is known; the
    // fields are not individually tight.
    uint64_t transient_plus_period() const { return transient + period; }
};

struct FrequencyProfile {
    uint32_t n = 0;
    std::vector<std::array<uint64_t, 8>> per_step;  // index = 4l + 2c + r
};

enum class MorphologyClass : uint8_t {
    FIXED_HOMOGENEOUS,
    FIXED_HETEROGENEOUS,
    PERIODIC_HOMOGENEOUS,
    PERIODIC_WITH_DOMAINS,
    COMPLEX
};

// 0, 0, 1, 2, 3 (the two fixed classes share the bottom rank).
int morphology_rank(MorphologyClass c);
std::string_view to_string(MorphologyClass c);

struct SeedBehaviour {
    uint64_t seed = 0;
    AttractorResult attractor;
    MorphologyClass morphology = MorphologyClass::FIXED_HOMOGENEOUS;
    double attractor_entropy = 0.0;  // mean over attractor rows, bits
};

struct BehaviourProfile {
    Gate gate = Gate::AND;
    AttractorResult attractor;  // ensemble representative (median T+P seed)
    MorphologyClass morphology = MorphologyClass::FIXED_HOMOGENEOUS;
    double mean_attractor_entropy = 0.0;
    double mean_transient_plus_period = 0.0;
    uint32_t ensemble_size = 0;
    uint32_t censored_seeds = 0;
    std::vector<SeedBehaviour> per_seed;
    // echoed parameters
    uint32_t n = 0;
    uint64_t cap = 0;
    double theta = 0.0;
    uint32_t p_small = 0;
    double density = 0.5;
};

struct ClassifyParams {
    uint32_t n = 200;
    uint64_t cap = 1ull << 20;
    double theta = 0.0;  // <= 0 means the default 10 * n
    uint32_t p_small = 8;
    double density = 0.5;

    double effective_theta() const { return theta > 0 ? theta : 10.0 * n; }
};

// Exact minimal (T, P) of the deterministic orbit by storing and hashing
// every visited configuration, or a censored result after cap steps.
AttractorResult detect_attractor(const Configuration& initial, Gate gate,
                                 uint64_t cap);

// The P rows of the attractor cycle (configurations at times T .. T+P-1).
std::vector<BitRow> attractor_rows(const Configuration& initial, Gate gate,
                                   const AttractorResult& result);

// Per-step counts of the 8 (left, centre, right) neighbourhood states.
// PERIODIC diagrams only; each vector sums to N.
FrequencyProfile neighbourhood_frequencies(const SpaceTimeDiagram& diagram);
std::array<uint64_t, 8> row_triple_counts(const BitRow& row);

// Shannon entropy in bits of the normalized 8-vector; in [0, 3].
double block_entropy(std::span<const uint64_t, 8> counts);

// CSV with header t,f000,...,f111 and one row per step.
std::string frequency_csv(const FrequencyProfile& profile);

// Ensemble classification over random density-`density` initial conditions,
// one per seed. Deterministic given (gate, params, seeds).
BehaviourProfile classify_behaviour(Gate gate, std::span<const uint64_t> seeds,
                                    const ClassifyParams& params);

// Ascending by (morphology rank, mean T+P, mean attractor entropy); ties
// require equal rank, equal mean T+P, and entropies within 1e-9.
hierarchy::Ranking behavioural_ranking(
    std::span<const BehaviourProfile> profiles);

}  // namespace gatelab
