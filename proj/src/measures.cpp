#include "gatelab/measures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

#include "gatelab/kernels.hpp"

namespace gatelab {

int morphology_rank(MorphologyClass c) {
    switch (c) {
        case MorphologyClass::FIXED_HOMOGENEOUS:
        case MorphologyClass::FIXED_HETEROGENEOUS: return 0;
        case MorphologyClass::PERIODIC_HOMOGENEOUS: return 1;
        case MorphologyClass::PERIODIC_WITH_DOMAINS: return 2;
        case MorphologyClass::COMPLEX: return 3;
    }
    return 3;
}

std::string_view to_string(MorphologyClass c) {
    switch (c) {
        case MorphologyClass::FIXED_HOMOGENEOUS: return "FIXED_HOMOGENEOUS";
        case MorphologyClass::FIXED_HETEROGENEOUS: return "FIXED_HETEROGENEOUS";
        case MorphologyClass::PERIODIC_HOMOGENEOUS: return "PERIODIC_HOMOGENEOUS";
        case MorphologyClass::PERIODIC_WITH_DOMAINS: return "PERIODIC_WITH_DOMAINS";
        case MorphologyClass::COMPLEX: return "COMPLEX";
    }
    return "?";
}

namespace {

// Open-addressed index over rows stored in a flat arena; exact equality on
// probe, so hash collisions cannot produce a false cycle.
class OrbitIndex {
  public:
    OrbitIndex(size_t words_per_row, uint64_t expected)
        : wpr_(words_per_row) {
        size_t cap = 64;
        while (cap < 2 * (expected + 1) && cap < (1ull << 28)) cap <<= 1;
        slots_.assign(cap, kEmpty);
        arena_.reserve(std::min<uint64_t>(expected + 1, 1ull << 22) * wpr_);
    }

    // Returns the time of the identical earlier row, or kEmpty if new (and
    // inserts the row as time `t`).
    uint32_t find_or_insert(const uint64_t* row, uint32_t t) {
        if ((count_ + 1) * 10 > slots_.size() * 7) grow();
        const uint64_t h = hash(row);
        size_t i = h & (slots_.size() - 1);
        while (slots_[i] != kEmpty) {
            if (equals(slots_[i], row)) return slots_[i];
            i = (i + 1) & (slots_.size() - 1);
        }
        slots_[i] = t;
        arena_.insert(arena_.end(), row, row + wpr_);
        ++count_;
        return kEmpty;
    }

    static constexpr uint32_t kEmpty = 0xFFFFFFFFu;

  private:
    uint64_t hash(const uint64_t* row) const {
        uint64_t h = 0x9E3779B97F4A7C15ull;
        for (size_t w = 0; w < wpr_; ++w) {
            h ^= row[w];
            h *= 0xFF51AFD7ED558CCDull;
            h ^= h >> 33;
        }
        return h;
    }
    bool equals(uint32_t idx, const uint64_t* row) const {
        const uint64_t* stored = arena_.data() + static_cast<size_t>(idx) * wpr_;
        for (size_t w = 0; w < wpr_; ++w)
            if (stored[w] != row[w]) return false;
        return true;
    }
    void grow() {
        std::vector<uint32_t> old = std::move(slots_);
        slots_.assign(old.size() * 2, kEmpty);
        for (uint32_t idx : old) {
            if (idx == kEmpty) continue;
            const uint64_t* row = arena_.data() + static_cast<size_t>(idx) * wpr_;
            size_t i = hash(row) & (slots_.size() - 1);
            while (slots_[i] != kEmpty) i = (i + 1) & (slots_.size() - 1);
            slots_[i] = idx;
        }
    }

    size_t wpr_;
    std::vector<uint32_t> slots_;
    std::vector<uint64_t> arena_;
    size_t count_ = 0;
};

}  // namespace

AttractorResult detect_attractor(const Configuration& initial, Gate gate,
                                 uint64_t cap) {
    if (cap < 1) throw std::invalid_argument("attractor cap must be >= 1");
    const uint32_t n = initial.size();
    OrbitIndex index(initial.cells.word_count(), std::min<uint64_t>(cap, 1u << 20));
    index.find_or_insert(initial.cells.words(), 0);
    Configuration cur = initial;
    BitRow next(n), l(n), r(n);
    for (uint64_t t = 1; t <= cap; ++t) {
        step_into(cur, gate, next, l, r);
        cur.cells = next;
        const uint32_t prior =
            index.find_or_insert(cur.cells.words(), static_cast<uint32_t>(t));
        if (prior != OrbitIndex::kEmpty)
            return {prior, t - prior, false, cap};
    }
    return {cap, 1, true, cap};
}

std::vector<BitRow> attractor_rows(const Configuration& initial, Gate gate,
                                   const AttractorResult& result) {
    if (result.censored)
        throw std::invalid_argument("censored result has no known attractor");
    std::vector<BitRow> rows;
    rows.reserve(result.period);
    Configuration cur = initial;
    BitRow next(initial.size()), l(initial.size()), r(initial.size());
    for (uint64_t t = 0; t < result.transient; ++t) {
        step_into(cur, gate, next, l, r);
        cur.cells = next;
    }
    for (uint64_t p = 0; p < result.period; ++p) {
        rows.push_back(cur.cells);
        step_into(cur, gate, next, l, r);
        cur.cells = next;
    }
    return rows;
}

std::array<uint64_t, 8> row_triple_counts(const BitRow& row) {
    const uint32_t n = row.size();
    BitRow l(n), r(n);
    shift_up_1(l.words(), row.words(), n, true);
    shift_down_1(r.words(), row.words(), n, true);
    std::array<uint64_t, 8> counts{};
    kernels::active().triple_counts(l.words(), row.words(), r.words(),
                                    row.word_count(), counts.data());
    counts[0] -= row.word_count() * 64 - n;  // padding reads (0,0,0)
    return counts;
}

FrequencyProfile neighbourhood_frequencies(const SpaceTimeDiagram& diagram) {
    if (diagram.rows.empty())
        throw std::invalid_argument("empty diagram has no frequencies");
    if (diagram.boundary != Boundary::periodic)
        throw std::invalid_argument(
            "neighbourhood frequencies need a PERIODIC diagram; counts would "
            "not sum to N otherwise");
    FrequencyProfile profile;
    profile.n = diagram.width();
    profile.per_step.reserve(diagram.rows.size());
    for (const BitRow& row : diagram.rows)
        profile.per_step.push_back(row_triple_counts(row));
    return profile;
}

double block_entropy(std::span<const uint64_t, 8> counts) {
    uint64_t total = 0;
    for (uint64_t c : counts) total += c;
    if (total == 0)
        throw std::invalid_argument("block entropy of a zero-sum vector");
    double h = 0.0;
    for (uint64_t c : counts) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / static_cast<double>(total);
        h -= p * std::log2(p);
    }
    return h;
}

std::string frequency_csv(const FrequencyProfile& profile) {
    std::ostringstream os;
    os << "t,f000,f001,f010,f011,f100,f101,f110,f111\n";
    for (size_t t = 0; t < profile.per_step.size(); ++t) {
        os << t;
        for (uint64_t c : profile.per_step[t]) os << ',' << c;
        os << '\n';
    }
    return os.str();
}

namespace {

// Mean attractor-row entropy for a censored orbit: entropy over the last
// `tail` rows of the capped run stands in for the unknown cycle.
double censored_tail_entropy(const Configuration& initial, Gate gate,
                             uint64_t cap, uint32_t tail) {
    const uint32_t n = initial.size();
    Configuration cur = initial;
    BitRow next(n), l(n), r(n);
    std::vector<BitRow> ring(tail, BitRow(n));
    for (uint64_t t = 0; t < cap; ++t) {
        step_into(cur, gate, next, l, r);
        cur.cells = next;
        ring[t % tail] = cur.cells;
    }
    double sum = 0.0;
    const uint32_t used = static_cast<uint32_t>(std::min<uint64_t>(tail, cap));
    for (uint32_t i = 0; i < used; ++i) {
        const auto counts = row_triple_counts(ring[i]);
        sum += block_entropy(counts);
    }
    return sum / used;
}

MorphologyClass classify_seed(const AttractorResult& det,
                              const std::vector<BitRow>& rows, double theta,
                              uint32_t p_small) {
    if (det.censored ||
        static_cast<double>(det.transient_plus_period()) > theta)
        return MorphologyClass::COMPLEX;
    bool all_homogeneous = true;
    for (const BitRow& row : rows)
        if (!row.homogeneous()) all_homogeneous = false;
    if (det.period == 1)
        return all_homogeneous ? MorphologyClass::FIXED_HOMOGENEOUS
                               : MorphologyClass::FIXED_HETEROGENEOUS;
    if (all_homogeneous) return MorphologyClass::PERIODIC_HOMOGENEOUS;
    if (det.period <= p_small) return MorphologyClass::PERIODIC_WITH_DOMAINS;
    // Heterogeneous cycles longer than p_small sit outside the named
    // periodic classes; treat them as complex.
    return MorphologyClass::COMPLEX;
}

}  // namespace

BehaviourProfile classify_behaviour(Gate gate, std::span<const uint64_t> seeds,
                                    const ClassifyParams& params) {
    if (seeds.empty()) throw std::invalid_argument("empty seed ensemble");
    const double theta = params.effective_theta();
    BehaviourProfile profile;
    profile.gate = gate;
    profile.ensemble_size = static_cast<uint32_t>(seeds.size());
    profile.n = params.n;
    profile.cap = params.cap;
    profile.theta = theta;
    profile.p_small = params.p_small;
    profile.density = params.density;

    double tpp_sum = 0.0, entropy_sum = 0.0;
    for (uint64_t seed : seeds) {
        const Configuration initial =
            random_configuration(params.n, params.density, seed);
        const AttractorResult det = detect_attractor(initial, gate, params.cap);
        SeedBehaviour sb;
        sb.seed = seed;
        sb.attractor = det;
        if (det.censored) {
            sb.morphology = MorphologyClass::COMPLEX;
            sb.attractor_entropy =
                censored_tail_entropy(initial, gate, params.cap, 8);
            ++profile.censored_seeds;
        } else {
            const auto rows = attractor_rows(initial, gate, det);
            sb.morphology = classify_seed(det, rows, theta, params.p_small);
            double h = 0.0;
            for (const BitRow& row : rows) {
                const auto counts = row_triple_counts(row);
                h += block_entropy(counts);
            }
            sb.attractor_entropy = h / static_cast<double>(rows.size());
        }
        tpp_sum += static_cast<double>(sb.attractor.transient_plus_period());
        entropy_sum += sb.attractor_entropy;
        profile.per_seed.push_back(std::move(sb));
    }
    profile.mean_transient_plus_period =
        tpp_sum / static_cast<double>(seeds.size());
    profile.mean_attractor_entropy =
        entropy_sum / static_cast<double>(seeds.size());

    // Majority class over the ensemble; a tied vote goes to the more complex
    // class so borderline gates are never under-ranked.
    std::map<MorphologyClass, uint32_t> votes;
    for (const auto& sb : profile.per_seed) ++votes[sb.morphology];
    MorphologyClass best = profile.per_seed.front().morphology;
    uint32_t best_votes = 0;
    for (const auto& [cls, count] : votes) {
        if (count > best_votes ||
            (count == best_votes && static_cast<int>(cls) > static_cast<int>(best))) {
            best = cls;
            best_votes = count;
        }
    }
    profile.morphology = best;

    std::vector<size_t> order(profile.per_seed.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return profile.per_seed[a].attractor.transient_plus_period() <
               profile.per_seed[b].attractor.transient_plus_period();
    });
    profile.attractor = profile.per_seed[order[order.size() / 2]].attractor;
    return profile;
}

hierarchy::Ranking behavioural_ranking(
    std::span<const BehaviourProfile> profiles) {
    for (const auto& p : profiles)
        if (!is_binary(p.gate))
            throw std::invalid_argument("behavioural ranking needs binary gates");
    std::vector<size_t> order(profiles.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    auto key_less = [&](size_t a, size_t b) {
        const auto& pa = profiles[a];
        const auto& pb = profiles[b];
        const int ra = morphology_rank(pa.morphology);
        const int rb = morphology_rank(pb.morphology);
        if (ra != rb) return ra < rb;
        if (pa.mean_transient_plus_period != pb.mean_transient_plus_period)
            return pa.mean_transient_plus_period < pb.mean_transient_plus_period;
        if (std::abs(pa.mean_attractor_entropy - pb.mean_attractor_entropy) <=
            1e-9)
            return false;
        return pa.mean_attractor_entropy < pb.mean_attractor_entropy;
    };
    std::stable_sort(order.begin(), order.end(), key_less);
    hierarchy::Ranking r;
    r.source = "behavioural";
    for (size_t i = 0; i < order.size(); ++i) {
        if (i == 0 || key_less(order[i - 1], order[i]))
            r.groups.emplace_back();
        r.groups.back().push_back(std::string(to_string(profiles[order[i]].gate)));
    }
    return r;
}

}  // namespace gatelab
