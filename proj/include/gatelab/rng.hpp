#pragma once

#include <cstdint>
#include <random>

namespace gatelab::rng {

// All stochastic code in the project draws from mt19937_64 through the
// mappings below. The standard pins the engine's output sequence exactly,
// and the mappings avoid std::*_distribution (whose results are
// implementation-defined), so identical seeds give identical bits on every
// platform.
class Stream {
  public:
    explicit Stream(uint64_t seed) : engine_(seed) {}

    uint64_t next_u64() { return engine_(); }

    // Uniform integer in [0, n). Lemire multiply-shift reduction.
    uint64_t uniform_index(uint64_t n) {
        return static_cast<uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    // Uniform double in [0, 1) with 53 random bits.
    double real01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // True with probability p (p outside [0,1] is clamped by the comparison).
    bool bernoulli(double p) { return real01() < p; }

  private:
    std::mt19937_64 engine_;
};

inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Per-run / per-seed derivation: independent of scheduling order, so worker
// count never changes the streams.
inline uint64_t derive(uint64_t master, uint64_t index) {
    uint64_t s = master ^ (0xA0761D6478BD642Full * (index + 1));
    return splitmix64(s);
}

}  // namespace gatelab::rng
