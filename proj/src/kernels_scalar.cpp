#include <bit>
#include <cstddef>
#include <cstdint>

namespace gatelab::kernels {

namespace {

inline uint64_t mux(uint64_t sel, uint64_t hi, uint64_t lo) {
    return (sel & hi) | (~sel & lo);
}

}  // namespace

// Reference kernel. Evaluates the 3-input rule table per bit with a
// multiplexer tree over broadcast rule bits; no branches in the loop.
void apply_rule_scalar(uint8_t rule, const uint64_t* l, const uint64_t* c,
                       const uint64_t* r, uint64_t* out, size_t nwords) {
    uint64_t b[8];
    for (int k = 0; k < 8; ++k) b[k] = (rule >> k) & 1 ? ~0ull : 0ull;
    for (size_t w = 0; w < nwords; ++w) {
        const uint64_t L = l[w], C = c[w], R = r[w];
        const uint64_t lo = mux(C, mux(R, b[3], b[2]), mux(R, b[1], b[0]));
        const uint64_t hi = mux(C, mux(R, b[7], b[6]), mux(R, b[5], b[4]));
        out[w] = mux(L, hi, lo);
    }
}

void triple_counts_scalar(const uint64_t* l, const uint64_t* c,
                          const uint64_t* r, size_t nwords,
                          uint64_t counts[8]) {
    for (size_t w = 0; w < nwords; ++w) {
        const uint64_t L = l[w], C = c[w], R = r[w];
        for (int k = 0; k < 8; ++k) {
            const uint64_t ind = ((k & 4) ? L : ~L) & ((k & 2) ? C : ~C) &
                                 ((k & 1) ? R : ~R);
            counts[k] += static_cast<uint64_t>(std::popcount(ind));
        }
    }
}

}  // namespace gatelab::kernels
