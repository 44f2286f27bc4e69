// AVX2 variants of the CA inner loops, 4 packed words per lane group.
// Compiled with -mavx2; only reachable through the runtime dispatch.

#include <cstddef>
#include <cstdint>

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

#include <bit>

namespace gatelab::kernels {

namespace {

inline __m256i mux(__m256i sel, __m256i hi, __m256i lo) {
    return _mm256_or_si256(_mm256_and_si256(sel, hi),
                           _mm256_andnot_si256(sel, lo));
}

inline uint64_t mux64(uint64_t sel, uint64_t hi, uint64_t lo) {
    return (sel & hi) | (~sel & lo);
}

}  // namespace

void apply_rule_avx2(uint8_t rule, const uint64_t* l, const uint64_t* c,
                     const uint64_t* r, uint64_t* out, size_t nwords) {
    __m256i b[8];
    for (int k = 0; k < 8; ++k)
        b[k] = _mm256_set1_epi64x((rule >> k) & 1 ? -1 : 0);
    size_t w = 0;
    for (; w + 4 <= nwords; w += 4) {
        const __m256i L = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(l + w));
        const __m256i C = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(c + w));
        const __m256i R = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(r + w));
        const __m256i lo = mux(C, mux(R, b[3], b[2]), mux(R, b[1], b[0]));
        const __m256i hi = mux(C, mux(R, b[7], b[6]), mux(R, b[5], b[4]));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + w), mux(L, hi, lo));
    }
    uint64_t bs[8];
    for (int k = 0; k < 8; ++k) bs[k] = (rule >> k) & 1 ? ~0ull : 0ull;
    for (; w < nwords; ++w) {
        const uint64_t L = l[w], C = c[w], R = r[w];
        const uint64_t lo = mux64(C, mux64(R, bs[3], bs[2]), mux64(R, bs[1], bs[0]));
        const uint64_t hi = mux64(C, mux64(R, bs[7], bs[6]), mux64(R, bs[5], bs[4]));
        out[w] = mux64(L, hi, lo);
    }
}

void triple_counts_avx2(const uint64_t* l, const uint64_t* c, const uint64_t* r,
                        size_t nwords, uint64_t counts[8]) {
    const __m256i ones = _mm256_set1_epi64x(-1);
    size_t w = 0;
    alignas(32) uint64_t lanes[4];
    for (; w + 4 <= nwords; w += 4) {
        const __m256i L = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(l + w));
        const __m256i C = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(c + w));
        const __m256i R = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(r + w));
        const __m256i nL = _mm256_xor_si256(L, ones);
        const __m256i nC = _mm256_xor_si256(C, ones);
        const __m256i nR = _mm256_xor_si256(R, ones);
        for (int k = 0; k < 8; ++k) {
            const __m256i ind = _mm256_and_si256(
                _mm256_and_si256((k & 4) ? L : nL, (k & 2) ? C : nC),
                (k & 1) ? R : nR);
            _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), ind);
            counts[k] += static_cast<uint64_t>(_mm_popcnt_u64(lanes[0])) +
                         static_cast<uint64_t>(_mm_popcnt_u64(lanes[1])) +
                         static_cast<uint64_t>(_mm_popcnt_u64(lanes[2])) +
                         static_cast<uint64_t>(_mm_popcnt_u64(lanes[3]));
        }
    }
    for (; w < nwords; ++w) {
        const uint64_t L = l[w], C = c[w], R = r[w];
        for (int k = 0; k < 8; ++k) {
            const uint64_t ind = ((k & 4) ? L : ~L) & ((k & 2) ? C : ~C) &
                                 ((k & 1) ? R : ~R);
            counts[k] += static_cast<uint64_t>(std::popcount(ind));
        }
    }
}

}  // namespace gatelab::kernels

#endif  // x86_64
