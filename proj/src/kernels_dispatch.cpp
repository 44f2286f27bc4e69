// Runtime kernel selection. No intrinsics here; each implementation lives in
// its own translation unit and is only called when the CPU supports it.

#include "gatelab/kernels.hpp"

#include <optional>
#include <stdexcept>

namespace gatelab::kernels {

void apply_rule_scalar(uint8_t, const uint64_t*, const uint64_t*,
                       const uint64_t*, uint64_t*, size_t);
void triple_counts_scalar(const uint64_t*, const uint64_t*, const uint64_t*,
                          size_t, uint64_t[8]);

#if defined(__x86_64__) || defined(_M_X64)
void apply_rule_avx2(uint8_t, const uint64_t*, const uint64_t*,
                     const uint64_t*, uint64_t*, size_t);
void triple_counts_avx2(const uint64_t*, const uint64_t*, const uint64_t*,
                        size_t, uint64_t[8]);
#endif

namespace {

constexpr Kernels kScalar{apply_rule_scalar, triple_counts_scalar, "scalar"};
#if defined(__x86_64__) || defined(_M_X64)
constexpr Kernels kAvx2{apply_rule_avx2, triple_counts_avx2, "avx2"};
#endif

std::optional<Impl> g_forced;

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

}  // namespace

bool supported(Impl impl) {
    switch (impl) {
        case Impl::scalar: return true;
        case Impl::avx2: return cpu_has_avx2();
    }
    return false;
}

const Kernels& get(Impl impl) {
#if defined(__x86_64__) || defined(_M_X64)
    if (impl == Impl::avx2) return kAvx2;
#endif
    return kScalar;
}

const Kernels& active() {
    if (g_forced) return get(*g_forced);
    static const Kernels& best =
        supported(Impl::avx2) ? get(Impl::avx2) : get(Impl::scalar);
    return best;
}

void force(Impl impl) {
    if (!supported(impl))
        throw std::runtime_error("kernel implementation not supported on this CPU");
    g_forced = impl;
}

void clear_force() { g_forced.reset(); }

std::string_view active_name() { return active().name; }

}  // namespace gatelab::kernels
