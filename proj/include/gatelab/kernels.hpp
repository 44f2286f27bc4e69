#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace gatelab::kernels {

// The two word-parallel inner loops of the CA engine. Both take packed rows
// in canonical form (padding bits above n are zero in every input array) and
// leave outputs canonical.
//
//  apply_rule: out[w] holds, per bit, rule bit (4l + 2c + r) selected from the
//              three neighbourhood arrays. Padding bits of out may be garbage;
//              callers mask the final word.
//  triple_counts: counts[k] += number of positions whose (l,c,r) reads k,
//              over nwords whole words. Padding positions read (0,0,0), so the
//              caller subtracts the pad width from counts[0].
struct Kernels {
    void (*apply_rule)(uint8_t rule, const uint64_t* l, const uint64_t* c,
                       const uint64_t* r, uint64_t* out, size_t nwords);
    void (*triple_counts)(const uint64_t* l, const uint64_t* c,
                          const uint64_t* r, size_t nwords, uint64_t counts[8]);
    const char* name;
};

enum class Impl { scalar, avx2 };

bool supported(Impl impl);
// The best implementation the CPU supports (or a forced one).
const Kernels& active();
const Kernels& get(Impl impl);
// Test hook: pin the dispatch to one implementation. Throws if unsupported.
void force(Impl impl);
void clear_force();
std::string_view active_name();

}  // namespace gatelab::kernels
