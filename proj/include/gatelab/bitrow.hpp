#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace gatelab {

// Fixed-length bit sequence packed LSB-first: cell i lives in word i/64 at
// bit i%64. Padding bits above n are always zero (canonical form), so
// equality, hashing and the kernels can work on whole words.
class BitRow {
  public:
    BitRow() = default;
    explicit BitRow(uint32_t n) : n_(n), words_((n + 63) / 64, 0) {}

    uint32_t size() const { return n_; }
    size_t word_count() const { return words_.size(); }
    const uint64_t* words() const { return words_.data(); }
    uint64_t* words() { return words_.data(); }

    bool get(uint32_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
    void set(uint32_t i, bool v) {
        const uint64_t m = 1ull << (i & 63);
        if (v)
            words_[i >> 6] |= m;
        else
            words_[i >> 6] &= ~m;
    }

    // Mask covering the valid bits of the final word.
    uint64_t last_word_mask() const {
        const uint32_t rem = n_ & 63;
        return rem == 0 ? ~0ull : (1ull << rem) - 1;
    }
    void canonicalize() {
        if (!words_.empty()) words_.back() &= last_word_mask();
    }

    uint32_t popcount() const {
        uint32_t c = 0;
        for (uint64_t w : words_) c += static_cast<uint32_t>(std::popcount(w));
        return c;
    }
    bool all_zero() const {
        for (uint64_t w : words_)
            if (w) return false;
        return true;
    }
    bool all_one() const { return popcount() == n_; }
    bool homogeneous() const { return all_zero() || all_one(); }

    void fill(bool v) {
        for (auto& w : words_) w = v ? ~0ull : 0ull;
        canonicalize();
    }

    // Cyclic rotation by k positions (cell i moves to (i+k) mod n).
    BitRow rotated(uint32_t k) const {
        BitRow out(n_);
        for (uint32_t i = 0; i < n_; ++i)
            if (get(i)) out.set((i + k) % n_, true);
        return out;
    }

    uint64_t hash() const {
        uint64_t h = 0x9E3779B97F4A7C15ull ^ n_;
        for (uint64_t w : words_) {
            h ^= w;
            h *= 0xFF51AFD7ED558CCDull;
            h ^= h >> 33;
        }
        return h;
    }

    friend bool operator==(const BitRow&, const BitRow&) = default;

  private:
    uint32_t n_ = 0;
    std::vector<uint64_t> words_;
};

// dst[i] = src[i-1]; index -1 reads bit n-1 when wrap, else 0.
// Works on canonical packed rows; output is canonical. dst must not alias src.
inline void shift_up_1(uint64_t* dst, const uint64_t* src, uint32_t n,
                       bool wrap) {
    const size_t nw = (n + 63) / 64;
    uint64_t carry = 0;
    if (wrap) carry = (src[(n - 1) >> 6] >> ((n - 1) & 63)) & 1;
    for (size_t w = 0; w < nw; ++w) {
        const uint64_t next_carry = src[w] >> 63;
        dst[w] = (src[w] << 1) | carry;
        carry = next_carry;
    }
    const uint32_t rem = n & 63;
    if (rem) dst[nw - 1] &= (1ull << rem) - 1;
}

// dst[i] = src[i+1]; index n reads bit 0 when wrap, else 0.
inline void shift_down_1(uint64_t* dst, const uint64_t* src, uint32_t n,
                         bool wrap) {
    const size_t nw = (n + 63) / 64;
    for (size_t w = 0; w < nw; ++w) {
        dst[w] = src[w] >> 1;
        if (w + 1 < nw) dst[w] |= src[w + 1] << 63;
    }
    if (wrap && (src[0] & 1)) dst[(n - 1) >> 6] |= 1ull << ((n - 1) & 63);
}

}  // namespace gatelab
