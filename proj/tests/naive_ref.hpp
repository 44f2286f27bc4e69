#pragma once

// Test-only reference implementations. Everything here works on byte-per-cell
// vectors with per-cell truth-table application, deliberately sharing no code
// with the packed-word kernel path it checks.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "gatelab/gates.hpp"

namespace naive {

using Cells = std::vector<uint8_t>;

inline Cells step(const Cells& row, gatelab::Gate gate, bool periodic) {
    const int n = static_cast<int>(row.size());
    Cells out(n);
    for (int i = 0; i < n; ++i) {
        uint8_t l, r;
        if (periodic) {
            l = row[(i + n - 1) % n];
            r = row[(i + 1) % n];
        } else {
            l = i == 0 ? 0 : row[i - 1];
            r = i == n - 1 ? 0 : row[i + 1];
        }
        out[i] = gatelab::apply2(gate, l != 0, r != 0) ? 1 : 0;
    }
    return out;
}

inline Cells rule_step(const Cells& row, uint8_t rule, bool periodic) {
    const int n = static_cast<int>(row.size());
    Cells out(n);
    for (int i = 0; i < n; ++i) {
        uint8_t l, c = row[i], r;
        if (periodic) {
            l = row[(i + n - 1) % n];
            r = row[(i + 1) % n];
        } else {
            l = i == 0 ? 0 : row[i - 1];
            r = i == n - 1 ? 0 : row[i + 1];
        }
        const int idx = 4 * (l != 0) + 2 * (c != 0) + (r != 0);
        out[i] = (rule >> idx) & 1;
    }
    return out;
}

inline std::array<uint64_t, 8> triple_counts(const Cells& row) {
    const int n = static_cast<int>(row.size());
    std::array<uint64_t, 8> counts{};
    for (int i = 0; i < n; ++i) {
        const int idx = 4 * (row[(i + n - 1) % n] != 0) + 2 * (row[i] != 0) +
                        (row[(i + 1) % n] != 0);
        ++counts[idx];
    }
    return counts;
}

struct Orbit {
    uint64_t transient = 0;
    uint64_t period = 0;  // 0 = no repeat within the cap
};

// Stored-orbit brute force: keep every configuration, compare each new one
// against all previous by linear scan.
inline Orbit orbit(const Cells& initial, gatelab::Gate gate, uint64_t cap,
                   bool periodic = true) {
    std::vector<Cells> seen{initial};
    Cells cur = initial;
    for (uint64_t t = 1; t <= cap; ++t) {
        cur = step(cur, gate, periodic);
        for (uint64_t s = 0; s < seen.size(); ++s) {
            if (seen[s] == cur) return {s, t - s};
        }
        seen.push_back(cur);
    }
    return {0, 0};
}

inline std::vector<Cells> orbit_cycle_rows(const Cells& initial,
                                           gatelab::Gate gate, const Orbit& o,
                                           bool periodic = true) {
    Cells cur = initial;
    for (uint64_t t = 0; t < o.transient; ++t) cur = step(cur, gate, periodic);
    std::vector<Cells> rows;
    for (uint64_t p = 0; p < o.period; ++p) {
        rows.push_back(cur);
        cur = step(cur, gate, periodic);
    }
    return rows;
}

inline bool homogeneous(const Cells& row) {
    for (uint8_t c : row)
        if (c != row[0]) return false;
    return true;
}

// Independent P1 renderer for byte-comparing CLI output.
inline std::string render_pbm(const std::vector<Cells>& rows) {
    std::string out = "P1\n" + std::to_string(rows[0].size()) + " " +
                      std::to_string(rows.size()) + "\n";
    for (const auto& row : rows) {
        for (uint8_t c : row) out += c ? '1' : '0';
        out += '\n';
    }
    return out;
}

// Deterministic test RNG, unrelated to the library's generator.
struct Lcg {
    uint64_t state;
    explicit Lcg(uint64_t seed) : state(seed * 2862933555777941757ull + 3037000493ull) {}
    uint64_t next() {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        return state >> 16;
    }
    Cells random_row(int n) {
        Cells row(n);
        for (auto& c : row) c = next() & 1;
        return row;
    }
};

}  // namespace naive
