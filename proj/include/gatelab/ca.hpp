#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gatelab/bitrow.hpp"
#include "gatelab/gates.hpp"

namespace gatelab {

enum class Boundary : uint8_t { periodic, fixed_false };

std::string_view to_string(Boundary b);
Boundary parse_boundary(std::string_view name);

// Ring (or fixed-FALSE-edged line) of n >= 3 binary cells.
struct Configuration {
    BitRow cells;
    Boundary boundary = Boundary::periodic;

    uint32_t size() const { return cells.size(); }
    friend bool operator==(const Configuration&, const Configuration&) = default;
};

struct SpaceTimeDiagram {
    std::vector<BitRow> rows;  // rows[t] = configuration after t steps
    Gate gate;
    Boundary boundary = Boundary::periodic;

    uint32_t width() const { return rows.empty() ? 0 : rows.front().size(); }
    size_t height() const { return rows.size(); }
};

// One synchronous update: cell i <- gate(left(i), right(i)). Throws for NOT.
Configuration step(const Configuration& config, Gate gate);

// In-place update into next.cells using preallocated scratch for the shifted
// neighbour rows; the hot path for orbit scans.
void step_into(const Configuration& config, Gate gate, BitRow& next,
               BitRow& scratch_l, BitRow& scratch_r);

// steps+1 rows, row 0 == initial.
SpaceTimeDiagram run(const Configuration& initial, Gate gate, uint32_t steps);

// Each cell independently TRUE with probability density; identical
// (n, density, seed) give identical rows. Throws if n < 3 or density
// outside [0,1].
Configuration random_configuration(uint32_t n, double density, uint64_t seed,
                                   Boundary boundary = Boundary::periodic);

// Single TRUE cell at n/2, the Sierpinski-style initial condition.
Configuration single_seed_configuration(uint32_t n,
                                        Boundary boundary = Boundary::periodic);

// Plain-text PBM (P1): "P1\n<w> <h>\n" then one row of '0'/'1' per line,
// row t on image line t, '1' = TRUTH = black.
void write_pbm(std::ostream& os, const SpaceTimeDiagram& diagram);
std::string pbm_string(const SpaceTimeDiagram& diagram);

}  // namespace gatelab
