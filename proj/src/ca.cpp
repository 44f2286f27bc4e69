#include "gatelab/ca.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

#include "gatelab/kernels.hpp"
#include "gatelab/rng.hpp"

namespace gatelab {

std::string_view to_string(Boundary b) {
    return b == Boundary::periodic ? "PERIODIC" : "FIXED_FALSE";
}

Boundary parse_boundary(std::string_view name) {
    if (name == "PERIODIC" || name == "periodic") return Boundary::periodic;
    if (name == "FIXED_FALSE" || name == "fixed-false" || name == "fixed_false")
        return Boundary::fixed_false;
    throw std::invalid_argument("unknown boundary: " + std::string(name));
}

void step_into(const Configuration& config, Gate gate, BitRow& next,
               BitRow& scratch_l, BitRow& scratch_r) {
    if (!is_binary(gate))
        throw std::invalid_argument("CA stepping requires a binary gate");
    const uint32_t n = config.size();
    const bool wrap = config.boundary == Boundary::periodic;
    shift_up_1(scratch_l.words(), config.cells.words(), n, wrap);
    shift_down_1(scratch_r.words(), config.cells.words(), n, wrap);
    const auto& k = kernels::active();
    k.apply_rule(eca_rule_number(gate), scratch_l.words(), config.cells.words(),
                 scratch_r.words(), next.words(), config.cells.word_count());
    next.canonicalize();
}

Configuration step(const Configuration& config, Gate gate) {
    Configuration out{BitRow(config.size()), config.boundary};
    BitRow l(config.size()), r(config.size());
    step_into(config, gate, out.cells, l, r);
    return out;
}

SpaceTimeDiagram run(const Configuration& initial, Gate gate, uint32_t steps) {
    SpaceTimeDiagram d{{}, gate, initial.boundary};
    d.rows.reserve(steps + 1);
    d.rows.push_back(initial.cells);
    Configuration cur = initial;
    BitRow next(initial.size()), l(initial.size()), r(initial.size());
    for (uint32_t t = 0; t < steps; ++t) {
        step_into(cur, gate, next, l, r);
        cur.cells = next;
        d.rows.push_back(cur.cells);
    }
    return d;
}

Configuration random_configuration(uint32_t n, double density, uint64_t seed,
                                   Boundary boundary) {
    if (n < 3) throw std::invalid_argument("configuration needs at least 3 cells");
    if (!(density >= 0.0 && density <= 1.0))
        throw std::invalid_argument("density must lie in [0,1]");
    Configuration c{BitRow(n), boundary};
    rng::Stream stream(seed);
    for (uint32_t i = 0; i < n; ++i)
        if (stream.bernoulli(density)) c.cells.set(i, true);
    return c;
}

Configuration single_seed_configuration(uint32_t n, Boundary boundary) {
    if (n < 3) throw std::invalid_argument("configuration needs at least 3 cells");
    Configuration c{BitRow(n), boundary};
    c.cells.set(n / 2, true);
    return c;
}

void write_pbm(std::ostream& os, const SpaceTimeDiagram& diagram) {
    os << "P1\n" << diagram.width() << ' ' << diagram.height() << '\n';
    std::string line(diagram.width(), '0');
    for (const BitRow& row : diagram.rows) {
        for (uint32_t i = 0; i < row.size(); ++i) line[i] = row.get(i) ? '1' : '0';
        os << line << '\n';
    }
}

std::string pbm_string(const SpaceTimeDiagram& diagram) {
    std::ostringstream os;
    write_pbm(os, diagram);
    return os.str();
}

}  // namespace gatelab
