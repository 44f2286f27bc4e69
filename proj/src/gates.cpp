#include "gatelab/gates.hpp"

#include <stdexcept>

namespace gatelab {

bool apply(Gate g, std::span<const uint8_t> inputs) {
    if (static_cast<int>(inputs.size()) != arity(g)) {
        throw std::invalid_argument("gate arity mismatch: " +
                                    std::string(to_string(g)) + " takes " +
                                    std::to_string(arity(g)) + " inputs, got " +
                                    std::to_string(inputs.size()));
    }
    if (g == Gate::NOT) return apply1(g, inputs[0] != 0);
    return apply2(g, inputs[0] != 0, inputs[1] != 0);
}

std::vector<uint8_t> truth_table(Gate g) {
    std::vector<uint8_t> table;
    if (g == Gate::NOT) {
        for (int a = 0; a < 2; ++a) table.push_back(apply1(g, a != 0) ? 1 : 0);
    } else {
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                table.push_back(apply2(g, a != 0, b != 0) ? 1 : 0);
    }
    return table;
}

uint8_t eca_rule_number(Gate g) {
    if (!is_binary(g)) {
        throw std::invalid_argument(
            "eca_rule_number requires a binary gate; NOT has no CA reading");
    }
    uint8_t rule = 0;
    for (int k = 0; k < 8; ++k) {
        const bool l = (k & 4) != 0;
        const bool r = (k & 1) != 0;
        if (apply2(g, l, r)) rule |= static_cast<uint8_t>(1u << k);
    }
    return rule;
}

std::string_view to_string(Gate g) {
    switch (g) {
        case Gate::AND: return "AND";
        case Gate::OR: return "OR";
        case Gate::XOR: return "XOR";
        case Gate::NAND: return "NAND";
        case Gate::NOR: return "NOR";
        case Gate::NOT: return "NOT";
    }
    return "?";
}

Gate parse_gate(std::string_view name) {
    for (Gate g : kAllGates)
        if (name == to_string(g)) return g;
    throw std::invalid_argument("unknown gate name: " + std::string(name));
}

}  // namespace gatelab
