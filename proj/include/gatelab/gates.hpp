#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gatelab {

enum class Gate : uint8_t { AND, OR, XOR, NAND, NOR, NOT };

inline constexpr Gate kBinaryGates[] = {Gate::AND, Gate::OR, Gate::XOR,
                                        Gate::NAND, Gate::NOR};
inline constexpr Gate kAllGates[] = {Gate::AND, Gate::OR, Gate::XOR,
                                     Gate::NAND, Gate::NOR, Gate::NOT};

constexpr int arity(Gate g) { return g == Gate::NOT ? 1 : 2; }
constexpr bool is_binary(Gate g) { return arity(g) == 2; }

// Truth-table lookup for the binary gates.
constexpr bool apply2(Gate g, bool a, bool b) {
    switch (g) {
        case Gate::AND: return a && b;
        case Gate::OR: return a || b;
        case Gate::XOR: return a != b;
        case Gate::NAND: return !(a && b);
        case Gate::NOR: return !(a || b);
        case Gate::NOT: break;
    }
    return false;  // unreachable for binary gates
}

constexpr bool apply1(Gate g, bool a) { return g == Gate::NOT ? !a : false; }

// Generic entry point; throws std::invalid_argument on arity mismatch.
bool apply(Gate g, std::span<const uint8_t> inputs);

// Truth table as output bits indexed by the input tuple read as a binary
// number (a is the high bit for binary gates). 4 entries for binary gates,
// 2 for NOT.
std::vector<uint8_t> truth_table(Gate g);

// The elementary-CA rule number realized by x_i' = g(x_{i-1}, x_{i+1}).
// Bit 4l+2c+r of the result is g(l, r); the centre cell never matters.
// Throws std::invalid_argument for NOT.
uint8_t eca_rule_number(Gate g);

std::string_view to_string(Gate g);
// Parses the uppercase serialized name; throws std::invalid_argument.
Gate parse_gate(std::string_view name);

}  // namespace gatelab
