#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "gatelab/gates.hpp"
#include "gatelab/rng.hpp"

namespace gatelab {

// ---- virtual material (liquid-crystal stand-in) -----------------------------

// Which external line drives which of the 64 pins. Line order is fixed:
// ground, input A, input B, output, then the four configuration lines.
struct MaterialGenotype {
    static constexpr int kLines = 8;
    static constexpr int kConfigLines = 4;

    std::array<uint8_t, kLines> pins{};            // distinct, in [0, 64)
    std::array<uint8_t, kConfigLines> levels{};    // in [0, 16)

    uint8_t ground_pin() const { return pins[0]; }
    uint8_t input_a_pin() const { return pins[1]; }
    uint8_t input_b_pin() const { return pins[2]; }
    uint8_t output_pin() const { return pins[3]; }

    void validate() const;  // throws std::invalid_argument, every issue listed
    std::string to_hex() const;
    static MaterialGenotype from_hex(const std::string& hex);
    friend bool operator==(const MaterialGenotype&,
                           const MaterialGenotype&) = default;
};

// Seeded random nonlinear network of 64 nodes holding quantized levels in
// [0, 16). Each node reads four fixed neighbour pins (top two bits of each
// level) through a fixed random 256-entry transfer table. Fully determined
// by the seed; never mutated after construction.
class VirtualMaterial {
  public:
    static constexpr int kNodes = 64;
    static constexpr int kNeighbours = 4;
    static constexpr int kLevels = 16;
    static constexpr int kHighLevel = 8;  // output bit = level >= kHighLevel

    static VirtualMaterial from_seed(uint64_t seed, int settle_steps = 8);

    // Same seeded network with analytically known response tables planted on
    // nodes [0, 16): nodes 0..7 pass their first neighbour through, nodes
    // 8..15 OR their first two neighbours. Used by tests and benchmark
    // configurations where evolvability must be guaranteed.
    static VirtualMaterial planted(uint64_t seed, int settle_steps = 8);

    // Drive the genotype's pins (ground, inputs, config lines), settle the
    // network, read the output pin. Increments eval_counter by exactly 1.
    bool evaluate(const MaterialGenotype& genotype, bool a, bool b,
                  uint64_t& eval_counter) const;
    int output_level(const MaterialGenotype& genotype, int a_level,
                     int b_level) const;

    uint64_t seed() const { return seed_; }
    int settle_steps() const { return settle_steps_; }
    bool is_planted() const { return planted_; }
    static constexpr int kPlantedPassThrough = 8;   // nodes [0, 8)
    static constexpr int kPlantedOr = 16;           // nodes [8, 16)

    const std::array<uint8_t, kNeighbours>& neighbours(int node) const {
        return nodes_[node].nbr;
    }
    // Hash over wiring and transfer tables; equal seeds hash equal.
    uint64_t table_hash() const;

  private:
    struct Node {
        std::array<uint8_t, kNeighbours> nbr;
        std::array<uint8_t, 256> table;  // index packs the 4 neighbour quads
    };
    VirtualMaterial() = default;

    uint64_t seed_ = 0;
    int settle_steps_ = 8;
    bool planted_ = false;
    std::array<Node, kNodes> nodes_{};
};

MaterialGenotype random_material_genotype(rng::Stream& stream);
// Exactly `count` gene changes: a uniformly chosen pin line (reassigned to a
// fresh pin, resampled until distinct from the other lines) or config level.
void mutate_material_genotype(MaterialGenotype& genotype, int count,
                              rng::Stream& stream);

// ---- excitable medium + controller (BZ stand-in) ----------------------------

// 10x10 grid of cells, each carrying a 512-bit rule table over the 9-bit
// sense vector (own block activity + 8 neighbour blocks). Bit layout: word
// 8*cell + idx/64, bit idx%64.
struct ControllerGenotype {
    static constexpr int kGrid = 10;
    static constexpr int kCells = kGrid * kGrid;
    static constexpr int kTableBits = 512;
    static constexpr int kWordsPerCell = kTableBits / 64;
    static constexpr int kTotalBits = kCells * kTableBits;

    std::array<uint64_t, kCells * kWordsPerCell> bits{};

    bool table_bit(int cell, uint32_t idx) const {
        return (bits[cell * kWordsPerCell + idx / 64] >> (idx % 64)) & 1;
    }
    void flip_bit(uint32_t global_bit) {
        bits[global_bit / 64] ^= 1ull << (global_bit % 64);
    }

    static ControllerGenotype random(rng::Stream& stream);
    static ControllerGenotype constant(bool illuminate);

    std::string to_hex() const;
    friend bool operator==(const ControllerGenotype&,
                           const ControllerGenotype&) = default;
};

struct MediumParams {
    int lattice = 50;     // medium is lattice x lattice
    int block = 5;        // one controller cell per block x block medium cells
    int refractory = 2;   // refractory stages after excitation
    int window = 5;       // final steps integrated into the output activity
    int theta_out = 150;  // output bit = activity integral >= theta_out
    int iterations = 25;

    void validate() const;  // throws, every issue listed
};

struct MediumRun {
    bool output = false;
    uint64_t activity_integral = 0;
    std::vector<uint32_t> excited_per_step;
};

// Inject excitation into the corner input domains (A top-left, B bottom-right,
// each block x block) for TRUE inputs, then iterate: sense per-block activity,
// derive the illumination field from the controller tables, step the medium.
// Illuminated cells never excite. Increments eval_counter by exactly 1.
MediumRun medium_run(const ControllerGenotype& controller, bool a, bool b,
                     const MediumParams& params, uint64_t& eval_counter);

}  // namespace gatelab
