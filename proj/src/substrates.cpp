#include "gatelab/substrates.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace gatelab {

namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw std::invalid_argument("bad hex digit in genotype string");
}

}  // namespace

void MaterialGenotype::validate() const {
    std::vector<std::string> problems;
    for (int i = 0; i < kLines; ++i) {
        if (pins[i] >= VirtualMaterial::kNodes)
            problems.push_back("line " + std::to_string(i) + " pin out of range");
        for (int j = i + 1; j < kLines; ++j)
            if (pins[i] == pins[j])
                problems.push_back("lines " + std::to_string(i) + " and " +
                                   std::to_string(j) + " share pin " +
                                   std::to_string(pins[i]));
    }
    for (int i = 0; i < kConfigLines; ++i)
        if (levels[i] >= VirtualMaterial::kLevels)
            problems.push_back("config level " + std::to_string(i) +
                               " out of range");
    if (!problems.empty()) {
        std::string message = "invalid material genotype:";
        for (const auto& p : problems) message += " " + p + ";";
        throw std::invalid_argument(message);
    }
}

std::string MaterialGenotype::to_hex() const {
    std::string out;
    out.reserve(kLines * 2 + kConfigLines);
    for (uint8_t p : pins) {
        out += kHexDigits[p >> 4];
        out += kHexDigits[p & 15];
    }
    for (uint8_t l : levels) out += kHexDigits[l];
    return out;
}

MaterialGenotype MaterialGenotype::from_hex(const std::string& hex) {
    if (hex.size() != kLines * 2 + kConfigLines)
        throw std::invalid_argument("material genotype hex has wrong length");
    MaterialGenotype g;
    for (int i = 0; i < kLines; ++i)
        g.pins[i] = static_cast<uint8_t>(hex_value(hex[2 * i]) * 16 +
                                         hex_value(hex[2 * i + 1]));
    for (int i = 0; i < kConfigLines; ++i)
        g.levels[i] = static_cast<uint8_t>(hex_value(hex[kLines * 2 + i]));
    return g;
}

VirtualMaterial VirtualMaterial::from_seed(uint64_t seed, int settle_steps) {
    if (settle_steps < 1)
        throw std::invalid_argument("material settle_steps must be >= 1");
    VirtualMaterial m;
    m.seed_ = seed;
    m.settle_steps_ = settle_steps;
    rng::Stream stream(seed);
    for (int i = 0; i < kNodes; ++i) {
        for (int k = 0; k < kNeighbours; ++k)
            m.nodes_[i].nbr[k] =
                static_cast<uint8_t>(stream.uniform_index(kNodes));
        for (int t = 0; t < 256; ++t)
            m.nodes_[i].table[t] =
                static_cast<uint8_t>(stream.uniform_index(kLevels));
    }
    return m;
}

VirtualMaterial VirtualMaterial::planted(uint64_t seed, int settle_steps) {
    VirtualMaterial m = from_seed(seed, settle_steps);
    m.planted_ = true;
    for (int i = 0; i < kPlantedOr; ++i) {
        auto& node = m.nodes_[i];
        // The planted response reads only the first two neighbours; make sure
        // they are distinct pins other than the node itself.
        if (node.nbr[0] == i) node.nbr[0] = static_cast<uint8_t>((i + 17) % kNodes);
        while (node.nbr[1] == i || node.nbr[1] == node.nbr[0])
            node.nbr[1] = static_cast<uint8_t>((node.nbr[1] + 1) % kNodes);
        const bool pass_through = i < kPlantedPassThrough;
        for (int t = 0; t < 256; ++t) {
            const int q0 = (t >> 6) & 3;
            const int q1 = (t >> 4) & 3;
            const bool high = pass_through ? q0 >= 2 : (q0 >= 2 || q1 >= 2);
            node.table[t] = high ? kLevels - 1 : 0;
        }
    }
    return m;
}

int VirtualMaterial::output_level(const MaterialGenotype& genotype, int a_level,
                                  int b_level) const {
    genotype.validate();
    std::array<uint8_t, kNodes> level{};
    std::array<uint8_t, kNodes> next{};

    auto clamp_driven = [&](std::array<uint8_t, kNodes>& v) {
        v[genotype.ground_pin()] = 0;
        v[genotype.input_a_pin()] = static_cast<uint8_t>(a_level);
        v[genotype.input_b_pin()] = static_cast<uint8_t>(b_level);
        for (int i = 0; i < MaterialGenotype::kConfigLines; ++i)
            v[genotype.pins[4 + i]] = genotype.levels[i];
    };

    clamp_driven(level);
    for (int step = 0; step < settle_steps_; ++step) {
        for (int i = 0; i < kNodes; ++i) {
            const auto& node = nodes_[i];
            const int idx = ((level[node.nbr[0]] >> 2) << 6) |
                            ((level[node.nbr[1]] >> 2) << 4) |
                            ((level[node.nbr[2]] >> 2) << 2) |
                            (level[node.nbr[3]] >> 2);
            next[i] = node.table[idx];
        }
        clamp_driven(next);
        level = next;
    }
    return level[genotype.output_pin()];
}

bool VirtualMaterial::evaluate(const MaterialGenotype& genotype, bool a, bool b,
                               uint64_t& eval_counter) const {
    ++eval_counter;
    const int out = output_level(genotype, a ? kLevels - 1 : 0, b ? kLevels - 1 : 0);
    return out >= kHighLevel;
}

uint64_t VirtualMaterial::table_hash() const {
    uint64_t h = 0xCBF29CE484222325ull;
    auto mix = [&h](uint8_t byte) {
        h ^= byte;
        h *= 0x100000001B3ull;
    };
    for (const auto& node : nodes_) {
        for (uint8_t n : node.nbr) mix(n);
        for (uint8_t t : node.table) mix(t);
    }
    return h;
}

MaterialGenotype random_material_genotype(rng::Stream& stream) {
    // Partial Fisher-Yates over the 64 pins for the 8 distinct assignments.
    std::array<uint8_t, VirtualMaterial::kNodes> deck;
    std::iota(deck.begin(), deck.end(), 0);
    MaterialGenotype g;
    for (int i = 0; i < MaterialGenotype::kLines; ++i) {
        const auto j = i + stream.uniform_index(VirtualMaterial::kNodes - i);
        std::swap(deck[i], deck[j]);
        g.pins[i] = deck[i];
    }
    for (int i = 0; i < MaterialGenotype::kConfigLines; ++i)
        g.levels[i] = static_cast<uint8_t>(stream.uniform_index(VirtualMaterial::kLevels));
    return g;
}

void mutate_material_genotype(MaterialGenotype& genotype, int count,
                              rng::Stream& stream) {
    const int genes = MaterialGenotype::kLines + MaterialGenotype::kConfigLines;
    for (int m = 0; m < count; ++m) {
        const int pos = static_cast<int>(stream.uniform_index(genes));
        if (pos < MaterialGenotype::kLines) {
            uint8_t fresh;
            bool clash;
            do {
                fresh = static_cast<uint8_t>(
                    stream.uniform_index(VirtualMaterial::kNodes));
                clash = false;
                for (int i = 0; i < MaterialGenotype::kLines; ++i)
                    if (i != pos && genotype.pins[i] == fresh) clash = true;
            } while (clash);
            genotype.pins[pos] = fresh;
        } else {
            genotype.levels[pos - MaterialGenotype::kLines] = static_cast<uint8_t>(
                stream.uniform_index(VirtualMaterial::kLevels));
        }
    }
}

// ---- excitable medium --------------------------------------------------------

ControllerGenotype ControllerGenotype::random(rng::Stream& stream) {
    ControllerGenotype g;
    for (auto& w : g.bits) w = stream.next_u64();
    return g;
}

ControllerGenotype ControllerGenotype::constant(bool illuminate) {
    ControllerGenotype g;
    for (auto& w : g.bits) w = illuminate ? ~0ull : 0ull;
    return g;
}

std::string ControllerGenotype::to_hex() const {
    std::string out;
    out.reserve(bits.size() * 16);
    for (uint64_t w : bits)
        for (int nibble = 15; nibble >= 0; --nibble)
            out += kHexDigits[(w >> (nibble * 4)) & 15];
    return out;
}

void MediumParams::validate() const {
    std::vector<std::string> problems;
    if (block < 1) problems.push_back("block must be >= 1");
    if (lattice < block || lattice % block != 0)
        problems.push_back("lattice must be a positive multiple of block");
    if (block >= 1 && lattice / block != ControllerGenotype::kGrid)
        problems.push_back("lattice/block must equal the 10-cell controller grid");
    if (refractory < 1) problems.push_back("refractory must be >= 1");
    if (iterations < 1) problems.push_back("iterations must be >= 1");
    if (window < 1 || window > iterations)
        problems.push_back("window must lie in [1, iterations]");
    if (theta_out < 1) problems.push_back("theta_out must be >= 1");
    if (!problems.empty()) {
        std::string message = "invalid medium parameters:";
        for (const auto& p : problems) message += " " + p + ";";
        throw std::invalid_argument(message);
    }
}

namespace {

// Cell states: 0 resting, 1 excited, 2..refractory+1 refractory stages.
constexpr uint8_t kResting = 0;
constexpr uint8_t kExcited = 1;

}  // namespace

MediumRun medium_run(const ControllerGenotype& controller, bool a, bool b,
                     const MediumParams& params, uint64_t& eval_counter) {
    params.validate();
    ++eval_counter;
    const int n = params.lattice;
    const int grid = ControllerGenotype::kGrid;
    std::vector<uint8_t> state(n * n, kResting);
    std::vector<uint8_t> next(n * n, kResting);

    // Input domains: one controller block in opposite corners.
    if (a)
        for (int y = 0; y < params.block; ++y)
            for (int x = 0; x < params.block; ++x) state[y * n + x] = kExcited;
    if (b)
        for (int y = n - params.block; y < n; ++y)
            for (int x = n - params.block; x < n; ++x)
                state[y * n + x] = kExcited;

    std::vector<uint8_t> sense(grid * grid);
    std::vector<uint8_t> illum(grid * grid);
    MediumRun result;
    result.excited_per_step.reserve(params.iterations);

    for (int iter = 0; iter < params.iterations; ++iter) {
        // 1. threshold activity per controller block
        for (int cy = 0; cy < grid; ++cy) {
            for (int cx = 0; cx < grid; ++cx) {
                uint8_t s = 0;
                for (int y = cy * params.block; y < (cy + 1) * params.block && !s; ++y)
                    for (int x = cx * params.block; x < (cx + 1) * params.block; ++x)
                        if (state[y * n + x] == kExcited) {
                            s = 1;
                            break;
                        }
                sense[cy * grid + cx] = s;
            }
        }
        // 2. per-cell rule tables -> illumination; off-grid neighbours read 0.
        //    Index bits: own, then N, NE, E, SE, S, SW, W, NW.
        static constexpr int dy[8] = {-1, -1, 0, 1, 1, 1, 0, -1};
        static constexpr int dx[8] = {0, 1, 1, 1, 0, -1, -1, -1};
        for (int cy = 0; cy < grid; ++cy) {
            for (int cx = 0; cx < grid; ++cx) {
                uint32_t idx = sense[cy * grid + cx] ? 1u << 8 : 0u;
                for (int k = 0; k < 8; ++k) {
                    const int ny = cy + dy[k], nx = cx + dx[k];
                    if (ny < 0 || ny >= grid || nx < 0 || nx >= grid) continue;
                    if (sense[ny * grid + nx]) idx |= 1u << (7 - k);
                }
                illum[cy * grid + cx] =
                    controller.table_bit(cy * grid + cx, idx) ? 1 : 0;
            }
        }
        // 3. step the medium under the upsampled illumination field
        uint32_t excited = 0;
        for (int y = 0; y < n; ++y) {
            for (int x = 0; x < n; ++x) {
                const uint8_t s = state[y * n + x];
                if (s == kExcited) {
                    next[y * n + x] = 2;
                } else if (s >= 2) {
                    next[y * n + x] =
                        s >= params.refractory + 1 ? kResting : static_cast<uint8_t>(s + 1);
                } else {
                    bool fire = false;
                    if (!illum[(y / params.block) * grid + (x / params.block)]) {
                        for (int oy = -1; oy <= 1 && !fire; ++oy) {
                            for (int ox = -1; ox <= 1; ++ox) {
                                if (!oy && !ox) continue;
                                const int yy = y + oy, xx = x + ox;
                                if (yy < 0 || yy >= n || xx < 0 || xx >= n) continue;
                                if (state[yy * n + xx] == kExcited) {
                                    fire = true;
                                    break;
                                }
                            }
                        }
                    }
                    next[y * n + x] = fire ? kExcited : kResting;
                    if (fire) ++excited;
                }
            }
        }
        state.swap(next);
        result.excited_per_step.push_back(excited);
    }

    for (int iter = params.iterations - params.window; iter < params.iterations;
         ++iter)
        result.activity_integral += result.excited_per_step[iter];
    result.output =
        result.activity_integral >= static_cast<uint64_t>(params.theta_out);
    return result;
}

}  // namespace gatelab
