#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "gatelab/substrates.hpp"

using namespace gatelab;

namespace {

// Fill the remaining external lines with pins distinct from everything used.
MaterialGenotype genotype_with(uint8_t out_pin, uint8_t a_pin,
                               std::vector<uint8_t> fixed_levels = {0, 0, 0, 0},
                               int b_pin = -1) {
    MaterialGenotype g;
    std::set<uint8_t> used{out_pin, a_pin};
    if (b_pin >= 0) used.insert(static_cast<uint8_t>(b_pin));
    auto fresh = [&used]() {
        for (uint8_t p = 63;; --p)
            if (!used.count(p)) {
                used.insert(p);
                return p;
            }
    };
    g.pins[0] = fresh();  // ground
    g.pins[1] = a_pin;
    g.pins[2] = b_pin >= 0 ? static_cast<uint8_t>(b_pin) : fresh();
    g.pins[3] = out_pin;
    for (int i = 0; i < 4; ++i) {
        g.pins[4 + i] = fresh();
        g.levels[i] = fixed_levels[i];
    }
    return g;
}

// Plain Greenberg-Hastings reference with no illumination, written against
// explicit (x, y) loops rather than the production update.
std::vector<uint32_t> gh_oracle_excited(bool a, bool b, int iterations) {
    const int n = 50, refractory = 2;
    std::vector<std::vector<int>> grid(n, std::vector<int>(n, 0));
    if (a)
        for (int y = 0; y < 5; ++y)
            for (int x = 0; x < 5; ++x) grid[y][x] = 1;
    if (b)
        for (int y = 45; y < 50; ++y)
            for (int x = 45; x < 50; ++x) grid[y][x] = 1;
    std::vector<uint32_t> excited_counts;
    for (int it = 0; it < iterations; ++it) {
        auto next = grid;
        uint32_t excited = 0;
        for (int y = 0; y < n; ++y) {
            for (int x = 0; x < n; ++x) {
                if (grid[y][x] == 1) {
                    next[y][x] = 2;
                } else if (grid[y][x] > 1) {
                    next[y][x] = grid[y][x] == refractory + 1 ? 0 : grid[y][x] + 1;
                } else {
                    bool fire = false;
                    for (int dy = -1; dy <= 1; ++dy)
                        for (int dx = -1; dx <= 1; ++dx) {
                            if (!dy && !dx) continue;
                            const int yy = y + dy, xx = x + dx;
                            if (yy >= 0 && yy < n && xx >= 0 && xx < n &&
                                grid[yy][xx] == 1)
                                fire = true;
                        }
                    if (fire) {
                        next[y][x] = 1;
                        ++excited;
                    }
                }
            }
        }
        grid = next;
        excited_counts.push_back(excited);
    }
    return excited_counts;
}

}  // namespace

TEST_CASE("material genotype validation lists every problem") {
    MaterialGenotype g = genotype_with(0, 1);
    CHECK_NOTHROW(g.validate());
    g.pins[2] = g.pins[1];
    g.levels[0] = 16;
    try {
        g.validate();
        FAIL("expected validation to throw");
    } catch (const std::invalid_argument& e) {
        const std::string msg = e.what();
        CHECK(msg.find("share pin") != std::string::npos);
        CHECK(msg.find("config level 0") != std::string::npos);
    }
}

TEST_CASE("material genotype hex round trip") {
    MaterialGenotype g = genotype_with(5, 17, {1, 15, 7, 0});
    CHECK(MaterialGenotype::from_hex(g.to_hex()) == g);
    CHECK(g.to_hex().size() == 20);
    CHECK_THROWS_AS((void)MaterialGenotype::from_hex("abc"),
                    std::invalid_argument);
}

TEST_CASE("materials regenerate identically from their seed") {
    const auto m1 = VirtualMaterial::from_seed(99);
    const auto m2 = VirtualMaterial::from_seed(99);
    const auto m3 = VirtualMaterial::from_seed(100);
    CHECK(m1.table_hash() == m2.table_hash());
    CHECK(m1.table_hash() != m3.table_hash());

    const MaterialGenotype g = genotype_with(3, 7);
    uint64_t c1 = 0, c2 = 0;
    for (int a = 0; a <= 1; ++a)
        for (int b = 0; b <= 1; ++b)
            CHECK(m1.evaluate(g, a, b, c1) == m2.evaluate(g, a, b, c2));
    CHECK(c1 == 4);
    CHECK(c2 == 4);
}

TEST_CASE("every evaluation bumps the counter by exactly one") {
    const auto m = VirtualMaterial::from_seed(1);
    const MaterialGenotype g = genotype_with(9, 30);
    uint64_t counter = 10;
    (void)m.evaluate(g, true, false, counter);
    CHECK(counter == 11);
    (void)m.evaluate(g, true, false, counter);
    CHECK(counter == 12);
}

TEST_CASE("planted pass-through node gives an exact identity response") {
    const auto m = VirtualMaterial::planted(123);
    const uint8_t node = 0;
    const uint8_t a_pin = m.neighbours(node)[0];
    REQUIRE(a_pin != node);
    const MaterialGenotype g = genotype_with(node, a_pin);
    uint64_t counter = 0;
    for (int a = 0; a <= 1; ++a)
        for (int b = 0; b <= 1; ++b)
            CHECK(m.evaluate(g, a != 0, b != 0, counter) == (a != 0));
}

TEST_CASE("planted OR node computes an exact OR of its inputs") {
    const auto m = VirtualMaterial::planted(123);
    const uint8_t node = VirtualMaterial::kPlantedPassThrough;  // first OR node
    const uint8_t a_pin = m.neighbours(node)[0];
    const uint8_t b_pin = m.neighbours(node)[1];
    REQUIRE(a_pin != b_pin);
    const MaterialGenotype g = genotype_with(node, a_pin, {0, 0, 0, 0}, b_pin);
    uint64_t counter = 0;
    for (int a = 0; a <= 1; ++a)
        for (int b = 0; b <= 1; ++b)
            CHECK(m.evaluate(g, a != 0, b != 0, counter) == (a != 0 || b != 0));
}

TEST_CASE("random material genotypes are valid and mutations stay valid") {
    rng::Stream stream(7);
    for (int rep = 0; rep < 50; ++rep) {
        MaterialGenotype g = random_material_genotype(stream);
        CHECK_NOTHROW(g.validate());
        mutate_material_genotype(g, 5, stream);
        CHECK_NOTHROW(g.validate());
    }
}

TEST_CASE("controller genotype basics") {
    rng::Stream s1(5), s2(5);
    const auto g1 = ControllerGenotype::random(s1);
    const auto g2 = ControllerGenotype::random(s2);
    CHECK(g1 == g2);
    CHECK(g1.to_hex().size() == 12800);

    auto g3 = g1;
    g3.flip_bit(512 * 42 + 300);
    CHECK(g3.table_bit(42, 300) != g1.table_bit(42, 300));
    CHECK(g3.table_bit(42, 299) == g1.table_bit(42, 299));
}

TEST_CASE("medium with no input stays quiet") {
    uint64_t counter = 0;
    const auto run = medium_run(ControllerGenotype::constant(false), false,
                                false, MediumParams{}, counter);
    CHECK(counter == 1);
    CHECK(run.activity_integral == 0);
    CHECK_FALSE(run.output);
}

TEST_CASE("total illumination suppresses all activity") {
    uint64_t counter = 0;
    const auto run = medium_run(ControllerGenotype::constant(true), true, true,
                                MediumParams{}, counter);
    CHECK(run.activity_integral == 0);
    CHECK_FALSE(run.output);
}

TEST_CASE("a dark controller lets the wave advance one Chebyshev ring per step") {
    uint64_t counter = 0;
    const MediumParams params;
    const auto run = medium_run(ControllerGenotype::constant(false), true,
                                false, params, counter);
    REQUIRE(run.excited_per_step.size() == 25);
    for (int t = 1; t <= 25; ++t)
        CHECK(run.excited_per_step[t - 1] == static_cast<uint32_t>(2 * t + 9));
    CHECK(run.activity_integral == 275);  // rings 21..25
    CHECK(run.output);                    // theta_out default sits below 275
}

TEST_CASE("dark-controller runs match the plain excitable-medium reference") {
    const MediumParams params;
    for (const auto& [a, b] : std::vector<std::pair<bool, bool>>{
             {true, false}, {false, true}, {true, true}}) {
        uint64_t counter = 0;
        const auto run = medium_run(ControllerGenotype::constant(false), a, b,
                                    params, counter);
        CHECK(run.excited_per_step == gh_oracle_excited(a, b, params.iterations));
    }
}

TEST_CASE("medium runs are deterministic") {
    rng::Stream s(77);
    const auto controller = ControllerGenotype::random(s);
    uint64_t c1 = 0, c2 = 0;
    const auto r1 = medium_run(controller, true, false, MediumParams{}, c1);
    const auto r2 = medium_run(controller, true, false, MediumParams{}, c2);
    CHECK(r1.activity_integral == r2.activity_integral);
    CHECK(r1.output == r2.output);
    CHECK(r1.excited_per_step == r2.excited_per_step);
}

TEST_CASE("medium parameter validation lists every problem") {
    MediumParams p;
    p.lattice = 47;   // not a multiple of block
    p.window = 30;    // exceeds iterations
    p.theta_out = 0;
    try {
        p.validate();
        FAIL("expected validation to throw");
    } catch (const std::invalid_argument& e) {
        const std::string msg = e.what();
        CHECK(msg.find("lattice") != std::string::npos);
        CHECK(msg.find("window") != std::string::npos);
        CHECK(msg.find("theta_out") != std::string::npos);
    }
}
