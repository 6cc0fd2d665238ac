#include <gtest/gtest.h>

#include <array>
#include <cstdint>

#include "cvm/configuration.hpp"
#include "cvm/oracle.hpp"
#include "test_support.hpp"

using namespace cvm;

namespace {

using Counts3 = std::array<std::int64_t, 3>;
using Counts6 = std::array<std::int64_t, 6>;

void expect_normalized(const ConfigFractions& f) {
    const auto s = normalization_sums(f);
    EXPECT_NEAR(s.x, 1.0, 1e-12);
    EXPECT_NEAR(s.y, 1.0, 1e-12);
    EXPECT_NEAR(s.w, 1.0, 1e-12);
    EXPECT_NEAR(s.z, 1.0, 1e-12);
    for (double v : f.y) EXPECT_TRUE(v >= 0.0 && v <= 1.0);
    for (double v : f.w) EXPECT_TRUE(v >= 0.0 && v <= 1.0);
    for (double v : f.z) EXPECT_TRUE(v >= 0.0 && v <= 1.0);
}

}  // namespace

TEST(TripletClass, PatternMap) {
    const State A = State::A, B = State::B;
    EXPECT_EQ(triplet_class(A, A, A), 0u);
    EXPECT_EQ(triplet_class(A, A, B), 1u);
    EXPECT_EQ(triplet_class(B, A, A), 1u);
    EXPECT_EQ(triplet_class(A, B, A), 2u);
    EXPECT_EQ(triplet_class(B, A, B), 3u);
    EXPECT_EQ(triplet_class(A, B, B), 4u);
    EXPECT_EQ(triplet_class(B, B, A), 4u);
    EXPECT_EQ(triplet_class(B, B, B), 5u);
}

TEST(CountConfigs, AllA) {
    const ConfigCounts c = count_configs(Grid::filled(4, 4, State::A));
    EXPECT_EQ(c.x, (std::array<std::int64_t, 2>{16, 0}));
    EXPECT_EQ(c.y, (Counts3{32, 0, 0}));
    EXPECT_EQ(c.w, (Counts3{32, 0, 0}));
    EXPECT_EQ(c.z, (Counts6{32, 0, 0, 0, 0, 0}));
    EXPECT_EQ(c.pair_total, 32);
    EXPECT_EQ(c.triplet_total, 32);

    const ConfigFractions f = to_fractions(c);
    EXPECT_EQ(f.x, (std::array<double, 2>{1, 0}));
    EXPECT_EQ(f.y, (std::array<double, 3>{1, 0, 0}));
    EXPECT_EQ(f.w, (std::array<double, 3>{1, 0, 0}));
    EXPECT_EQ(f.z, (std::array<double, 6>{1, 0, 0, 0, 0, 0}));
    EXPECT_DOUBLE_EQ(delta(f), -1.0);
}

TEST(CountConfigs, AllB) {
    const ConfigCounts c = oracle::brute_force_count(Grid::filled(4, 4, State::B));
    EXPECT_EQ(c.z, (Counts6{0, 0, 0, 0, 0, 32}));
    EXPECT_EQ(count_configs(Grid::filled(4, 4, State::B)), c);
}

// Hand enumeration on the 4x4 wrapped lattice with rows A, B, A, B:
// every diagonal contact joins an A row to a B row; same-row and
// two-rows-apart contacts join like units; triplet ends share a row and the
// apex sits in the other row (ABA from A rows, BAB from B rows).
TEST(CountConfigs, RowAlternating) {
    const Grid g = test::row_alternating(4, 4);
    const ConfigCounts c = count_configs(g);
    EXPECT_EQ(c.x, (std::array<std::int64_t, 2>{8, 8}));
    EXPECT_EQ(c.y, (Counts3{0, 32, 0}));
    EXPECT_EQ(c.w, (Counts3{16, 0, 16}));
    EXPECT_EQ(c.z, (Counts6{0, 0, 16, 16, 0, 0}));

    const ConfigFractions f = to_fractions(c);
    EXPECT_EQ(f.y, (std::array<double, 3>{0, 0.5, 0}));
    EXPECT_EQ(f.w, (std::array<double, 3>{0.5, 0, 0.5}));
    EXPECT_EQ(f.z, (std::array<double, 6>{0, 0, 0.5, 0.5, 0, 0}));
    EXPECT_DOUBLE_EQ(delta(f), 1.0);
    expect_normalized(f);
}

// Single A at (0,0) of a 4x4 B grid: its 4 nearest and 4 next-nearest slots
// are mixed; it is an end of 4 horizontal triplets (A-B-B) and the apex of
// 2 (B-A-B); the other 26 of 32 triplets are B-B-B.
TEST(CountConfigs, SingleActiveUnit) {
    Grid g = Grid::filled(4, 4, State::B);
    g.flip(0, 0);
    const ConfigCounts c = count_configs(g);
    EXPECT_EQ(c.x, (std::array<std::int64_t, 2>{1, 15}));
    EXPECT_EQ(c.y, (Counts3{0, 4, 28}));
    EXPECT_EQ(c.w, (Counts3{0, 4, 28}));
    EXPECT_EQ(c.z, (Counts6{0, 0, 0, 2, 4, 26}));
    EXPECT_EQ(oracle::brute_force_count(g), c);

    // Full mode adds the vertical zigzags: end of 4 more, apex of 2 more.
    const ConfigCounts full = count_configs(g, TripletMode::full);
    EXPECT_EQ(full.z, (Counts6{0, 0, 0, 4, 8, 52}));
    EXPECT_EQ(full.triplet_total, 64);
}

TEST(CountConfigs, MatchesBruteForceOracle) {
    Rng rng(2024);
    for (int i = 0; i < 100; ++i) {
        const Grid g = generate_random(6, 6, rng.uniform(), rng);
        EXPECT_EQ(count_configs(g, TripletMode::horizontal),
                  oracle::brute_force_count(g, TripletMode::horizontal));
        EXPECT_EQ(count_configs(g, TripletMode::full), oracle::brute_force_count(g, TripletMode::full));
    }
    for (std::size_t rows : {4, 6, 8})
        for (std::size_t cols : {4, 5, 6, 7, 8})
            for (int i = 0; i < 4; ++i) {
                const Grid g = generate_random(rows, cols, rng.uniform(), rng);
                for (auto mode : {TripletMode::horizontal, TripletMode::full})
                    EXPECT_EQ(count_configs(g, mode), oracle::brute_force_count(g, mode))
                        << rows << "x" << cols;
            }
}

TEST(CountConfigs, OracleSizeGuard) {
    EXPECT_THROW(oracle::brute_force_count(Grid::filled(66, 64, State::A)), InvalidArgument);
}

TEST(CountConfigs, InvariantsOnRandomGrids) {
    Rng rng(77);
    for (int i = 0; i < 60; ++i) {
        const std::size_t rows = 4 + 2 * rng.below(7);
        const std::size_t cols = 4 + rng.below(13);
        const Grid g = generate_random(rows, cols, rng.uniform(), rng);
        for (auto mode : {TripletMode::horizontal, TripletMode::full}) {
            const ConfigCounts c = count_configs(g, mode);
            const auto n = static_cast<std::int64_t>(g.size());
            EXPECT_EQ(c.x[0] + c.x[1], n);
            EXPECT_EQ(c.y[0] + c.y[1] + c.y[2], 2 * n);
            EXPECT_EQ(c.w[0] + c.w[1] + c.w[2], 2 * n);
            std::int64_t zsum = 0;
            for (auto v : c.z) zsum += v;
            EXPECT_EQ(zsum, mode == TripletMode::full ? 4 * n : 2 * n);

            const ConfigFractions f = to_fractions(c);
            expect_normalized(f);
            EXPECT_LE(identity_residuals(f).max_abs(), 1e-12);
            EXPECT_EQ(count_configs(g, mode), c);
        }
    }
}

TEST(ToFractions, ZeroTotalsThrow) {
    EXPECT_THROW(to_fractions(ConfigCounts{}), InvalidArgument);
}

TEST(ToFractions, EquiprobableEnsembleMean) {
    Rng rng(5);
    std::array<double, 6> mean{};
    const int n = 200;
    for (int i = 0; i < n; ++i) {
        const ConfigFractions f = fractions_of(generate_random(16, 16, 0.5, rng));
        for (std::size_t k = 0; k < 6; ++k) mean[k] += f.z[k] / n;
    }
    for (double v : mean) EXPECT_NEAR(v, 0.125, 0.02);
}

TEST(Delta, RandomGridAtX1Of035) {
    // 2 * 0.2275 - 0.1225 - 0.4225 = -0.090 for independent units.
    Rng rng(11);
    double mean = 0.0;
    const int n = 200;
    for (int i = 0; i < n; ++i) mean += delta(fractions_of(generate_random(16, 16, 0.35, rng))) / n;
    EXPECT_NEAR(mean, -0.090, 0.01);
}
