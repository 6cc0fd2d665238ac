#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include "cvm/errors.hpp"
#include "cvm/lattice.hpp"

namespace cvm {

/// Which zigzag triplets are tallied. `horizontal` walks only row-pair
/// zigzags (the reference code's convention); `full` adds the column-pair ones.
enum class TripletMode { horizontal, full };

inline std::string_view to_string(TripletMode m) noexcept {
    return m == TripletMode::horizontal ? "horizontal" : "full";
}

inline TripletMode parse_triplet_mode(std::string_view s) {
    if (s == "horizontal") return TripletMode::horizontal;
    if (s == "full") return TripletMode::full;
    throw InvalidArgument("unknown triplet mode '" + std::string(s) + "'");
}

/// Degeneracy factors: pairs (AA, AB, BB) and triplets z1..z6.
inline constexpr std::array<int, 3> kPairDegeneracy{1, 2, 1};
inline constexpr std::array<int, 6> kTripletDegeneracy{1, 2, 1, 1, 2, 1};

/// Raw tallies. Mixed classes (y2, w2, z2, z5) hold undirected counts.
struct ConfigCounts {
    std::array<std::int64_t, 2> x{};  // A, B
    std::array<std::int64_t, 3> y{};  // nearest pairs AA, AB, BB
    std::array<std::int64_t, 3> w{};  // next-nearest pairs AA, AB, BB
    std::array<std::int64_t, 6> z{};  // AAA, AAB|BAA, ABA, BAB, ABB|BBA, BBB
    std::int64_t pair_total = 0;
    std::int64_t triplet_total = 0;

    friend bool operator==(const ConfigCounts&, const ConfigCounts&) = default;
};

/// Degeneracy-adjusted fractions: x1+x2 = 1 and sum(beta*y) = sum(beta*w) = sum(gamma*z) = 1.
struct ConfigFractions {
    std::array<double, 2> x{};
    std::array<double, 3> y{};
    std::array<double, 3> w{};
    std::array<double, 6> z{};

    friend bool operator==(const ConfigFractions&, const ConfigFractions&) = default;
};

/// Pair class index: 0 = AA, 1 = mixed, 2 = BB.
constexpr std::size_t pair_class(State a, State b) noexcept {
    return static_cast<std::size_t>(2 - static_cast<int>(a) - static_cast<int>(b));
}

/// Triplet class index for the end-apex-end pattern (0-based z1..z6).
constexpr std::size_t triplet_class(State first, State apex, State last) noexcept {
    const int ends = static_cast<int>(first) + static_cast<int>(last);
    if (apex == State::A) return ends == 2 ? 0 : ends == 1 ? 1 : 3;
    return ends == 2 ? 2 : ends == 1 ? 4 : 5;
}

/// Tally every wrapped slot of the grid. pair_total is 2N; triplet_total is
/// 2N in horizontal mode and 4N in full mode.
inline ConfigCounts count_configs(const Grid& g, TripletMode mode = TripletMode::horizontal) {
    const Dims& d = g.dims();
    ConfigCounts c;
    const auto state = [&](Position p) { return g[d.index(p)]; };

    for (std::size_t r = 0; r < d.rows(); ++r) {
        const auto diag = geometry::diagonal_columns(r);
        for (std::size_t col = 0; col < d.cols(); ++col) {
            const Position p{r, col};
            const State s = state(p);
            ++c.x[s == State::A ? 0 : 1];

            // Each nearest pair once, from its upper member.
            ++c.y[pair_class(s, state(d.offset(p, 1, diag[0])))];
            ++c.y[pair_class(s, state(d.offset(p, 1, diag[1])))];

            // Each next-nearest pair once, from its left / upper member.
            ++c.w[pair_class(s, state(d.offset(p, 0, 1)))];
            ++c.w[pair_class(s, state(d.offset(p, 2, 0)))];

            for (const Triplet& t : geometry::horizontal_triplets_from(d, p))
                ++c.z[triplet_class(s, state(t.apex), state(t.last))];
            if (mode == TripletMode::full)
                for (const Triplet& t : geometry::vertical_triplets_from(d, p))
                    ++c.z[triplet_class(s, state(t.apex), state(t.last))];
        }
    }
    const auto n = static_cast<std::int64_t>(d.size());
    c.pair_total = 2 * n;
    c.triplet_total = mode == TripletMode::full ? 4 * n : 2 * n;
    return c;
}

inline ConfigFractions to_fractions(const ConfigCounts& c) {
    const std::int64_t units = c.x[0] + c.x[1];
    if (units <= 0 || c.pair_total <= 0 || c.triplet_total <= 0)
        throw InvalidArgument("configuration counts have a zero total");

    ConfigFractions f;
    for (std::size_t i = 0; i < 2; ++i) f.x[i] = double(c.x[i]) / double(units);
    const double pairs = double(c.pair_total);
    for (std::size_t i = 0; i < 3; ++i) {
        f.y[i] = double(c.y[i]) / (kPairDegeneracy[i] * pairs);
        f.w[i] = double(c.w[i]) / (kPairDegeneracy[i] * pairs);
    }
    const double triplets = double(c.triplet_total);
    for (std::size_t i = 0; i < 6; ++i) f.z[i] = double(c.z[i]) / (kTripletDegeneracy[i] * triplets);
    return f;
}

inline ConfigFractions fractions_of(const Grid& g, TripletMode mode = TripletMode::horizontal) {
    return to_fractions(count_configs(g, mode));
}

/// 2*y2 - y1 - y3: positive for alternation-rich grids, negative for clustered ones.
inline double delta(const ConfigFractions& f) noexcept { return 2.0 * f.y[1] - f.y[0] - f.y[2]; }

struct NormalizationSums {
    double x;
    double y;
    double w;
    double z;
};

inline NormalizationSums normalization_sums(const ConfigFractions& f) noexcept {
    NormalizationSums s{f.x[0] + f.x[1], 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < 3; ++i) {
        s.y += kPairDegeneracy[i] * f.y[i];
        s.w += kPairDegeneracy[i] * f.w[i];
    }
    for (std::size_t i = 0; i < 6; ++i) s.z += kTripletDegeneracy[i] * f.z[i];
    return s;
}

/// Residuals of the exact per-grid pair/triplet identities:
///   y1 = z1 + z2,  y3 = z5 + z6,  2 y2 = z2 + z3 + z4 + z5.
struct IdentityResiduals {
    double like_a;
    double like_b;
    double mixed;

    double max_abs() const noexcept {
        return std::fmax(std::fabs(like_a), std::fmax(std::fabs(like_b), std::fabs(mixed)));
    }
};

inline IdentityResiduals identity_residuals(const ConfigFractions& f) noexcept {
    const auto& y = f.y;
    const auto& z = f.z;
    return {y[0] - (z[0] + z[1]), y[2] - (z[4] + z[5]), 2.0 * y[1] - (z[1] + z[2] + z[3] + z[4])};
}

}  // namespace cvm
