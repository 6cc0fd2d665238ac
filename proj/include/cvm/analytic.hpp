#pragma once

// Closed-form equilibrium z3(h) for the equiprobable case (x1 = x2 = 0.5).
//
//   previous enthalpy (eps1 * 2 y2):
//     z3 = (h^2 - 3)(h^2 + 1) / (8 [h^4 - 6 h^2 + 1])
//   current enthalpy (eps1 * (2 y2 - y1 - y3)):
//     z3 = (h^4 - 3)(h^4 + 1) / (8 [h^8 - 6 h^4 + 1])
//
// The current form is the previous one evaluated at h^2. Denominator roots are
// h^2 = 3 -+ 2 sqrt(2) (previous) and h^4 = 3 -+ 2 sqrt(2) (current), i.e.
// h = sqrt(2) -+ 1 and h = sqrt(sqrt(2) -+ 1) ~ 0.6436, 1.5538.

#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include "cvm/errors.hpp"

namespace cvm::analytic {

/// A point is divergent when the raw denominator is below this magnitude...
inline constexpr double kDenominatorTolerance = 1e-9;
/// ...or when h lies within this distance of a denominator root.
inline constexpr double kRootWindow = 1e-3;

/// nullopt marks a divergent point.
using Value = std::optional<double>;

inline const std::array<double, 2>& previous_roots() {
    static const std::array<double, 2> roots{std::sqrt(2.0) - 1.0, std::sqrt(2.0) + 1.0};
    return roots;
}

inline const std::array<double, 2>& current_roots() {
    static const std::array<double, 2> roots{std::sqrt(std::sqrt(2.0) - 1.0),
                                             std::sqrt(std::sqrt(2.0) + 1.0)};
    return roots;
}

namespace detail {

// z3 as a function of u = h^2 (previous) or u = h^4 (current).
inline Value z3_of(double u, double h, const std::array<double, 2>& roots) {
    const double den = u * u - 6.0 * u + 1.0;
    if (std::fabs(den) < kDenominatorTolerance) return std::nullopt;
    for (double r : roots)
        if (std::fabs(h - r) < kRootWindow) return std::nullopt;
    return (u - 3.0) * (u + 1.0) / (8.0 * den);
}

inline void require_positive(double h) {
    if (!(h > 0.0) || !std::isfinite(h)) throw InvalidArgument("h must be positive");
}

}  // namespace detail

inline Value z3_previous(double h) {
    detail::require_positive(h);
    return detail::z3_of(h * h, h, previous_roots());
}

inline Value z3_current(double h) {
    detail::require_positive(h);
    const double h2 = h * h;
    return detail::z3_of(h2 * h2, h, current_roots());
}

struct AnalyticPoint {
    double h;
    Value z3_current;   // "z3Analyt1"
    Value z3_previous;  // "z3Analyt2"
};

/// Inclusive sweep h_k = lo + k * step, k = 0..n-1, with hi included despite
/// accumulated rounding. Values are rounded to 12 decimals so 1.0 stays 1.0.
inline std::vector<double> inclusive_range(double lo, double hi, double step) {
    if (!(lo > 0.0) || !(hi >= lo) || !(step > 0.0) || !std::isfinite(hi) || !std::isfinite(step))
        throw InvalidArgument("h range requires 0 < min <= max and step > 0");
    const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t k = 0; k < n; ++k)
        out.push_back(std::round((lo + double(k) * step) * 1e12) / 1e12);
    return out;
}

inline std::vector<AnalyticPoint> analytic_table(double h_min, double h_max, double h_step) {
    std::vector<AnalyticPoint> rows;
    for (double h : inclusive_range(h_min, h_max, h_step))
        rows.push_back({h, z3_current(h), z3_previous(h)});
    return rows;
}

}  // namespace cvm::analytic
