#pragma once

#include <cmath>
#include <string>
#include <string_view>

#include "cvm/configuration.hpp"
#include "cvm/errors.hpp"

namespace cvm {

/// Interaction enthalpy formulation.
///   previous_2y2:  H = eps1 * 2 y2            = eps1 (z2 + z3 + z4 + z5)
///   current_delta: H = eps1 (2 y2 - y1 - y3)  = eps1 (z3 + z4 - z1 - z6)
enum class EnthalpyForm { previous_2y2, current_delta };

inline std::string_view to_string(EnthalpyForm f) noexcept {
    return f == EnthalpyForm::previous_2y2 ? "2y2" : "delta";
}

inline EnthalpyForm parse_enthalpy_form(std::string_view s) {
    if (s == "2y2") return EnthalpyForm::previous_2y2;
    if (s == "delta") return EnthalpyForm::current_delta;
    throw InvalidArgument("unknown enthalpy form '" + std::string(s) + "'");
}

/// eps1 = kHScale * ln h (k_B T = 1). h = 1 is the no-interaction point;
/// h > 1 favors like-near-like. With this scale the free energy minimum at
/// x1 = 0.5 coincides with the closed-form z3(h) of analytic.hpp for both
/// enthalpy forms.
inline constexpr double kHScale = 4.0;

inline double eps_from_h(double h) {
    if (!(h > 0.0) || !std::isfinite(h)) throw InvalidArgument("h must be positive");
    return kHScale * std::log(h);
}

inline double h_from_eps(double eps1) { return std::exp(eps1 / kHScale); }

/// v ln v with 0 ln 0 = 0.
inline double lf(double v) noexcept { return v > 0.0 ? v * std::log(v) : 0.0; }

inline double enthalpy(const ConfigFractions& f, double eps1, EnthalpyForm form) noexcept {
    if (form == EnthalpyForm::previous_2y2) return eps1 * 2.0 * f.y[1];
    return eps1 * delta(f);
}

/// Same enthalpy written over the triplet fractions. Agrees with enthalpy()
/// on any real grid counted in horizontal or full mode.
inline double enthalpy_from_triplets(const ConfigFractions& f, double eps1,
                                     EnthalpyForm form) noexcept {
    const auto& z = f.z;
    if (form == EnthalpyForm::previous_2y2) return eps1 * (z[1] + z[2] + z[3] + z[4]);
    return eps1 * (z[2] + z[3] - z[0] - z[5]);
}

/// Configurational entropy per unit:
///   S = 2 sum beta_i Lf(y_i) + sum beta_i Lf(w_i) - sum Lf(x_i) - 2 sum gamma_i Lf(z_i)
/// ln 2 for independent equiprobable units, 0 for fully ordered grids.
inline double entropy(const ConfigFractions& f) {
    const auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
    double s = 0.0;
    for (std::size_t i = 0; i < 2; ++i) {
        if (!in_unit(f.x[i])) throw InvalidArgument("x fraction outside [0, 1]");
        s -= lf(f.x[i]);
    }
    for (std::size_t i = 0; i < 3; ++i) {
        if (!in_unit(f.y[i]) || !in_unit(f.w[i]))
            throw InvalidArgument("pair fraction outside [0, 1]");
        s += 2.0 * kPairDegeneracy[i] * lf(f.y[i]);
        s += kPairDegeneracy[i] * lf(f.w[i]);
    }
    for (std::size_t i = 0; i < 6; ++i) {
        if (!in_unit(f.z[i])) throw InvalidArgument("triplet fraction outside [0, 1]");
        s -= 2.0 * kTripletDegeneracy[i] * lf(f.z[i]);
    }
    return s;
}

struct ThermoState {
    double h = 1.0;
    double eps1 = 0.0;
    EnthalpyForm form = EnthalpyForm::current_delta;
    double enthalpy = 0.0;
    double neg_entropy = 0.0;
    double free_energy = 0.0;  // enthalpy - entropy, per unit
    double delta = 0.0;

    double entropy() const noexcept { return -neg_entropy; }
};

inline ThermoState evaluate(const ConfigFractions& f, double h, EnthalpyForm form) {
    ThermoState t;
    t.h = h;
    t.eps1 = eps_from_h(h);
    t.form = form;
    t.enthalpy = enthalpy(f, t.eps1, form);
    const double s = entropy(f);
    t.neg_entropy = -s;
    t.free_energy = t.enthalpy - s;
    t.delta = delta(f);
    return t;
}

}  // namespace cvm
