#pragma once

// Two-stage free energy minimization at fixed activation fraction:
//   1. adjust_x1: flip randomly chosen units of the over-represented state
//      until x1 is within tolerance of the target;
//   2. descend: swap a random A unit with a random B unit, recount, and keep
//      the swap only if the free energy strictly drops.
// run_trial chains generate -> adjust -> descend -> perturb -> adjust -> descend.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cvm/configuration.hpp"
#include "cvm/errors.hpp"
#include "cvm/lattice.hpp"
#include "cvm/rng.hpp"
#include "cvm/thermodynamics.hpp"

namespace cvm {

struct DescentParams {
    double x1_target = 0.35;
    /// Defaults to half a unit, 1 / (2N), when unset.
    std::optional<double> x1_tolerance;
    std::size_t max_swap_attempts = 150;
    std::size_t stall_limit = 50;
    EnthalpyForm form = EnthalpyForm::current_delta;
    TripletMode mode = TripletMode::horizontal;
    double h = 1.0;

    double tolerance_for(std::size_t units) const {
        return x1_tolerance.value_or(0.5 / static_cast<double>(units));
    }

    void validate() const {
        if (!(x1_target > 0.0 && x1_target < 1.0))
            throw InvalidArgument("x1 target must be in (0, 1)");
        if (x1_tolerance && !(*x1_tolerance > 0.0))
            throw InvalidArgument("x1 tolerance must be positive");
        if (max_swap_attempts == 0 || stall_limit == 0)
            throw InvalidArgument("descent limits must be positive");
        if (!(h > 0.0) || !std::isfinite(h)) throw InvalidArgument("h must be positive");
    }
};

struct TraceStep {
    std::size_t attempt;
    bool accepted;
    double free_energy;  // after the accept / revert decision
    double x1;           // recounted, after the decision
};

struct DescentTrace {
    double initial_free_energy = 0.0;
    double initial_x1 = 0.0;
    std::vector<TraceStep> steps;
    ConfigFractions fractions;
    ThermoState thermo;

    std::size_t accepted_count() const noexcept {
        std::size_t n = 0;
        for (const auto& s : steps) n += s.accepted;
        return n;
    }
};

/// Flip units of the over-represented state, chosen uniformly, until
/// |x1 - target| <= tolerance or no single flip can get closer.
/// Returns the number of flips.
inline std::size_t adjust_x1(Grid& g, double target, double tolerance, Rng& rng) {
    if (!(target >= 0.0 && target <= 1.0)) throw InvalidArgument("x1 target must be in [0, 1]");
    if (!(tolerance >= 0.0)) throw InvalidArgument("x1 tolerance must be non-negative");

    const double n = static_cast<double>(g.size());
    const double half_unit = 0.5 / n;
    const auto error = [&](std::size_t active) { return static_cast<double>(active) / n - target; };

    std::size_t active = g.count(State::A);
    if (std::fabs(error(active)) <= tolerance) return 0;

    const State surplus = error(active) > 0.0 ? State::A : State::B;
    std::vector<std::size_t> pool;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (g[i] == surplus) pool.push_back(i);

    std::size_t flips = 0;
    while (!pool.empty()) {
        const double err = std::fabs(error(active));
        if (err <= tolerance || err <= half_unit + 1e-15) break;
        const std::size_t pick = rng.below(pool.size());
        g.flip(g.dims().position(pool[pick]));
        pool[pick] = pool.back();
        pool.pop_back();
        active = surplus == State::A ? active - 1 : active + 1;
        ++flips;
    }
    return flips;
}

/// Swap descent. The grid is updated in place; A-count never changes.
inline DescentTrace descend(Grid& g, const DescentParams& p, Rng& rng) {
    p.validate();
    std::vector<std::size_t> active;
    std::vector<std::size_t> inactive;
    for (std::size_t i = 0; i < g.size(); ++i) (g[i] == State::A ? active : inactive).push_back(i);
    if (active.empty() || inactive.empty())
        throw DegenerateComposition("descent needs at least one A unit and one B unit");

    const auto evaluate_grid = [&](ConfigFractions& f) {
        f = fractions_of(g, p.mode);
        return evaluate(f, p.h, p.form);
    };

    DescentTrace trace;
    ConfigFractions current_f;
    ThermoState current = evaluate_grid(current_f);
    trace.initial_free_energy = current.free_energy;
    trace.initial_x1 = current_f.x[0];
    trace.steps.reserve(p.max_swap_attempts);

    std::size_t stalled = 0;
    for (std::size_t attempt = 0; attempt < p.max_swap_attempts && stalled < p.stall_limit;
         ++attempt) {
        const std::size_t ia = rng.below(active.size());
        const std::size_t ib = rng.below(inactive.size());
        const Position pa = g.dims().position(active[ia]);
        const Position pb = g.dims().position(inactive[ib]);
        g.swap_pair(pa, pb);

        ConfigFractions trial_f;
        const ThermoState trial = evaluate_grid(trial_f);
        if (trial.free_energy < current.free_energy) {
            current = trial;
            current_f = trial_f;
            std::swap(active[ia], inactive[ib]);
            stalled = 0;
            trace.steps.push_back({attempt, true, current.free_energy, trial_f.x[0]});
        } else {
            g.swap_pair(pb, pa);
            ++stalled;
            trace.steps.push_back({attempt, false, current.free_energy, trial_f.x[0]});
        }
    }
    trace.fractions = current_f;
    trace.thermo = current;
    return trace;
}

/// Toggle round(fraction * N) distinct units chosen uniformly without
/// replacement. Returns how many were toggled (0 means the call was a no-op).
inline std::size_t perturb(Grid& g, double fraction, Rng& rng) {
    if (!(fraction > 0.0 && fraction < 1.0))
        throw InvalidArgument("perturbation fraction must be in (0, 1)");
    const auto k = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(g.size())));
    std::vector<std::size_t> order(g.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + rng.below(order.size() - i);
        std::swap(order[i], order[j]);
        g.flip(g.dims().position(order[i]));
    }
    return k;
}

struct PhaseRecord {
    ConfigFractions fractions;
    ThermoState thermo;
    DescentTrace trace;
    std::size_t adjust_flips = 0;
};

struct TrialRecord {
    PhaseRecord pre;
    PhaseRecord post;
    std::size_t perturbed_units = 0;
    Grid final_grid;
};

inline TrialRecord run_trial(std::size_t rows, std::size_t cols, const DescentParams& p,
                             double perturb_fraction, Rng& rng) {
    p.validate();
    Grid g = generate_random(rows, cols, p.x1_target, rng);
    const double tol = p.tolerance_for(g.size());

    const auto minimize = [&](PhaseRecord& rec) {
        rec.adjust_flips = adjust_x1(g, p.x1_target, tol, rng);
        rec.trace = descend(g, p, rng);
        rec.fractions = rec.trace.fractions;
        rec.thermo = rec.trace.thermo;
    };

    PhaseRecord pre;
    minimize(pre);
    const std::size_t toggled = perturb(g, perturb_fraction, rng);
    PhaseRecord post;
    minimize(post);
    return TrialRecord{std::move(pre), std::move(post), toggled, std::move(g)};
}

}  // namespace cvm
