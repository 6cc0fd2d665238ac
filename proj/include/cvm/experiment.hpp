#pragma once

// h-sweeps with trial averaging. Each (h, trial) cell draws its random stream
// from derive_seed(seed, h_index, trial_index) and is independent of every
// other cell, so cells run concurrently and the averages are assembled in
// (h, trial) order afterwards.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "cvm/analytic.hpp"
#include "cvm/configuration.hpp"
#include "cvm/minimizer.hpp"
#include "cvm/rng.hpp"
#include "cvm/thermodynamics.hpp"

namespace cvm {

struct RunConfig {
    std::size_t rows = 16;
    std::size_t cols = 16;
    double x1 = 0.35;
    double h_min = 0.8;
    double h_max = 1.8;
    double h_step = 0.1;
    std::size_t trials = 20;
    double perturb_fraction = 0.1;
    std::uint64_t seed = 1;
    TripletMode mode = TripletMode::horizontal;
    EnthalpyForm form = EnthalpyForm::current_delta;
    std::size_t max_swaps = 150;
    std::size_t stall_limit = 50;
    std::optional<double> x1_tolerance;
    /// Worker threads; 0 picks the hardware concurrency. Never affects results.
    std::size_t threads = 0;

    DescentParams descent_params(double h) const {
        DescentParams p;
        p.x1_target = x1;
        p.x1_tolerance = x1_tolerance;
        p.max_swap_attempts = max_swaps;
        p.stall_limit = stall_limit;
        p.form = form;
        p.mode = mode;
        p.h = h;
        return p;
    }

    std::vector<double> h_values() const { return analytic::inclusive_range(h_min, h_max, h_step); }

    void validate() const {
        Dims(rows, cols);
        if (trials < 1) throw InvalidArgument("trials must be at least 1");
        if (!(perturb_fraction > 0.0 && perturb_fraction < 1.0))
            throw InvalidArgument("perturbation fraction must be in (0, 1)");
        h_values();
        descent_params(h_min).validate();
    }
};

enum class Phase { pre_perturb, post_perturb };

inline std::string_view to_string(Phase p) noexcept {
    return p == Phase::pre_perturb ? "pre_perturb" : "post_perturb";
}

/// Trial-averaged minimum for one h value and phase.
struct SweepRow {
    double h = 0.0;
    Phase phase = Phase::pre_perturb;
    std::size_t trials = 0;
    ConfigFractions mean;
    double delta = 0.0;
    double enthalpy = 0.0;
    double neg_entropy = 0.0;
    double free_energy = 0.0;
};

struct TrialSummary {
    ConfigFractions fractions;
    ThermoState thermo;
};

inline SweepRow average(double h, Phase phase, const std::vector<TrialSummary>& trials) {
    SweepRow row;
    row.h = h;
    row.phase = phase;
    row.trials = trials.size();
    const double n = static_cast<double>(trials.size());
    for (const auto& t : trials) {
        for (std::size_t i = 0; i < 2; ++i) row.mean.x[i] += t.fractions.x[i];
        for (std::size_t i = 0; i < 3; ++i) {
            row.mean.y[i] += t.fractions.y[i];
            row.mean.w[i] += t.fractions.w[i];
        }
        for (std::size_t i = 0; i < 6; ++i) row.mean.z[i] += t.fractions.z[i];
        row.delta += t.thermo.delta;
        row.enthalpy += t.thermo.enthalpy;
        row.neg_entropy += t.thermo.neg_entropy;
        row.free_energy += t.thermo.free_energy;
    }
    for (auto& v : row.mean.x) v /= n;
    for (auto& v : row.mean.y) v /= n;
    for (auto& v : row.mean.w) v /= n;
    for (auto& v : row.mean.z) v /= n;
    row.delta /= n;
    row.enthalpy /= n;
    row.neg_entropy /= n;
    row.free_energy /= n;
    return row;
}

/// Called once per finished trial. Calls are serialized but arrive in
/// completion order, not (h, trial) order.
using TrialObserver =
    std::function<void(std::size_t h_index, std::size_t trial_index, const TrialRecord&)>;

/// Rows ordered by h, then pre_perturb before post_perturb.
inline std::vector<SweepRow> run_sweep(const RunConfig& cfg, const TrialObserver& observer = {}) {
    cfg.validate();
    const std::vector<double> hs = cfg.h_values();
    const std::size_t cells = hs.size() * cfg.trials;
    std::vector<TrialSummary> pre(cells);
    std::vector<TrialSummary> post(cells);

    std::atomic<std::size_t> next{0};
    std::mutex observer_mutex;
    std::exception_ptr failure;
    std::mutex failure_mutex;

    const auto worker = [&] {
        for (std::size_t cell = next++; cell < cells; cell = next++) {
            const std::size_t hi = cell / cfg.trials;
            const std::size_t ti = cell % cfg.trials;
            try {
                Rng rng(derive_seed(cfg.seed, hi, ti));
                const TrialRecord rec = run_trial(cfg.rows, cfg.cols, cfg.descent_params(hs[hi]),
                                                  cfg.perturb_fraction, rng);
                pre[cell] = {rec.pre.fractions, rec.pre.thermo};
                post[cell] = {rec.post.fractions, rec.post.thermo};
                if (observer) {
                    std::lock_guard lock(observer_mutex);
                    observer(hi, ti, rec);
                }
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = cells;
            }
        }
    };

    std::size_t n_threads = cfg.threads ? cfg.threads : std::thread::hardware_concurrency();
    n_threads = std::clamp<std::size_t>(n_threads, 1, cells);
    {
        std::vector<std::jthread> pool;
        for (std::size_t i = 1; i < n_threads; ++i) pool.emplace_back(worker);
        worker();
    }
    if (failure) std::rethrow_exception(failure);

    std::vector<SweepRow> rows;
    rows.reserve(2 * hs.size());
    for (std::size_t hi = 0; hi < hs.size(); ++hi) {
        const auto begin = static_cast<std::ptrdiff_t>(hi * cfg.trials);
        const auto end = begin + static_cast<std::ptrdiff_t>(cfg.trials);
        rows.push_back(average(hs[hi], Phase::pre_perturb,
                               {pre.begin() + begin, pre.begin() + end}));
        rows.push_back(average(hs[hi], Phase::post_perturb,
                               {post.begin() + begin, post.begin() + end}));
    }
    return rows;
}

}  // namespace cvm
