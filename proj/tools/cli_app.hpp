#pragma once

// Command-line front end. Kept in a header so the test suite can drive it
// in-process with captured streams.
//
// Exit codes: 0 success, 2 usage/config error, 3 I/O error, 4 validation failure.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cvm/cvm.hpp"

namespace cvm::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kIo = 3, kValidation = 4 };

struct IoError : Error {
    using Error::Error;
};

struct Options {
    RunConfig run;
    std::string triplet_mode = "horizontal";
    std::string enthalpy_form = "delta";
    double x1_tolerance = 0.0;
    double h = 1.0;
    std::string out;
    std::string svg;
    std::string grid_file;
    std::string sweep_csv;
    std::string sizes = "4x4,6x6,8x8";
    bool minimize = false;
    bool trials_set = false;
};

struct Size {
    std::size_t rows;
    std::size_t cols;
};

inline std::vector<Size> parse_sizes(const std::string& text) {
    std::vector<Size> sizes;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const auto x = item.find('x');
        std::size_t r = 0, c = 0;
        if (x == std::string::npos || !detail::parse_count(item.substr(0, x), r) ||
            !detail::parse_count(item.substr(x + 1), c))
            throw InvalidArgument("bad size '" + item + "', expected ROWSxCOLS");
        Dims(r, c);
        sizes.push_back({r, c});
    }
    if (sizes.empty()) throw InvalidArgument("size list is empty");
    return sizes;
}

/// Output file if a path was given, otherwise the fallback stream.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : out_(&fallback) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw IoError("cannot open '" + path + "' for writing");
            out_ = &file_;
        }
    }
    std::ostream& stream() { return *out_; }
    void finish() {
        out_->flush();
        if (!*out_) throw IoError("write failed");
    }

private:
    std::ofstream file_;
    std::ostream* out_;
};

inline std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    return in;
}

inline void finalize(Options& o) {
    o.run.mode = parse_triplet_mode(o.triplet_mode);
    o.run.form = parse_enthalpy_form(o.enthalpy_form);
    if (o.x1_tolerance > 0.0) o.run.x1_tolerance = o.x1_tolerance;
}

inline int cmd_sweep(const Options& o, std::ostream& out) {
    const auto rows = run_sweep(o.run);
    Sink csv(o.out, out);
    report::write_sweep_csv(rows, csv.stream());
    csv.finish();
    if (!o.svg.empty()) {
        Sink svg(o.svg, out);
        report::write_sweep_svg(rows, svg.stream());
        svg.finish();
    }
    return kOk;
}

inline int cmd_analytic(const Options& o, std::ostream& out) {
    const auto points = analytic::analytic_table(o.run.h_min, o.run.h_max, o.run.h_step);
    std::optional<std::vector<std::pair<double, double>>> experimental;
    if (!o.sweep_csv.empty()) {
        auto in = open_input(o.sweep_csv);
        experimental = report::experimental_z3(report::read_csv(in));
    }
    Sink csv(o.out, out);
    report::write_analytic_csv(points, csv.stream(), experimental ? &*experimental : nullptr);
    csv.finish();
    return kOk;
}

inline int cmd_count(const Options& o, std::ostream& out) {
    auto in = open_input(o.grid_file);
    const Grid g = load_grid(in);
    const ConfigCounts c = count_configs(g, o.run.mode);
    const ConfigFractions f = to_fractions(c);
    const ThermoState t = evaluate(f, o.h, o.run.form);
    const auto fmt = [](double v) { return report::fmt(v); };

    Sink sink(o.out, out);
    auto& s = sink.stream();
    s << "grid " << g.rows() << "x" << g.cols() << "  triplet-mode " << to_string(o.run.mode)
      << '\n';
    s << "counts x  " << c.x[0] << ' ' << c.x[1] << '\n';
    s << "counts y  " << c.y[0] << ' ' << c.y[1] << ' ' << c.y[2] << "  (pair slots "
      << c.pair_total << ")\n";
    s << "counts w  " << c.w[0] << ' ' << c.w[1] << ' ' << c.w[2] << '\n';
    s << "counts z ";
    for (auto v : c.z) s << ' ' << v;
    s << "  (triplet slots " << c.triplet_total << ")\n";
    s << "x  " << fmt(f.x[0]) << ' ' << fmt(f.x[1]) << '\n';
    s << "y  " << fmt(f.y[0]) << ' ' << fmt(f.y[1]) << ' ' << fmt(f.y[2]) << '\n';
    s << "w  " << fmt(f.w[0]) << ' ' << fmt(f.w[1]) << ' ' << fmt(f.w[2]) << '\n';
    s << "z ";
    for (double v : f.z) s << ' ' << fmt(v);
    s << '\n';

    const auto res = identity_residuals(f);
    const bool pass = res.max_abs() <= 1e-12;
    s << "identities y1=z1+z2, y3=z5+z6, 2y2=z2+z3+z4+z5: " << (pass ? "PASS" : "FAIL")
      << " (max residual " << fmt(res.max_abs()) << ")\n";
    s << "h " << fmt(t.h) << "  eps1 " << fmt(t.eps1) << "  enthalpy-form " << to_string(t.form)
      << '\n';
    s << "delta " << fmt(t.delta) << "  enthalpy " << fmt(t.enthalpy) << "  entropy "
      << fmt(-t.neg_entropy) << "  free_energy " << fmt(t.free_energy) << '\n';
    sink.finish();
    return pass ? kOk : kValidation;
}

inline int cmd_generate(const Options& o, std::ostream& out) {
    const RunConfig& r = o.run;
    Rng rng(r.seed);
    Grid g = generate_random(r.rows, r.cols, r.x1, rng);
    adjust_x1(g, r.x1, r.x1_tolerance.value_or(0.5 / double(g.size())), rng);
    if (o.minimize) descend(g, r.descent_params(o.h), rng);
    Sink sink(o.out, out);
    sink.stream() << "# x1 " << report::fmt(g.active_fraction()) << " seed " << r.seed;
    if (o.minimize) sink.stream() << " minimized at h " << report::fmt(o.h);
    sink.stream() << '\n';
    save_grid(g, sink.stream());
    sink.finish();
    return kOk;
}

inline int cmd_validate(const Options& o, std::ostream& out) {
    const auto sizes = parse_sizes(o.sizes);
    const std::size_t per_size = o.trials_set ? o.run.trials : 100;
    Rng rng(o.run.seed);

    Sink sink(o.out, out);
    auto& s = sink.stream();
    std::size_t total = 0, exact = 0;
    for (const Size sz : sizes) {
        std::size_t ok_h = 0, ok_f = 0;
        for (std::size_t i = 0; i < per_size; ++i) {
            const Grid g = generate_random(sz.rows, sz.cols, rng.uniform(), rng);
            const bool h = count_configs(g, TripletMode::horizontal) ==
                           oracle::brute_force_count(g, TripletMode::horizontal);
            const bool f =
                count_configs(g, TripletMode::full) == oracle::brute_force_count(g, TripletMode::full);
            ok_h += h;
            ok_f += f;
            exact += (h && f);
            ++total;
        }
        s << sz.rows << "x" << sz.cols << ": horizontal " << ok_h << "/" << per_size << ", full "
          << ok_f << "/" << per_size << '\n';
    }
    s << "total: " << exact << "/" << total << " exact\n";
    sink.finish();
    return exact == total ? kOk : kValidation;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Cluster variation method grids: counting, thermodynamics, minimization"};
    app.set_help_flag("--help", "print help and exit");
    app.set_config("--config", "", "key=value file mirroring the flags (flags win)");
    app.require_subcommand(1);

    Options o;
    RunConfig& r = o.run;
    app.add_option("--rows", r.rows, "grid rows (even, >= 4)")->capture_default_str();
    app.add_option("--cols", r.cols, "grid columns (>= 4)")->capture_default_str();
    app.add_option("--x1", r.x1, "target fraction of units in state A")->capture_default_str();
    app.add_option("--h-min", r.h_min)->capture_default_str();
    app.add_option("--h-max", r.h_max)->capture_default_str();
    app.add_option("--h-step", r.h_step)->capture_default_str();
    app.add_option("--h", o.h, "interaction parameter for count / generate")->capture_default_str();
    auto* trials = app.add_option("--trials", r.trials, "trials per h (validate: grids per size)")
                       ->capture_default_str();
    app.add_option("--perturb-fraction", r.perturb_fraction)->capture_default_str();
    app.add_option("--seed", r.seed)->capture_default_str();
    app.add_option("--triplet-mode", o.triplet_mode)
        ->check(CLI::IsMember({"horizontal", "full"}))
        ->capture_default_str();
    app.add_option("--enthalpy-form", o.enthalpy_form)
        ->check(CLI::IsMember({"2y2", "delta"}))
        ->capture_default_str();
    app.add_option("--max-swaps", r.max_swaps)->capture_default_str();
    app.add_option("--stall-limit", r.stall_limit)->capture_default_str();
    app.add_option("--x1-tolerance", o.x1_tolerance, "default: half a unit, 1/(2N)");
    app.add_option("--threads", r.threads, "worker threads, 0 = all cores")->capture_default_str();
    app.add_option("--out", o.out, "output path (default stdout)");
    app.add_option("--svg", o.svg, "sweep: also write an SVG plot here");
    app.add_option("--sweep-csv", o.sweep_csv, "analytic: join experimental z3 from a sweep CSV");
    app.add_option("--sizes", o.sizes, "validate: comma-separated ROWSxCOLS list")
        ->capture_default_str();
    app.add_flag("--minimize", o.minimize, "generate: run swap descent at --h");

    auto* sweep = app.add_subcommand("sweep", "h-sweep with perturbation, trial-averaged CSV");
    auto* perturb_sweep = app.add_subcommand("perturb-sweep", "alias of sweep");
    auto* analytic_cmd = app.add_subcommand("analytic", "closed-form z3(h) table");
    auto* count = app.add_subcommand("count", "count configuration variables of a grid file");
    count->add_option("grid", o.grid_file, "grid file")->required();
    auto* generate = app.add_subcommand("generate", "write a random grid file");
    auto* validate = app.add_subcommand("validate", "check the counter against the brute-force oracle");
    for (auto* sub : {sweep, perturb_sweep, analytic_cmd, count, generate, validate})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }
    o.trials_set = trials->count() > 0;

    try {
        finalize(o);
        if (*sweep || *perturb_sweep) return cmd_sweep(o, out);
        if (*analytic_cmd) return cmd_analytic(o, out);
        if (*count) return cmd_count(o, out);
        if (*generate) return cmd_generate(o, out);
        if (*validate) return cmd_validate(o, out);
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kIo;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kIo;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace cvm::cli
