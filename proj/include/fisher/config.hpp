#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fisher/stepper.hpp"

namespace fisher {

/// Canned experiment configurations plus free-form "custom".
enum class Preset { Table2, Table3, Fig1, Fig2, Fig3, Fig4, Fig5, Fig6, Custom };

/// How the Dirichlet data evolve: sampled from the analytic solution at
/// every step, or frozen at the initial endpoint values.
enum class BcMode { ExactSampled, Constant };

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised by parse_config for --help; carries the help text.
struct HelpRequested {
    std::string text;
};

/// A fully resolved run: a preset determines every numeric field, and
/// explicit flags (or config-file keys) override individual values.
struct RunConfig {
    Preset preset = Preset::Custom;
    double lambda = 0.0;
    double beta = 0.0;
    double a = 0.0;
    double b = 0.0;
    int n = 0;
    double dt = 0.0;
    double t_final = 0.0;
    std::vector<double> report_times;
    Linearization linearization = Linearization::AsPrinted;
    BcMode bc_mode = BcMode::ExactSampled;
    std::string output_path = "out";
};

inline const std::map<std::string, Preset>& preset_names() {
    static const std::map<std::string, Preset> names = {
        {"table2", Preset::Table2}, {"table3", Preset::Table3}, {"fig1", Preset::Fig1},
        {"fig2", Preset::Fig2},     {"fig3", Preset::Fig3},     {"fig4", Preset::Fig4},
        {"fig5", Preset::Fig5},     {"fig6", Preset::Fig6},     {"custom", Preset::Custom}};
    return names;
}

inline std::string preset_name(Preset p) {
    for (const auto& [name, val] : preset_names()) {
        if (val == p) return name;
    }
    return "custom";
}

/// Numeric parameter sets of the named experiments.
///
/// table2: sharp wave, beta=10000, N=64, dt=5e-6 on [-0.2, 1.06].
/// table3 / fig4-6: pulse problem, lambda=0.1, beta=1, dt=0.05 and h=0.005
///   on [-50, 50] (N=20000; the fine spacing is needed to resolve the
///   width-0.2 initial pulse, so it prevails over the coarser N printed in
///   the error-table header).
/// fig1-3: wave at beta=2000/5000/10000 with N=40, dt=1e-4 on [-0.2, 0.8].
inline RunConfig preset_config(Preset p) {
    RunConfig c;
    c.preset = p;
    switch (p) {
        case Preset::Table2:
            c.lambda = 1.0;
            c.beta = 1e4;
            c.a = -0.2;
            c.b = 1.06;
            c.n = 64;
            c.dt = 5e-6;
            c.t_final = 0.0035;
            c.report_times = {0.0005, 0.0015, 0.0025, 0.0035};
            break;
        case Preset::Table3:
            c.lambda = 0.1;
            c.beta = 1.0;
            c.a = -50.0;
            c.b = 50.0;
            c.n = 20000;
            c.dt = 0.05;
            c.t_final = 40.0;
            c.report_times = {5.0, 10.0, 15.0, 20.0, 40.0};
            break;
        case Preset::Fig1:
            c.lambda = 1.0;
            c.beta = 2000.0;
            c.a = -0.2;
            c.b = 0.8;
            c.n = 40;
            c.dt = 1e-4;
            c.t_final = 0.005;
            c.report_times = {0.001, 0.002, 0.003, 0.004, 0.005};
            break;
        case Preset::Fig2:
            c = preset_config(Preset::Fig1);
            c.preset = Preset::Fig2;
            c.beta = 5000.0;
            c.t_final = 0.003;
            c.report_times = {0.0005, 0.001, 0.0015, 0.002, 0.0025, 0.003};
            break;
        case Preset::Fig3:
            c = preset_config(Preset::Fig1);
            c.preset = Preset::Fig3;
            c.beta = 10000.0;
            c.t_final = 0.002;
            c.report_times = {0.0005, 0.001, 0.0015, 0.002};
            break;
        case Preset::Fig4:
            c = preset_config(Preset::Table3);
            c.preset = Preset::Fig4;
            c.t_final = 0.5;
            c.report_times = {0.1, 0.2, 0.3, 0.4, 0.5};
            break;
        case Preset::Fig5:
            c = preset_config(Preset::Table3);
            c.preset = Preset::Fig5;
            c.t_final = 5.0;
            c.report_times = {0.0, 1.0, 2.0, 3.0, 4.0, 5.0};
            break;
        case Preset::Fig6:
            c = preset_config(Preset::Table3);
            c.preset = Preset::Fig6;
            c.t_final = 40.0;
            c.report_times = {0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0, 35.0, 40.0};
            break;
        case Preset::Custom:
            break;
    }
    return c;
}

namespace detail {

inline void validate_config(const RunConfig& c) {
    if (!(c.b > c.a)) throw ConfigError("config: domain must satisfy b > a");
    if (c.n < 3) throw ConfigError("config: need n >= 3");
    if (!((c.b - c.a) / c.n < max_spacing)) {
        throw ConfigError("config: spacing (b-a)/n outside the trigonometric validity range");
    }
    if (!(c.dt > 0.0)) throw ConfigError("config: dt must be positive");
    if (!(c.t_final >= 0.0)) throw ConfigError("config: t-final must be >= 0");
    if (!(c.lambda > 0.0)) throw ConfigError("config: lambda must be positive");
    if (!(c.beta > 0.0)) throw ConfigError("config: beta must be positive");
    double prev = -1.0;
    for (double t : c.report_times) {
        if (t < prev) throw ConfigError("config: report-times must be sorted ascending");
        prev = t;
        const double k = std::round(t / c.dt);
        if (std::abs(t - k * c.dt) > 1e-9 * std::max(std::abs(t), c.dt)) {
            throw ConfigError("config: report time " + std::to_string(t) +
                              " is not an integer multiple of dt");
        }
        if (t > c.t_final * (1.0 + 1e-12)) {
            throw ConfigError("config: report time " + std::to_string(t) + " exceeds t-final");
        }
    }
}

}  // namespace detail

/// Parse command-line flags (and an optional "key = value" config file given
/// via --config) into a validated RunConfig. Flags override file values;
/// both override preset defaults. Unknown keys are rejected.
inline RunConfig parse_config(std::vector<std::string> args) {
    CLI::App app{"Trigonometric cubic B-spline collocation solver for Fisher's equation"};
    app.set_config("--config", "", "flat key = value configuration file ('#' comments)");
    app.allow_config_extras(CLI::config_extras_mode::error);

    std::string preset_str = "custom";
    double lambda = 0.0;
    double beta = 0.0;
    std::vector<double> domain;
    int n = 0;
    double dt = 0.0;
    double t_final = 0.0;
    std::vector<double> report_times;
    std::string linearization = "as-printed";
    std::string bc_mode = "exact-sampled";
    std::string output = "out";

    app.add_option("--preset", preset_str, "preset name (table2, table3, fig1..fig6, custom)");
    auto* opt_lambda = app.add_option("--lambda", lambda, "diffusion coefficient");
    auto* opt_beta = app.add_option("--beta", beta, "reaction rate");
    auto* opt_domain = app.add_option("--domain", domain, "domain endpoints a,b")->delimiter(',')->expected(2);
    auto* opt_n = app.add_option("--n", n, "number of subintervals");
    auto* opt_dt = app.add_option("--dt", dt, "time step");
    auto* opt_tf = app.add_option("--t-final", t_final, "final time");
    auto* opt_rt = app.add_option("--report-times", report_times, "comma-separated report times")->delimiter(',');
    app.add_option("--linearization", linearization, "as-printed | re-derived");
    app.add_option("--bc-mode", bc_mode, "exact-sampled | constant");
    auto* opt_out = app.add_option("--output", output, "output directory for CSV files");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested{app.help()};
    } catch (const CLI::ParseError& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }

    const auto it = preset_names().find(preset_str);
    if (it == preset_names().end()) {
        throw ConfigError("config: unknown preset '" + preset_str + "'");
    }
    RunConfig c = preset_config(it->second);

    if (it->second == Preset::Custom) {
        std::vector<std::string> missing;
        if (opt_lambda->count() == 0) missing.push_back("--lambda");
        if (opt_beta->count() == 0) missing.push_back("--beta");
        if (opt_domain->count() == 0) missing.push_back("--domain");
        if (opt_n->count() == 0) missing.push_back("--n");
        if (opt_dt->count() == 0) missing.push_back("--dt");
        if (opt_tf->count() == 0) missing.push_back("--t-final");
        if (!missing.empty()) {
            std::string msg = "config: custom preset requires explicit";
            for (const auto& f : missing) msg += " " + f;
            throw ConfigError(msg);
        }
    }

    if (opt_lambda->count() > 0) c.lambda = lambda;
    if (opt_beta->count() > 0) c.beta = beta;
    if (opt_domain->count() > 0) {
        c.a = domain[0];
        c.b = domain[1];
    }
    if (opt_n->count() > 0) c.n = n;
    if (opt_dt->count() > 0) c.dt = dt;
    if (opt_tf->count() > 0) c.t_final = t_final;
    if (opt_rt->count() > 0) {
        c.report_times = report_times;
    } else if (c.preset == Preset::Custom) {
        c.report_times = {c.t_final};
    }
    if (linearization == "as-printed") {
        c.linearization = Linearization::AsPrinted;
    } else if (linearization == "re-derived") {
        c.linearization = Linearization::ReDerived;
    } else {
        throw ConfigError("config: unknown linearization '" + linearization +
                          "' (expected as-printed | re-derived)");
    }
    if (bc_mode == "exact-sampled") {
        c.bc_mode = BcMode::ExactSampled;
    } else if (bc_mode == "constant") {
        c.bc_mode = BcMode::Constant;
    } else {
        throw ConfigError("config: unknown bc-mode '" + bc_mode + "' (expected exact-sampled | constant)");
    }
    if (opt_out->count() > 0) c.output_path = output;

    detail::validate_config(c);
    return c;
}

}  // namespace fisher
