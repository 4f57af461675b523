#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fisher/field.hpp"
#include "fisher/tridiagonal.hpp"

namespace fisher {

/// Handling of the quadratic reaction term in the Crank-Nicolson update.
///
/// AsPrinted: (U^2)^{n+1} replaced by 2*U^n*U^{n+1} - (U^n)^2; after the
/// rearrangement the right-hand side is (2/dt + beta)*U^n + lambda*U_xx^n.
/// ReDerived: same left-hand side with an extra beta*(U^n)^2 added to the
/// right-hand side.
enum class Linearization { AsPrinted, ReDerived };

/// Reaction coefficient frozen at the previous time level. The value used in
/// chi1/chi2 is U^n itself; the -(U^n)^2 correction cancels against the
/// explicit half of the quadratic term when the update is rearranged.
[[nodiscard]] inline double linearized_reaction(double u_prev) noexcept { return u_prev; }

/// Per-node coefficients of the fully discretized update
///   chi1*d_{m-1}^{n+1} + chi2*d_m^{n+1} + chi1*d_{m+1}^{n+1}
///     = chi3*d_{m-1}^n + chi4*d_m^n + chi3*d_{m+1}^n.
struct StepCoefficients {
    std::vector<double> chi1;  ///< off-diagonal, depends on K
    std::vector<double> chi2;  ///< diagonal, depends on K
    double chi3 = 0.0;         ///< node-independent
    double chi4 = 0.0;
    std::vector<double> K;     ///< previous-level nodal values U^n(x_m)
};

inline StepCoefficients step_coefficients(const CoefficientVector& delta_n, const NodalWeights& w,
                                          const FisherProblem& p, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("step_coefficients: dt must be positive");
    const int n = delta_n.n;
    const KnotValues kv = knot_values(delta_n, w);
    StepCoefficients sc;
    sc.K.resize(static_cast<std::size_t>(n) + 1);
    sc.chi1.resize(static_cast<std::size_t>(n) + 1);
    sc.chi2.resize(static_cast<std::size_t>(n) + 1);
    const double r = 2.0 / dt;
    sc.chi3 = (r + p.beta) * w.alpha1 + p.lambda * w.gamma1;
    sc.chi4 = (r + p.beta) * w.alpha2 + p.lambda * w.gamma2;
    for (int m = 0; m <= n; ++m) {
        const double K = linearized_reaction(kv.value[static_cast<std::size_t>(m)]);
        const double A = r - p.beta + 2.0 * p.beta * K;
        sc.K[static_cast<std::size_t>(m)] = K;
        sc.chi1[static_cast<std::size_t>(m)] = A * w.alpha1 - p.lambda * w.gamma1;
        sc.chi2[static_cast<std::size_t>(m)] = A * w.alpha2 - p.lambda * w.gamma2;
    }
    return sc;
}

/// Assemble the (n+1)-row tridiagonal system for one Crank-Nicolson step to
/// time t_next.
///
/// Rows 0 and n have the ghost coefficients delta_{-1}, delta_{n+1}
/// eliminated through the Dirichlet relations at t_next. Because the value
/// stencil (alpha1, alpha2, alpha1) and the chi stencil are both symmetric,
/// the elimination cancels the off-diagonal entry entirely and scales the
/// remaining pivot by lambda*(alpha2*gamma1 - alpha1*gamma2)/alpha1. At
/// lambda = 0 that pivot vanishes identically (the collocation row repeats
/// the boundary condition); the system is then closed by carrying the
/// boundary coefficients over, delta_0^{n+1} = delta_0^n, which keeps the
/// lambda = beta = 0 step an exact identity.
inline TridiagonalSystem assemble_step(const CoefficientVector& delta_n, const NodalWeights& w,
                                       const FisherProblem& p, double dt, double t_next,
                                       Linearization mode = Linearization::AsPrinted) {
    detail::require_same_h(delta_n.h, w.h, "assemble_step");
    if (!(p.lambda >= 0.0)) throw std::invalid_argument("assemble_step: lambda must be >= 0");
    for (double d : delta_n.delta) {
        if (!std::isfinite(d)) throw std::invalid_argument("assemble_step: non-finite coefficient");
    }
    const double g_left = p.g_left(t_next);
    const double g_right = p.g_right(t_next);
    if (!std::isfinite(g_left) || !std::isfinite(g_right)) {
        throw std::runtime_error("assemble_step: boundary function returned a non-finite value at t=" +
                                 std::to_string(t_next));
    }

    const int n = delta_n.n;
    const StepCoefficients sc = step_coefficients(delta_n, w, p, dt);
    TridiagonalSystem sys(static_cast<std::size_t>(n) + 1);
    for (int m = 0; m <= n; ++m) {
        const auto im = static_cast<std::size_t>(m);
        sys.sub[im] = sc.chi1[im];
        sys.diag[im] = sc.chi2[im];
        sys.sup[im] = sc.chi1[im];
        double rhs = sc.chi3 * delta_n.at(m - 1) + sc.chi4 * delta_n.at(m) + sc.chi3 * delta_n.at(m + 1);
        if (mode == Linearization::ReDerived) rhs += p.beta * sc.K[im] * sc.K[im];
        sys.rhs[im] = rhs;
    }

    const auto in = static_cast<std::size_t>(n);
    if (p.lambda == 0.0) {
        sys.diag[0] = 1.0;
        sys.sup[0] = 0.0;
        sys.rhs[0] = delta_n.at(0);
        sys.diag[in] = 1.0;
        sys.sub[in] = 0.0;
        sys.rhs[in] = delta_n.at(n);
    } else {
        sys.diag[0] -= sys.sup[0] * w.alpha2 / w.alpha1;
        sys.rhs[0] -= sys.sup[0] / w.alpha1 * g_left;
        sys.sup[0] = 0.0;
        sys.diag[in] -= sys.sub[in] * w.alpha2 / w.alpha1;
        sys.rhs[in] -= sys.sub[in] / w.alpha1 * g_right;
        sys.sub[in] = 0.0;
    }
    sys.sub[0] = 0.0;
    sys.sup[in] = 0.0;
    return sys;
}

/// One Crank-Nicolson / Rubin-Graves step: assemble, Thomas-solve, and
/// recover the ghost coefficients from the boundary values at t_next.
inline CoefficientVector step(const CoefficientVector& delta_n, const NodalWeights& w,
                              const FisherProblem& p, double dt, double t_next,
                              Linearization mode = Linearization::AsPrinted) {
    const TridiagonalSystem sys = assemble_step(delta_n, w, p, dt, t_next, mode);
    const std::vector<double> inner = thomas_solve(sys);
    const int n = delta_n.n;
    CoefficientVector next(n, delta_n.h);
    for (int i = 0; i <= n; ++i) next.at(i) = inner[static_cast<std::size_t>(i)];
    const double g_left = p.g_left(t_next);
    const double g_right = p.g_right(t_next);
    next.at(-1) = (g_left - w.alpha2 * next.at(0) - w.alpha1 * next.at(1)) / w.alpha1;
    next.at(n + 1) = (g_right - w.alpha1 * next.at(n - 1) - w.alpha2 * next.at(n)) / w.alpha1;
    return next;
}

/// Time-stepping configuration. Report times must be sorted and integer
/// multiples of dt (to 1e-9 relative), not exceeding t_final.
struct SolverConfig {
    double dt = 0.0;
    double t_final = 0.0;
    std::vector<double> report_times;
};

/// State recorded at one report time.
struct Snapshot {
    double t = 0.0;
    std::vector<double> values;       ///< U at the knots
    std::vector<double> prev_values;  ///< U one step earlier (equals values at t=0)
    CoefficientVector delta;
};

namespace detail {
inline std::int64_t report_step(double t, double dt, std::int64_t n_steps) {
    const auto k = static_cast<std::int64_t>(std::llround(t / dt));
    if (std::abs(t - static_cast<double>(k) * dt) > 1e-9 * std::max(std::abs(t), dt)) {
        throw std::invalid_argument("run: report time " + std::to_string(t) +
                                    " is not an integer multiple of dt=" + std::to_string(dt));
    }
    if (k < 0 || k > n_steps) {
        throw std::invalid_argument("run: report time " + std::to_string(t) +
                                    " outside [0, t_final]");
    }
    return k;
}
}  // namespace detail

/// March from the fitted initial condition to t_final and snapshot every
/// report time. round(t_final/dt) steps are taken; an empty report list
/// yields a single snapshot at t_final. Deterministic for identical inputs.
inline std::vector<Snapshot> run(const FisherProblem& p, const UniformMesh& m, const NodalWeights& w,
                                 const SolverConfig& cfg,
                                 Linearization mode = Linearization::AsPrinted) {
    if (!(cfg.dt > 0.0)) throw std::invalid_argument("run: dt must be positive");
    if (!(cfg.t_final >= 0.0)) throw std::invalid_argument("run: t_final must be >= 0");
    if (!p.g_left || !p.g_right) throw std::invalid_argument("run: missing boundary functions");

    const double ua = p.u0(m.a);
    const double ub = p.u0(m.b);
    if (std::abs(ua - p.g_left(0.0)) > 1e-8 * (1.0 + std::abs(ua)) ||
        std::abs(ub - p.g_right(0.0)) > 1e-8 * (1.0 + std::abs(ub))) {
        throw std::invalid_argument("run: initial condition incompatible with boundary data at t=0");
    }

    const auto n_steps = static_cast<std::int64_t>(std::llround(cfg.t_final / cfg.dt));
    std::vector<double> report = cfg.report_times;
    if (report.empty()) report.push_back(cfg.t_final);
    std::vector<std::int64_t> report_steps;
    report_steps.reserve(report.size());
    for (std::size_t i = 0; i < report.size(); ++i) {
        if (i > 0 && report[i] < report[i - 1]) {
            throw std::invalid_argument("run: report times must be sorted ascending");
        }
        report_steps.push_back(detail::report_step(report[i], cfg.dt, n_steps));
    }

    CoefficientVector delta = fit_initial(p, m, w);
    std::vector<double> values = knot_values(delta, w).value;
    std::vector<double> prev = values;

    std::vector<Snapshot> out;
    std::size_t ri = 0;
    while (ri < report.size() && report_steps[ri] == 0) {
        out.push_back({0.0, values, values, delta});
        ++ri;
    }
    for (std::int64_t s = 1; s <= n_steps; ++s) {
        const double t_next = static_cast<double>(s) * cfg.dt;
        try {
            delta = step(delta, w, p, cfg.dt, t_next, mode);
        } catch (const std::exception& e) {
            throw std::runtime_error("run: step to t=" + std::to_string(t_next) + " (level " +
                                     std::to_string(s) + ") failed: " + e.what());
        }
        prev = std::move(values);
        values = knot_values(delta, w).value;
        while (ri < report.size() && report_steps[ri] == s) {
            out.push_back({report[ri], values, prev, delta});
            ++ri;
        }
    }
    return out;
}

}  // namespace fisher
