#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fisher/basis.hpp"
#include "fisher/mesh.hpp"
#include "fisher/tridiagonal.hpp"

namespace fisher {

/// Spline coefficients delta_{-1}..delta_{n+1} (n+3 values) on a given mesh.
struct CoefficientVector {
    std::vector<double> delta;  ///< stored as delta[i+1] for i in [-1, n+1]
    int n = 0;
    double h = 0.0;

    CoefficientVector() = default;
    CoefficientVector(int n_, double h_) : delta(static_cast<std::size_t>(n_) + 3, 0.0), n(n_), h(h_) {}

    [[nodiscard]] double at(int i) const { return delta[static_cast<std::size_t>(i + 1)]; }
    [[nodiscard]] double& at(int i) { return delta[static_cast<std::size_t>(i + 1)]; }
    [[nodiscard]] std::size_t size() const { return delta.size(); }
};

/// Problem data for u_t = lambda*u_xx + beta*u*(1-u) with Dirichlet data on
/// a truncated interval.
///
/// lambda = 0 is accepted (pure reaction); the stepper closes the then
/// degenerate boundary rows separately.
struct FisherProblem {
    double lambda = 1.0;  ///< diffusion coefficient, >= 0
    double beta = 1.0;    ///< reaction rate
    std::function<double(double)> u0;       ///< initial condition
    std::function<double(double)> g_left;   ///< boundary value at a over time
    std::function<double(double)> g_right;  ///< boundary value at b over time
    double du0_left = 0.0;                  ///< u0'(a)
    double du0_right = 0.0;                 ///< u0'(b)
};

/// Nodal values of the spline and its first two derivatives at x_0..x_n.
struct KnotValues {
    std::vector<double> value;
    std::vector<double> d1;
    std::vector<double> d2;
};

namespace detail {
inline void require_same_h(double ha, double hb, const char* where) {
    if (!(std::abs(ha - hb) <= 1e-12 * std::max(std::abs(ha), std::abs(hb)))) {
        throw std::invalid_argument(std::string(where) + ": mesh mismatch (h=" +
                                    std::to_string(ha) + " vs " + std::to_string(hb) + ")");
    }
}
}  // namespace detail

/// Apply the three-term nodal weight stencils to the coefficients.
inline KnotValues knot_values(const CoefficientVector& delta, const NodalWeights& w) {
    detail::require_same_h(delta.h, w.h, "knot_values");
    if (delta.delta.size() != static_cast<std::size_t>(delta.n) + 3) {
        throw std::invalid_argument("knot_values: coefficient vector has wrong length");
    }
    const int n = delta.n;
    KnotValues kv;
    kv.value.resize(static_cast<std::size_t>(n) + 1);
    kv.d1.resize(static_cast<std::size_t>(n) + 1);
    kv.d2.resize(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        const double dm = delta.at(i - 1);
        const double d0 = delta.at(i);
        const double dp = delta.at(i + 1);
        kv.value[static_cast<std::size_t>(i)] = w.alpha1 * dm + w.alpha2 * d0 + w.alpha1 * dp;
        kv.d1[static_cast<std::size_t>(i)] = w.beta1 * dm + w.beta2 * dp;
        kv.d2[static_cast<std::size_t>(i)] = w.gamma1 * dm + w.gamma2 * d0 + w.gamma1 * dp;
    }
    return kv;
}

/// Evaluate the spline at x in [a, b] from the (at most four) basis
/// functions whose support contains x.
inline double eval_at(const CoefficientVector& delta, const UniformMesh& m, double x) {
    detail::require_same_h(delta.h, m.h, "eval_at");
    if (x < m.a || x > m.b) {
        throw std::invalid_argument("eval_at: x=" + std::to_string(x) + " outside [" +
                                    std::to_string(m.a) + ", " + std::to_string(m.b) + "]");
    }
    int j = static_cast<int>(std::floor((x - m.a) / m.h));
    j = std::max(0, std::min(j, m.n - 1));
    double s = 0.0;
    for (int i = j - 1; i <= j + 2; ++i) {
        if (i < -1 || i > m.n + 1) continue;
        s += delta.at(i) * eval_piecewise(m, i, x);
    }
    return s;
}

/// Fit initial coefficients from u0 at the knots plus the two end-derivative
/// conditions U'(a) = du0_left, U'(b) = du0_right.
///
/// The ghost unknowns delta_{-1} and delta_{n+1} are eliminated from the
/// first and last interpolation rows through the derivative conditions
/// (beta1 = -beta2 turns the off-diagonal into 2*alpha1), leaving an
/// (n+1)-row tridiagonal system; the ghosts are recovered afterwards.
inline CoefficientVector fit_initial(const FisherProblem& p, const UniformMesh& m,
                                     const NodalWeights& w) {
    detail::require_same_h(m.h, w.h, "fit_initial");
    if (!p.u0) throw std::invalid_argument("fit_initial: problem has no initial condition");
    const int n = m.n;

    TridiagonalSystem sys(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        const double f = p.u0(m.knot(i));
        if (!std::isfinite(f)) {
            throw std::invalid_argument("fit_initial: u0 not finite at x=" + std::to_string(m.knot(i)));
        }
        sys.sub[static_cast<std::size_t>(i)] = w.alpha1;
        sys.diag[static_cast<std::size_t>(i)] = w.alpha2;
        sys.sup[static_cast<std::size_t>(i)] = w.alpha1;
        sys.rhs[static_cast<std::size_t>(i)] = f;
    }
    sys.sup[0] = 2.0 * w.alpha1;
    sys.rhs[0] += w.alpha1 * p.du0_left / w.beta2;
    sys.sub[static_cast<std::size_t>(n)] = 2.0 * w.alpha1;
    sys.rhs[static_cast<std::size_t>(n)] -= w.alpha1 * p.du0_right / w.beta2;
    sys.sub[0] = 0.0;
    sys.sup[static_cast<std::size_t>(n)] = 0.0;

    std::vector<double> inner;
    try {
        inner = thomas_solve(sys);
    } catch (const std::runtime_error& e) {
        throw std::runtime_error(std::string("fit_initial: singular fit system (") + e.what() + ")");
    }

    CoefficientVector delta(n, m.h);
    for (int i = 0; i <= n; ++i) delta.at(i) = inner[static_cast<std::size_t>(i)];
    delta.at(-1) = delta.at(1) - p.du0_left / w.beta2;
    delta.at(n + 1) = delta.at(n - 1) + p.du0_right / w.beta2;
    return delta;
}

}  // namespace fisher
