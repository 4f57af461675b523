#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace fisher {

/// One row of an error table.
struct ErrorReport {
    double t = 0.0;
    double linf = 0.0;      ///< max-norm error against an exact solution
    double relative = 0.0;  ///< successive-step relative change
    int n = 0;
    double dt = 0.0;
};

/// Traveling-wave solution u = (1 + exp(sqrt(beta/6)*x - (5*beta/6)*t))^-2
/// of u_t = u_xx + beta*u*(1-u). Monotone decreasing in x, increasing in t;
/// the exponent is clamped so extreme arguments saturate to 0 or 1.
[[nodiscard]] inline double exact_wave(double x, double t, double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("exact_wave: beta must be positive");
    double e = std::sqrt(beta / 6.0) * x - (5.0 * beta / 6.0) * t;
    e = std::clamp(e, -700.0, 700.0);
    const double q = 1.0 + std::exp(e);
    return 1.0 / (q * q);
}

/// Space derivative of exact_wave, used for end conditions of the fit.
[[nodiscard]] inline double exact_wave_dx(double x, double t, double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("exact_wave_dx: beta must be positive");
    const double r = std::sqrt(beta / 6.0);
    double e = r * x - (5.0 * beta / 6.0) * t;
    e = std::clamp(e, -700.0, 700.0);
    const double ex = std::exp(e);
    const double q = 1.0 + ex;
    return -2.0 * r * ex / (q * q * q);
}

/// Pulse initial profile sech^2(10 x); decays below 1e-300 past |x| ~ 35.
[[nodiscard]] inline double sech2_pulse(double x) {
    const double c = std::cosh(10.0 * x);  // overflow gives inf and a clean 0
    const double s = 1.0 / c;
    return s * s;
}

/// Space derivative of sech2_pulse.
[[nodiscard]] inline double sech2_pulse_dx(double x) {
    const double c = std::cosh(10.0 * x);
    const double s = 1.0 / c;
    return -20.0 * s * s * std::tanh(10.0 * x);
}

/// Max absolute componentwise difference.
[[nodiscard]] inline double linf_error(std::span<const double> numeric, std::span<const double> exact) {
    if (numeric.size() != exact.size()) {
        throw std::invalid_argument("linf_error: length mismatch");
    }
    double m = 0.0;
    for (std::size_t i = 0; i < numeric.size(); ++i) {
        m = std::max(m, std::abs(numeric[i] - exact[i]));
    }
    return m;
}

/// sqrt( sum |u_next - u_prev|^2 / sum |u_prev|^2 ), the error measure used
/// when no analytical solution exists.
[[nodiscard]] inline double relative_change(std::span<const double> u_next, std::span<const double> u_prev) {
    if (u_next.size() != u_prev.size()) {
        throw std::invalid_argument("relative_change: length mismatch");
    }
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < u_next.size(); ++i) {
        const double d = u_next[i] - u_prev[i];
        num += d * d;
        den += u_prev[i] * u_prev[i];
    }
    if (!(den > 0.0)) throw std::invalid_argument("relative_change: zero denominator");
    return std::sqrt(num / den);
}

/// Least-squares slope of log(error) against log(step) over (step, error)
/// pairs; ~2 for a second-order method.
[[nodiscard]] inline double convergence_order(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 2) {
        throw std::invalid_argument("convergence_order: need at least 2 points");
    }
    double ms = 0.0;
    double me = 0.0;
    for (const auto& [s, e] : points) {
        if (!(s > 0.0) || !(e > 0.0)) {
            throw std::invalid_argument("convergence_order: steps and errors must be positive");
        }
        ms += std::log(s);
        me += std::log(e);
    }
    ms /= static_cast<double>(points.size());
    me /= static_cast<double>(points.size());
    double sxx = 0.0;
    double sxy = 0.0;
    for (const auto& [s, e] : points) {
        const double dx = std::log(s) - ms;
        sxx += dx * dx;
        sxy += dx * (std::log(e) - me);
    }
    if (!(sxx > 0.0)) throw std::invalid_argument("convergence_order: steps must differ");
    return sxy / sxx;
}

}  // namespace fisher
