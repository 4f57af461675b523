#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "fisher/mesh.hpp"

namespace fisher {

/// Closed-form value and derivative weights of the trigonometric cubic
/// B-spline basis at the knots.
///
/// For a spline U(x) = sum_i delta_i B_i(x) on a uniform mesh,
///
///   U(x_i)   = alpha1*delta_{i-1} + alpha2*delta_i + alpha1*delta_{i+1}
///   U'(x_i)  = beta1*delta_{i-1}                   + beta2*delta_{i+1}
///   U''(x_i) = gamma1*delta_{i-1} + gamma2*delta_i + gamma1*delta_{i+1}
///
/// beta1 == -beta2 exactly. Note that 2*gamma1 + gamma2 is NOT zero: it
/// equals -3h^2/64 + O(h^4), because constants are not in the span of the
/// trigonometric pieces. It only vanishes in the h -> 0 (polynomial) limit.
struct NodalWeights {
    double h = 0.0;      ///< spacing the weights were built for
    double theta = 0.0;  ///< normalization sin(h/2)*sin(h)*sin(3h/2)
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    double beta1 = 0.0;  ///< units 1/length
    double beta2 = 0.0;
    double gamma1 = 0.0;  ///< units 1/length^2
    double gamma2 = 0.0;
};

/// Evaluate the closed forms at spacing h in (0, 2*pi/3).
inline NodalWeights nodal_weights(double h) {
    if (!(h > 0.0 && h < max_spacing)) {
        throw std::invalid_argument("nodal_weights: h=" + std::to_string(h) +
                                    " outside (0, 2*pi/3)");
    }
    const double s1 = std::sin(0.5 * h);
    const double s2 = std::sin(h);
    const double s3 = std::sin(1.5 * h);
    const double c1 = std::cos(0.5 * h);
    const double c2 = std::cos(h);
    const double c3 = std::cos(1.5 * h);

    NodalWeights w;
    w.h = h;
    w.theta = s1 * s2 * s3;
    w.alpha1 = s1 * s1 / (s2 * s3);
    w.alpha2 = 2.0 / (1.0 + 2.0 * c2);
    w.beta2 = 0.75 / s3;
    w.beta1 = -w.beta2;
    w.gamma1 = 3.0 * (1.0 + 3.0 * c2) / (16.0 * s1 * s1 * (2.0 * c1 + c3));
    w.gamma2 = -3.0 * (c1 * c1) / (s1 * s1 * (2.0 + 4.0 * c2));
    return w;
}

/// Piecewise closed form of basis function B_i on the mesh.
///
/// Four trigonometric-cubic branches over [x_{i-2}, x_{i+2}], exactly zero
/// outside. Valid basis indices are -1..n+1.
inline double eval_piecewise(const UniformMesh& m, int i, double x) {
    if (i < -1 || i > m.n + 1) {
        throw std::out_of_range("eval_piecewise: basis index " + std::to_string(i) +
                                " outside [-1, " + std::to_string(m.n + 1) + "]");
    }
    if (!std::isfinite(x)) {
        throw std::invalid_argument("eval_piecewise: non-finite evaluation point");
    }
    if (x < m.knot(i - 2) || x > m.knot(i + 2)) return 0.0;

    const auto omega = [&](int j) { return std::sin(0.5 * (x - m.knot(j))); };
    const auto phi = [&](int j) { return std::sin(0.5 * (m.knot(j) - x)); };
    const double h = m.h;
    const double theta = std::sin(0.5 * h) * std::sin(h) * std::sin(1.5 * h);

    double v = 0.0;
    if (x <= m.knot(i - 1)) {
        const double w = omega(i - 2);
        v = w * w * w;
    } else if (x <= m.knot(i)) {
        v = omega(i - 2) * (omega(i - 2) * phi(i) + phi(i + 1) * omega(i - 1)) +
            phi(i + 2) * omega(i - 1) * omega(i - 1);
    } else if (x <= m.knot(i + 1)) {
        v = omega(i - 2) * phi(i + 1) * phi(i + 1) +
            phi(i + 2) * (omega(i - 1) * phi(i + 1) + phi(i + 2) * omega(i));
    } else {
        const double p = phi(i + 2);
        v = p * p * p;
    }
    return v / theta;
}

/// Order-k trigonometric B-spline T_i^k by the two-term recursion, starting
/// from the half-open order-1 indicator of [x_i, x_{i+1}).
///
/// On the uniform mesh the recursion denominators multiply out to exactly
/// theta, so T_{i-2}^4(x) reproduces eval_piecewise(m, i, x). The order-1
/// jumps at knots are smoothed away by order 4, so knot evaluations
/// (including x = b, whose base interval [x_n, x_{n+1}) lies in the
/// extension) already return the continuous value.
inline double eval_recursive(const UniformMesh& m, int i, int k, double x) {
    if (k < 1) {
        throw std::invalid_argument("eval_recursive: order must be >= 1 (got " +
                                    std::to_string(k) + ")");
    }
    if (i < -3 || i + k > m.n + 3) {
        throw std::out_of_range("eval_recursive: knots x_" + std::to_string(i) + "..x_" +
                                std::to_string(i + k) + " not all in the extended range");
    }
    if (k == 1) {
        return (m.knot(i) <= x && x < m.knot(i + 1)) ? 1.0 : 0.0;
    }
    const double d_left = std::sin(0.5 * (m.knot(i + k - 1) - m.knot(i)));
    const double d_right = std::sin(0.5 * (m.knot(i + k) - m.knot(i + 1)));
    double v = 0.0;
    if (d_left != 0.0) {
        v += std::sin(0.5 * (x - m.knot(i))) / d_left * eval_recursive(m, i, k - 1, x);
    }
    if (d_right != 0.0) {
        v += std::sin(0.5 * (m.knot(i + k) - x)) / d_right * eval_recursive(m, i + 1, k - 1, x);
    }
    return v;
}

}  // namespace fisher
