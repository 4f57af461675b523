#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace fisher {

/// Largest admissible knot spacing. All of sin(h/2), sin(h), sin(3h/2) must
/// stay strictly positive so the basis normalization theta does not vanish.
inline constexpr double max_spacing = 2.0 * std::numbers::pi / 3.0;

/// Uniform partition of [a, b] into n subintervals, extended by three knots
/// on each side so that every basis function with index -1..n+1 has a fully
/// representable support.
///
/// Knots are x_i = a + i*h for i = -3..n+3 with h = (b-a)/n; x_0 = a and
/// x_n = b hold exactly.
struct UniformMesh {
    double a = 0.0;
    double b = 1.0;
    int n = 0;
    double h = 0.0;
    std::vector<double> knots;  ///< x_{-3}..x_{n+3}, size n+7

    /// Knot x_i for i in [-3, n+3].
    [[nodiscard]] double knot(int i) const { return knots[static_cast<std::size_t>(i + 3)]; }

    [[nodiscard]] bool contains(double x) const { return x >= a && x <= b; }
};

/// Build the extended uniform mesh.
///
/// Requires b > a, n >= 3 and (b-a)/n < 2*pi/3.
inline UniformMesh make_mesh(double a, double b, int n) {
    if (!(b > a)) {
        throw std::invalid_argument("make_mesh: degenerate interval, need b > a (got a=" +
                                    std::to_string(a) + ", b=" + std::to_string(b) + ")");
    }
    if (n < 3) {
        throw std::invalid_argument("make_mesh: need at least 3 subintervals (got n=" +
                                    std::to_string(n) + ")");
    }
    const double h = (b - a) / n;
    if (!(h < max_spacing)) {
        throw std::invalid_argument("make_mesh: spacing h=" + std::to_string(h) +
                                    " outside the trigonometric validity range (0, 2*pi/3)");
    }
    UniformMesh m;
    m.a = a;
    m.b = b;
    m.n = n;
    m.h = h;
    m.knots.resize(static_cast<std::size_t>(n) + 7);
    for (int i = -3; i <= n + 3; ++i) {
        m.knots[static_cast<std::size_t>(i + 3)] = a + i * h;
    }
    // n*h rounds away from b by at most one ulp; pin the right endpoint
    m.knots[static_cast<std::size_t>(n + 3)] = b;
    return m;
}

}  // namespace fisher
