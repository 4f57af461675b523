#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fisher {

/// Tridiagonal system A x = rhs. sub[0] and sup[M-1] are unused and kept 0.
struct TridiagonalSystem {
    std::vector<double> sub;
    std::vector<double> diag;
    std::vector<double> sup;
    std::vector<double> rhs;

    TridiagonalSystem() = default;
    explicit TridiagonalSystem(std::size_t m) : sub(m, 0.0), diag(m, 0.0), sup(m, 0.0), rhs(m, 0.0) {}

    [[nodiscard]] std::size_t size() const { return diag.size(); }
};

/// Thomas forward-elimination / back-substitution solve, O(M).
///
/// No pivoting: the caller is expected to supply diagonally dominant rows.
/// A pivot smaller than 1e-14 * max|diag| aborts with the offending row
/// rather than returning garbage.
inline std::vector<double> thomas_solve(const TridiagonalSystem& sys) {
    const std::size_t m = sys.size();
    if (m < 1 || sys.sub.size() != m || sys.sup.size() != m || sys.rhs.size() != m) {
        throw std::invalid_argument("thomas_solve: arrays must share one length M >= 1");
    }
    double max_diag = 0.0;
    for (double d : sys.diag) max_diag = std::max(max_diag, std::abs(d));
    const double pivot_floor = 1e-14 * max_diag;

    std::vector<double> c(m, 0.0);  // modified super-diagonal
    std::vector<double> x(m, 0.0);

    double pivot = sys.diag[0];
    if (!(std::abs(pivot) > pivot_floor)) {
        throw std::runtime_error("thomas_solve: zero/tiny pivot at row 0");
    }
    c[0] = sys.sup[0] / pivot;
    x[0] = sys.rhs[0] / pivot;
    for (std::size_t i = 1; i < m; ++i) {
        pivot = sys.diag[i] - sys.sub[i] * c[i - 1];
        if (!(std::abs(pivot) > pivot_floor)) {
            throw std::runtime_error("thomas_solve: zero/tiny pivot at row " + std::to_string(i));
        }
        c[i] = sys.sup[i] / pivot;
        x[i] = (sys.rhs[i] - sys.sub[i] * x[i - 1]) / pivot;
    }
    for (std::size_t i = m - 1; i-- > 0;) {
        x[i] -= c[i] * x[i + 1];
    }
    return x;
}

}  // namespace fisher
