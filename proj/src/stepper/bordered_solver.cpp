#include "eddymgrit/stepper/bordered_solver.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace eddymgrit::stepper {

namespace {

constexpr double kPivotTolerance = 64.0 * std::numeric_limits<double>::epsilon();

}  // namespace

std::vector<double> solve_tridiagonal(const model::Tridiagonal& t, std::vector<double> rhs) {
    const std::size_t n = t.size();
    if (rhs.size() != n) {
        throw std::invalid_argument("solve_tridiagonal: right-hand side has wrong length");
    }
    if (n == 0) {
        return rhs;
    }
    std::vector<double> c(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        const double sub = k > 0 ? t.lower[k] : 0.0;
        const double pivot = t.diag[k] - (k > 0 ? sub * c[k - 1] : 0.0);
        const double scale = std::abs(t.diag[k]) + std::abs(sub) + (k + 1 < n ? std::abs(t.upper[k]) : 0.0);
        if (pivot == 0.0 || !std::isfinite(pivot) || std::abs(pivot) <= kPivotTolerance * scale) {
            throw SingularFactorError("tridiagonal factor is singular at row " + std::to_string(k));
        }
        c[k] = k + 1 < n ? t.upper[k] / pivot : 0.0;
        rhs[k] = (rhs[k] - (k > 0 ? sub * rhs[k - 1] : 0.0)) / pivot;
    }
    for (std::size_t k = n - 1; k-- > 0;) {
        rhs[k] -= c[k] * rhs[k + 1];
    }
    return rhs;
}

BorderedSolution solve_bordered(const BorderedSystem& sys) {
    const std::size_t n = sys.block.size();
    if (sys.coupling.size() != n || sys.rhs_field.size() != n) {
        throw std::invalid_argument("solve_bordered: inconsistent dimensions");
    }
    if (!(sys.dt > 0.0)) {
        throw std::invalid_argument("solve_bordered: dt must be positive");
    }
    // J y = rhs_field, J z = X; da = y + z di.
    const std::vector<double> y = solve_tridiagonal(sys.block, sys.rhs_field);
    const std::vector<double> z = solve_tridiagonal(sys.block, sys.coupling);

    double xty = 0.0;
    double xtz = 0.0;
    double scale = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        xty += sys.coupling[k] * y[k];
        xtz += sys.coupling[k] * z[k];
        scale += std::abs(sys.coupling[k] * z[k]);
    }
    const double schur = xtz / sys.dt;
    if (schur == 0.0 || !std::isfinite(schur) || std::abs(xtz) <= kPivotTolerance * scale) {
        throw ZeroSchurComplementError("Schur complement of the circuit row vanishes");
    }
    BorderedSolution out;
    out.di = (sys.rhs_circuit - xty / sys.dt) / schur;
    out.da.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        out.da[k] = y[k] + z[k] * out.di;
    }
    return out;
}

}  // namespace eddymgrit::stepper
