#include "eddymgrit/model/tridiagonal.hpp"

#include <cassert>

namespace eddymgrit::model {

void Tridiagonal::add_element(std::size_t p, double app, double apq, double aqp, double aqq) {
    assert(p + 1 < size());
    diag[p] += app;
    upper[p] += apq;
    lower[p + 1] += aqp;
    diag[p + 1] += aqq;
}

double Tridiagonal::at(std::size_t row, std::size_t col) const {
    if (row == col) {
        return diag[row];
    }
    if (col + 1 == row) {
        return lower[row];
    }
    if (row + 1 == col) {
        return upper[row];
    }
    return 0.0;
}

std::vector<double> Tridiagonal::multiply(std::span<const double> x) const {
    const std::size_t n = size();
    assert(x.size() == n);
    std::vector<double> y(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        double v = diag[k] * x[k];
        if (k > 0) {
            v += lower[k] * x[k - 1];
        }
        if (k + 1 < n) {
            v += upper[k] * x[k + 1];
        }
        y[k] = v;
    }
    return y;
}

Tridiagonal Tridiagonal::leading(std::size_t n) const {
    assert(n <= size());
    Tridiagonal t(n);
    for (std::size_t k = 0; k < n; ++k) {
        t.lower[k] = k > 0 ? lower[k] : 0.0;
        t.diag[k] = diag[k];
        t.upper[k] = k + 1 < n ? upper[k] : 0.0;
    }
    return t;
}

}  // namespace eddymgrit::model
