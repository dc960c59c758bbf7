#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace eddymgrit::model {

/// Square tridiagonal matrix stored by bands. lower[k] = A(k, k-1) and
/// upper[k] = A(k, k+1); lower[0] and upper[n-1] are unused (zero).
struct Tridiagonal {
    std::vector<double> lower;
    std::vector<double> diag;
    std::vector<double> upper;

    Tridiagonal() = default;
    explicit Tridiagonal(std::size_t n) : lower(n, 0.0), diag(n, 0.0), upper(n, 0.0) {}

    [[nodiscard]] std::size_t size() const noexcept { return diag.size(); }

    /// Adds a 2x2 element matrix coupling nodes p and p+1.
    void add_element(std::size_t p, double app, double apq, double aqp, double aqq);

    /// Dense entry (row, col); zero outside the three bands.
    [[nodiscard]] double at(std::size_t row, std::size_t col) const;

    /// y = A x
    [[nodiscard]] std::vector<double> multiply(std::span<const double> x) const;

    /// Leading n x n block.
    [[nodiscard]] Tridiagonal leading(std::size_t n) const;
};

}  // namespace eddymgrit::model
