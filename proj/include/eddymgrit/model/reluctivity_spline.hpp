#pragma once

#include <filesystem>
#include <iosfwd>
#include <numbers>
#include <string_view>
#include <vector>

namespace eddymgrit::model {

inline constexpr double kMu0 = 4.0e-7 * std::numbers::pi;  ///< H/m
inline constexpr double kNuVacuum = 1.0 / kMu0;             ///< m/H

struct ReluctivityValue {
    double nu = 0.0;      ///< m/H
    double dnu_db = 0.0;  ///< m/(H T)
};

/// Monotone piecewise-cubic Hermite representation of nu(B).
///
/// Knot slopes follow Fritsch-Carlson: three-point averages that are zeroed
/// at local extrema and scaled back onto the circle of radius 3 in the
/// (alpha, beta) plane, so the interpolant is monotone on every interval on
/// which the data are. Below the first knot the value is held constant.
/// Beyond the last knot nu continues linearly with `extrapolation_slope()`
/// and is clamped to [min_k nu_k, max(nu_last, 1/mu_0)].
class ReluctivitySpline {
public:
    /// Extrapolation slope defaults to the Hermite slope at the last knot.
    ReluctivitySpline(std::vector<double> b, std::vector<double> nu);
    ReluctivitySpline(std::vector<double> b, std::vector<double> nu, double extrapolation_slope);

    /// Throws std::domain_error for b < 0.
    [[nodiscard]] ReluctivityValue evaluate(double b) const;

    [[nodiscard]] const std::vector<double>& knots() const noexcept { return b_; }
    [[nodiscard]] const std::vector<double>& values() const noexcept { return nu_; }
    [[nodiscard]] const std::vector<double>& slopes() const noexcept { return d_; }
    [[nodiscard]] double extrapolation_slope() const noexcept { return extrapolation_slope_; }

    /// Synthetic six-knot soft-iron-like table (not measured data).
    [[nodiscard]] static ReluctivitySpline default_soft_iron();

private:
    void compute_slopes();

    std::vector<double> b_;
    std::vector<double> nu_;
    std::vector<double> d_;
    double extrapolation_slope_ = 0.0;
    double lower_clamp_ = 0.0;
    double upper_clamp_ = 0.0;
};

/// Reads a two-column "B nu" table. '#' starts a comment; blank lines are
/// skipped. Throws std::runtime_error with the line number on malformed input.
[[nodiscard]] ReluctivitySpline parse_bh_table(std::istream& in, std::string_view source_name = "<stream>");
[[nodiscard]] ReluctivitySpline read_bh_table(const std::filesystem::path& path);

}  // namespace eddymgrit::model
