#include "eddymgrit/model/reluctivity_spline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace eddymgrit::model {

ReluctivitySpline::ReluctivitySpline(std::vector<double> b, std::vector<double> nu)
    : b_(std::move(b)), nu_(std::move(nu)) {
    compute_slopes();
    extrapolation_slope_ = d_.back();
    lower_clamp_ = *std::min_element(nu_.begin(), nu_.end());
    upper_clamp_ = std::max(nu_.back(), kNuVacuum);
}

ReluctivitySpline::ReluctivitySpline(std::vector<double> b, std::vector<double> nu, double extrapolation_slope)
    : ReluctivitySpline(std::move(b), std::move(nu)) {
    if (!std::isfinite(extrapolation_slope)) {
        throw std::invalid_argument("reluctivity extrapolation slope must be finite");
    }
    extrapolation_slope_ = extrapolation_slope;
}

void ReluctivitySpline::compute_slopes() {
    if (b_.size() != nu_.size()) {
        throw std::invalid_argument("reluctivity table: B and nu columns differ in length");
    }
    if (b_.size() < 2) {
        throw std::invalid_argument("reluctivity table needs at least two knots");
    }
    if (b_.front() < 0.0) {
        throw std::invalid_argument("reluctivity table: B must be non-negative");
    }
    for (std::size_t k = 0; k < b_.size(); ++k) {
        if (!std::isfinite(b_[k]) || !std::isfinite(nu_[k])) {
            throw std::invalid_argument("reluctivity table: non-finite entry");
        }
        if (nu_[k] <= 0.0) {
            throw std::invalid_argument("reluctivity table: nu must be positive");
        }
        if (k > 0 && !(b_[k] > b_[k - 1])) {
            throw std::invalid_argument("reluctivity table: B must be strictly increasing");
        }
    }

    const std::size_t n = b_.size();
    std::vector<double> secant(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        secant[k] = (nu_[k + 1] - nu_[k]) / (b_[k + 1] - b_[k]);
    }

    d_.assign(n, 0.0);
    d_.front() = secant.front();
    d_.back() = secant.back();
    for (std::size_t k = 1; k + 1 < n; ++k) {
        if (secant[k - 1] * secant[k] > 0.0) {
            d_[k] = 0.5 * (secant[k - 1] + secant[k]);
        }
    }

    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (secant[k] == 0.0) {
            d_[k] = 0.0;
            d_[k + 1] = 0.0;
            continue;
        }
        const double alpha = d_[k] / secant[k];
        const double beta = d_[k + 1] / secant[k];
        const double radius2 = alpha * alpha + beta * beta;
        if (radius2 > 9.0) {
            const double tau = 3.0 / std::sqrt(radius2);
            d_[k] = tau * alpha * secant[k];
            d_[k + 1] = tau * beta * secant[k];
        }
    }
}

ReluctivityValue ReluctivitySpline::evaluate(double b) const {
    if (b < 0.0 || std::isnan(b)) {
        throw std::domain_error("reluctivity evaluated at negative flux density");
    }
    if (b <= b_.front()) {
        return {nu_.front(), b == b_.front() ? d_.front() : 0.0};
    }
    if (b > b_.back()) {
        const double raw = nu_.back() + extrapolation_slope_ * (b - b_.back());
        if (raw >= upper_clamp_) {
            return {upper_clamp_, 0.0};
        }
        if (raw <= lower_clamp_) {
            return {lower_clamp_, 0.0};
        }
        return {raw, extrapolation_slope_};
    }

    // Interval k with b_k <= b < b_{k+1}; the last knot falls into the last interval.
    auto it = std::upper_bound(b_.begin(), b_.end(), b);
    std::size_t k = static_cast<std::size_t>(it - b_.begin()) - 1;
    if (k + 1 >= b_.size()) {
        k = b_.size() - 2;
    }
    const double h = b_[k + 1] - b_[k];
    const double s = (b - b_[k]) / h;
    const double s2 = s * s;
    const double s3 = s2 * s;

    const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
    const double h10 = s3 - 2.0 * s2 + s;
    const double h01 = -2.0 * s3 + 3.0 * s2;
    const double h11 = s3 - s2;
    const double value = h00 * nu_[k] + h10 * h * d_[k] + h01 * nu_[k + 1] + h11 * h * d_[k + 1];

    const double g00 = 6.0 * s2 - 6.0 * s;
    const double g10 = 3.0 * s2 - 4.0 * s + 1.0;
    const double g11 = 3.0 * s2 - 2.0 * s;
    const double slope = g00 * (nu_[k] - nu_[k + 1]) / h + g10 * d_[k] + g11 * d_[k + 1];
    return {value, slope};
}

ReluctivitySpline ReluctivitySpline::default_soft_iron() {
    // Synthetic curve: initial relative permeability near 2000, saturating
    // towards vacuum above ~2 T. Keep in sync with data/bh_soft_iron.txt.
    return ReluctivitySpline({0.0, 0.6, 1.2, 1.6, 2.0, 2.4},
                             {400.0, 450.0, 800.0, 3000.0, 20000.0, 120000.0});
}

ReluctivitySpline parse_bh_table(std::istream& in, std::string_view source_name) {
    std::vector<double> b;
    std::vector<double> nu;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream fields(line);
        double col_b = 0.0;
        double col_nu = 0.0;
        if (!(fields >> col_b)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) {
                continue;
            }
            throw std::runtime_error(std::string(source_name) + ":" + std::to_string(line_no) +
                                     ": expected two numbers 'B nu'");
        }
        std::string rest;
        if (!(fields >> col_nu) || (fields >> rest)) {
            throw std::runtime_error(std::string(source_name) + ":" + std::to_string(line_no) +
                                     ": expected exactly two numbers 'B nu'");
        }
        if (!b.empty() && !(col_b > b.back())) {
            throw std::runtime_error(std::string(source_name) + ":" + std::to_string(line_no) +
                                     ": B must be strictly increasing");
        }
        b.push_back(col_b);
        nu.push_back(col_nu);
    }
    try {
        return ReluctivitySpline(std::move(b), std::move(nu));
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(std::string(source_name) + ": " + e.what());
    }
}

ReluctivitySpline read_bh_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open reluctivity table '" + path.string() + "'");
    }
    return parse_bh_table(in, path.string());
}

}  // namespace eddymgrit::model
