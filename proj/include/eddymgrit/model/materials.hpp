#pragma once

#include "eddymgrit/model/mesh.hpp"
#include "eddymgrit/model/reluctivity_spline.hpp"

#include <array>
#include <optional>

namespace eddymgrit::model {

/// Either a constant reluctivity or a field-dependent spline.
class Reluctivity {
public:
    [[nodiscard]] static Reluctivity constant(double nu);
    [[nodiscard]] static Reluctivity spline(ReluctivitySpline s);

    [[nodiscard]] ReluctivityValue evaluate(double b) const;
    [[nodiscard]] bool is_constant() const noexcept { return !spline_.has_value(); }
    [[nodiscard]] const std::optional<ReluctivitySpline>& curve() const noexcept { return spline_; }

private:
    Reluctivity() = default;

    double constant_ = kNuVacuum;
    std::optional<ReluctivitySpline> spline_;
};

struct MaterialMap {
    std::array<double, 3> sigma{0.0, 0.0, 1.0e7};  ///< S/m, indexed by Region
    std::array<Reluctivity, 3> nu{Reluctivity::constant(kNuVacuum), Reluctivity::constant(kNuVacuum),
                                  Reluctivity::spline(ReluctivitySpline::default_soft_iron())};

    /// Vacuum wire and insulator, conducting shield with the given law.
    [[nodiscard]] static MaterialMap coax(double shield_sigma, Reluctivity shield_nu);

    [[nodiscard]] double conductivity(Region r) const { return sigma[static_cast<std::size_t>(r)]; }
    [[nodiscard]] const Reluctivity& reluctivity(Region r) const { return nu[static_cast<std::size_t>(r)]; }

    /// sigma must vanish outside the shield and be positive inside it.
    void validate() const;
};

/// nu and dnu/dB for the material of `region`. Throws std::domain_error for b < 0.
[[nodiscard]] ReluctivityValue eval_reluctivity(double b, Region region, const MaterialMap& materials);

}  // namespace eddymgrit::model
