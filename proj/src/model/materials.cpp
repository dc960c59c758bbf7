#include "eddymgrit/model/materials.hpp"

#include <cmath>
#include <stdexcept>

namespace eddymgrit::model {

Reluctivity Reluctivity::constant(double nu) {
    if (!(nu > 0.0) || !std::isfinite(nu)) {
        throw std::invalid_argument("constant reluctivity must be positive and finite");
    }
    Reluctivity r;
    r.constant_ = nu;
    return r;
}

Reluctivity Reluctivity::spline(ReluctivitySpline s) {
    Reluctivity r;
    r.spline_ = std::move(s);
    return r;
}

ReluctivityValue Reluctivity::evaluate(double b) const {
    if (spline_) {
        return spline_->evaluate(b);
    }
    if (b < 0.0 || std::isnan(b)) {
        throw std::domain_error("reluctivity evaluated at negative flux density");
    }
    return {constant_, 0.0};
}

MaterialMap MaterialMap::coax(double shield_sigma, Reluctivity shield_nu) {
    MaterialMap m;
    m.sigma = {0.0, 0.0, shield_sigma};
    m.nu[static_cast<std::size_t>(Region::shield)] = std::move(shield_nu);
    m.validate();
    return m;
}

void MaterialMap::validate() const {
    if (conductivity(Region::wire) != 0.0 || conductivity(Region::insulator) != 0.0) {
        throw std::invalid_argument("conductivity must vanish in the wire and insulator");
    }
    const double s = conductivity(Region::shield);
    if (!(s > 0.0) || !std::isfinite(s)) {
        throw std::invalid_argument("shield conductivity must be positive");
    }
}

ReluctivityValue eval_reluctivity(double b, Region region, const MaterialMap& materials) {
    return materials.reluctivity(region).evaluate(b);
}

}  // namespace eddymgrit::model
