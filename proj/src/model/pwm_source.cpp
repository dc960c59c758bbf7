#include "eddymgrit/model/pwm_source.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace eddymgrit::model {

void PwmSource::validate() const {
    if (!(amplitude >= 0.0)) {
        throw std::invalid_argument("PWM amplitude must be non-negative");
    }
    if (!(period > 0.0)) {
        throw std::invalid_argument("PWM period must be positive");
    }
    if (teeth < 1) {
        throw std::invalid_argument("PWM teeth count must be at least 1");
    }
}

int eval_pwm(double t, const PwmSource& src) {
    const double carrier = std::sin(2.0 * std::numbers::pi * t / src.period);
    const double ramp = static_cast<double>(src.teeth) * t / src.period;
    const double sawtooth = ramp - std::floor(ramp);
    if (sawtooth - std::abs(carrier) < 0.0) {
        return (carrier > 0.0) - (carrier < 0.0);
    }
    return 0;
}

double eval_voltage(double t, const PwmSource& src) {
    return src.amplitude * static_cast<double>(eval_pwm(t, src));
}

}  // namespace eddymgrit::model
