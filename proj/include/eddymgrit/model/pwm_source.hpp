#pragma once

namespace eddymgrit::model {

/// Sine-triangle PWM voltage source: a sawtooth with `teeth` teeth per
/// period is compared against |sin(2 pi t / T)|.
struct PwmSource {
    double amplitude = 0.25;  ///< V
    double period = 0.02;     ///< s
    int teeth = 200;

    /// Throws std::invalid_argument when amplitude < 0, period <= 0 or teeth < 1.
    void validate() const;
};

/// Switching state p(t) in {-1, 0, +1}.
[[nodiscard]] int eval_pwm(double t, const PwmSource& src);

/// Source voltage amplitude * p(t) in volts.
[[nodiscard]] double eval_voltage(double t, const PwmSource& src);

}  // namespace eddymgrit::model
