#include "eddymgrit/stepper/backward_euler.hpp"

#include "eddymgrit/stepper/bordered_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace eddymgrit::stepper {

namespace {

// Residuals below eps times the summed term magnitudes are rounding noise.
constexpr double kRoundoffFactor = 1.0;

// A step is accepted once the directional derivative has dropped to this
// fraction of its initial magnitude.
constexpr double kCurvature = 0.5;

}  // namespace

void NewtonConfig::validate() const {
    if (!(atol > 0.0) || !(rtol > 0.0)) {
        throw std::invalid_argument("Newton tolerances must be positive");
    }
    if (max_iterations < 1) {
        throw std::invalid_argument("Newton needs at least one iteration");
    }
    if (!(damping > 0.0 && damping <= 1.0)) {
        throw std::invalid_argument("Newton damping must lie in (0, 1]");
    }
    if (max_line_search < 0) {
        throw std::invalid_argument("Newton max_line_search must be non-negative");
    }
}

BackwardEuler::BackwardEuler(const model::CoaxModel& model, NewtonConfig config)
    : model_(&model), config_(config) {
    config_.validate();
}

RowSolution BackwardEuler::solve_row(const State& u_prev, double dt, const State& rhs, const State& guess) const {
    if (!(dt > 0.0)) {
        throw std::invalid_argument("solve_row: dt must be positive");
    }
    const model::CoaxModel& m = *model_;
    const std::size_t free = m.mesh().free_count();
    const double sqrt_rows = std::sqrt(static_cast<double>(m.row_count()));

    RowSolution out{guess, {}};
    State& u = out.u;
    NewtonReport& report = out.report;
    u.a.back() = 0.0;

    model::StiffnessEvaluation stiffness;
    State magnitude;
    double floor = 0.0;
    auto residual = [&] {
        State r = m.row_action(u, u_prev, dt, &stiffness, &magnitude);
        axpy(-1.0, rhs, r);
        r.a.back() = 0.0;
        for (std::size_t k = 0; k < free; ++k) {
            magnitude.a[k] += std::abs(rhs.a[k]);
        }
        magnitude.i += std::abs(rhs.i);
        floor = kRoundoffFactor * std::numeric_limits<double>::epsilon() * std::sqrt(free_norm_squared(magnitude));
        return r;
    };

    State r = residual();
    double norm = std::sqrt(free_norm_squared(r));
    report.residual_history.push_back(norm);
    const double abs_tol = config_.atol * sqrt_rows;
    const double rel_tol = config_.rtol * norm;
    report.tolerance = std::max({abs_tol, rel_tol, floor});
    if (norm <= std::max(abs_tol, floor)) {
        report.converged = true;
        return out;
    }

    BorderedSystem sys;
    sys.dt = dt;
    sys.coupling.assign(m.operators().winding.begin(), m.operators().winding.begin() + static_cast<std::ptrdiff_t>(free));
    for (int it = 1; it <= config_.max_iterations; ++it) {
        sys.block = stiffness.jacobian.leading(free);
        const auto& mass = m.operators().mass;
        for (std::size_t k = 0; k < free; ++k) {
            sys.block.diag[k] += mass.diag[k] / dt;
            if (k > 0) {
                sys.block.lower[k] += mass.lower[k] / dt;
            }
            if (k + 1 < free) {
                sys.block.upper[k] += mass.upper[k] / dt;
            }
        }
        sys.rhs_field.assign(r.a.begin(), r.a.begin() + static_cast<std::ptrdiff_t>(free));
        for (double& v : sys.rhs_field) {
            v = -v;
        }
        sys.rhs_circuit = -r.i;

        const BorderedSolution delta = solve_bordered(sys);
        const State base = u;
        const double current = base.i + delta.di;
        // Directional derivative of the Lagrangian along the field update, with
        // the current fixed at its Newton value; also leaves r at the trial point.
        auto slope = [&](double step) {
            for (std::size_t k = 0; k < free; ++k) {
                u.a[k] = base.a[k] + step * delta.da[k];
            }
            u.i = current;
            r = residual();
            double h = 0.0;
            for (std::size_t k = 0; k < free; ++k) {
                h += r.a[k] * delta.da[k];
            }
            return h;
        };
        double step = config_.damping;
        if (!config_.line_search) {
            for (std::size_t k = 0; k < free; ++k) {
                u.a[k] = base.a[k] + step * delta.da[k];
            }
            u.i = base.i + step * delta.di;
            r = residual();
        } else {
            double h0 = 0.0;
            for (std::size_t k = 0; k < free; ++k) {
                h0 += (r.a[k] - sys.coupling[k] * delta.di) * delta.da[k];
            }
            double h = slope(step);
            if (h0 < 0.0 && h > kCurvature * -h0) {
                // The Lagrangian is convex along the line: find its minimiser in
                // (0, step) by Illinois regula falsi.
                double lo = 0.0;
                double h_lo = h0;
                double hi = step;
                double h_hi = h;
                int side = 0;
                for (int k = 0; k < config_.max_line_search; ++k) {
                    step = lo - h_lo * (hi - lo) / (h_hi - h_lo);
                    h = slope(step);
                    ++report.line_search_steps;
                    if (std::abs(h) <= kCurvature * -h0) {
                        break;
                    }
                    if (h > 0.0) {
                        hi = step;
                        h_hi = h;
                        if (side == 1) {
                            h_lo *= 0.5;
                        }
                        side = 1;
                    } else {
                        lo = step;
                        h_lo = h;
                        if (side == -1) {
                            h_hi *= 0.5;
                        }
                        side = -1;
                    }
                }
            }
        }
        norm = std::sqrt(free_norm_squared(r));
        report.residual_history.push_back(norm);
        report.iterations = it;
        if (!std::isfinite(norm)) {
            break;
        }
        report.tolerance = std::max({abs_tol, rel_tol, floor});
        if (norm <= report.tolerance) {
            report.converged = true;
            return out;
        }
    }
    std::ostringstream msg;
    msg << "Newton did not converge in " << report.iterations << " iterations (residual " << norm
        << ", tolerance " << report.tolerance << ")";
    throw NewtonFailure(msg.str(), std::move(report));
}

State BackwardEuler::step(const State& u_prev, double t_prev, double t_next) const {
    return step_with_report(u_prev, t_prev, t_next).u;
}

RowSolution BackwardEuler::step_with_report(const State& u_prev, double t_prev, double t_next) const {
    if (!(t_next > t_prev)) {
        throw std::invalid_argument("step: t_next must exceed t_prev");
    }
    return solve_row(u_prev, t_next - t_prev, model_->source_rhs(t_next), u_prev);
}

Trajectory time_stepping(const BackwardEuler& stepper, const State& u0, std::span<const double> times) {
    if (times.empty()) {
        throw std::invalid_argument("time_stepping: empty time grid");
    }
    Trajectory traj;
    traj.states.reserve(times.size());
    traj.reports.reserve(times.size() - 1);
    traj.states.push_back(u0);
    for (std::size_t j = 1; j < times.size(); ++j) {
        try {
            RowSolution s = stepper.step_with_report(traj.states.back(), times[j - 1], times[j]);
            traj.states.push_back(std::move(s.u));
            traj.reports.push_back(std::move(s.report));
        } catch (const NewtonFailure& e) {
            throw StepFailure(j, "time step " + std::to_string(j) + ": " + e.what());
        } catch (const LinearSolveError& e) {
            throw StepFailure(j, "time step " + std::to_string(j) + ": " + e.what());
        }
    }
    return traj;
}

}  // namespace eddymgrit::stepper
