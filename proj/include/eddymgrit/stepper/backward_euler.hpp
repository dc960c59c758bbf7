#pragma once

#include "eddymgrit/model/coax_model.hpp"
#include "eddymgrit/model/state.hpp"

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace eddymgrit::stepper {

using model::State;

struct NewtonConfig {
    /// Absolute tolerance on the residual 2-norm divided by sqrt(rows).
    double atol = 1.0e-12;
    /// Tolerance relative to the residual of the initial iterate.
    double rtol = 1.0e-10;
    int max_iterations = 25;
    /// Fixed step length in (0, 1]; 1 is plain Newton.
    double damping = 1.0;
    /// Shorten the field update where the magnetic energy curves up sharply
    /// (saturation knee). The field rows are the gradient of a convex energy
    /// and the circuit row a linear constraint with the current as its
    /// multiplier; the step length is chosen on the Lagrangian along the
    /// Newton direction. Full steps near the solution are accepted, so the
    /// local convergence is unchanged. When off, `damping` is a fixed step.
    bool line_search = true;
    /// Cap on extra residual evaluations per Newton iteration.
    int max_line_search = 40;

    void validate() const;
};

struct NewtonReport {
    int iterations = 0;
    /// Residual evaluations spent in the line search beyond one per iteration.
    int line_search_steps = 0;
    bool converged = false;
    /// Residual norm of every iterate, starting with the initial guess.
    std::vector<double> residual_history;
    /// Acceptance threshold used for the last iterate:
    /// max(atol sqrt(rows), rtol r_0, rounding floor of the row).
    double tolerance = 0.0;
};

/// Newton did not reach its tolerance.
class NewtonFailure : public std::runtime_error {
public:
    NewtonFailure(const std::string& what, NewtonReport report)
        : std::runtime_error(what), report_(std::move(report)) {}
    [[nodiscard]] const NewtonReport& report() const noexcept { return report_; }
    [[nodiscard]] double final_residual() const noexcept {
        return report_.residual_history.empty() ? 0.0 : report_.residual_history.back();
    }

private:
    NewtonReport report_;
};

/// A step of a time-stepping sweep failed; `index` is the target time index.
class StepFailure : public std::runtime_error {
public:
    StepFailure(std::size_t index, const std::string& what) : std::runtime_error(what), index_(index) {}
    [[nodiscard]] std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

struct RowSolution {
    State u;
    NewtonReport report;
};

/// Backward Euler for the coax DAE. Each row
///
///   row_action(u, u_prev, dt) = rhs
///
/// is solved by exact Newton with a fresh Jacobian every iteration. The
/// iteration stops once the residual 2-norm drops below atol sqrt(rows),
/// below rtol times the initial residual, or below the rounding floor
/// eps * |terms| of the row, whichever is largest. The floor matters
/// because A_z carries a large absolute offset in the air regions.
/// Stateless apart from the immutable model reference; safe to share
/// between threads.
class BackwardEuler {
public:
    explicit BackwardEuler(const model::CoaxModel& model, NewtonConfig config = {});

    [[nodiscard]] const model::CoaxModel& model() const noexcept { return *model_; }
    [[nodiscard]] const NewtonConfig& config() const noexcept { return config_; }

    /// General block row with explicit right-hand side and initial iterate.
    /// Throws NewtonFailure.
    [[nodiscard]] RowSolution solve_row(const State& u_prev, double dt, const State& rhs, const State& guess) const;

    /// One step t_prev -> t_next with the source evaluated at t_next and
    /// u_prev as the initial Newton iterate.
    [[nodiscard]] State step(const State& u_prev, double t_prev, double t_next) const;
    [[nodiscard]] RowSolution step_with_report(const State& u_prev, double t_prev, double t_next) const;

private:
    const model::CoaxModel* model_;
    NewtonConfig config_;
};

struct Trajectory {
    std::vector<State> states;
    std::vector<NewtonReport> reports;  ///< reports[j-1] belongs to step j
};

/// Sequential sweep over consecutive pairs of `times`; states[0] = u0.
/// Step failures are rethrown as StepFailure carrying the failing index.
[[nodiscard]] Trajectory time_stepping(const BackwardEuler& stepper, const State& u0, std::span<const double> times);

}  // namespace eddymgrit::stepper
