#pragma once

#include "eddymgrit/mgrit/engine.hpp"
#include "eddymgrit/model/coax_model.hpp"

#include <cstddef>
#include <vector>

namespace eddymgrit::mgrit {

struct SolveOptions {
    CycleType cycle = CycleType::V;
    double tol = 1.0e-6;
    std::size_t max_iter = 100;
    CoarseOperator coarse = CoarseOperator::rediscretized;
    bool deterministic_reduction = true;
};

struct SolveResult {
    bool converged = false;
    std::size_t iterations = 0;
    double initial_residual = 0.0;
    /// Residual norm after each cycle.
    std::vector<double> history;
    /// Wall-clock seconds of each cycle including its residual evaluation.
    std::vector<double> cycle_seconds;
    double total_seconds = 0.0;
    /// Finest-level iterate (the caller's owned slice when run per worker).
    std::vector<State> u;

    /// True when every entry of `history` is below its predecessor.
    [[nodiscard]] bool monotone() const;
};

/// Finest-level right-hand side: g_0 = u0, g_j = (0, v_s(t_j)).
[[nodiscard]] std::vector<State> make_rhs(const Hierarchy& h, const model::CoaxModel& model, const State& u0);

/// Cycles until the residual norm drops below tol or max_iter cycles ran.
/// The initial iterate defaults to u_0 at every time point. Non-convergence
/// is reported through the result, row-solve failures throw RowSolveError.
[[nodiscard]] SolveResult solve(const Hierarchy& h, const stepper::BackwardEuler& stepper,
                                const std::vector<State>& g, const SolveOptions& options,
                                const std::vector<State>* initial = nullptr);

/// The iteration loop run by every worker on its own engine; `u` in the
/// result is the worker's owned slice.
[[nodiscard]] SolveResult drive(Engine& engine, const SolveOptions& options);

}  // namespace eddymgrit::mgrit
