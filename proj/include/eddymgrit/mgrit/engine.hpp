#pragma once

#include "eddymgrit/mgrit/communicator.hpp"
#include "eddymgrit/mgrit/layout.hpp"
#include "eddymgrit/mgrit/space_time.hpp"
#include "eddymgrit/mgrit/time_grid.hpp"
#include "eddymgrit/stepper/backward_euler.hpp"

#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace eddymgrit::mgrit {

enum class CycleType { V, F };

enum class CoarseOperator {
    /// Backward Euler rediscretized with the coarse step size.
    rediscretized,
    /// m fine steps per coarse step (the exact Schur complement). Two-level
    /// hierarchies only; reads the finest-level right-hand side.
    ideal,
};

struct EngineOptions {
    CoarseOperator coarse = CoarseOperator::rediscretized;
    /// Sum squared row norms in time-index order on rank 0, making the
    /// residual norm independent of the worker count. Otherwise per-rank
    /// partial sums are combined in rank order.
    bool deterministic_reduction = true;
};

/// A block row of some level could not be solved.
class RowSolveError : public std::runtime_error {
public:
    RowSolveError(std::size_t level, std::size_t index, const std::string& what)
        : std::runtime_error(what), level_(level), index_(index) {}
    [[nodiscard]] std::size_t level() const noexcept { return level_; }
    [[nodiscard]] std::size_t index() const noexcept { return index_; }

private:
    std::size_t level_;
    std::size_t index_;
};

/// Block row j >= 1 of one level: Phi_j(u_j) - Gamma_j(u_{j-1}).
class LevelOperator {
public:
    virtual ~LevelOperator() = default;
    [[nodiscard]] virtual State apply_row(std::size_t j, const State& u_j, const State& u_prev) const = 0;
    /// Solves apply_row(j, u, u_prev) = g_j for u, starting Newton at `guess`.
    [[nodiscard]] virtual State solve_row(std::size_t j, const State& u_prev, const State& g_j,
                                          const State& guess) const = 0;
};

/// One worker's view of the MGRIT iteration. Every operation below is
/// collective: all workers of the layout call it in the same order, and
/// the engine exchanges boundary States with its neighbours through the
/// communicator. With a serial layout and SerialCommunicator it is the
/// plain single-process algorithm.
///
/// Relaxation sweeps work on independent coarse intervals. A worker whose
/// range starts inside an interval receives the State just left of its
/// range; to keep the chain short each worker finishes its rightmost
/// interval and sends its last State before doing anything else.
class Engine {
public:
    /// `fine_rhs` is the complete finest-level right-hand side and is only
    /// read by the ideal coarse operator.
    Engine(const Hierarchy& hierarchy, const stepper::BackwardEuler& stepper, const Layout& layout,
           Communicator& comm, EngineOptions options = {}, const std::vector<State>* fine_rhs = nullptr);
    ~Engine();
    Engine(const Engine&) = delete;
    Engine& operator=(const Engine&) = delete;

    /// Copies the owned slices of complete finest-level vectors.
    void initialize(std::span<const State> u, std::span<const State> g);

    [[nodiscard]] SpaceTimeFunction& level(std::size_t l) { return levels_.at(l); }
    [[nodiscard]] const SpaceTimeFunction& level(std::size_t l) const { return levels_.at(l); }
    [[nodiscard]] std::size_t level_count() const noexcept { return levels_.size(); }
    [[nodiscard]] const Hierarchy& hierarchy() const noexcept { return *hierarchy_; }
    [[nodiscard]] const LevelOperator& level_operator(std::size_t l) const { return *operators_.at(l); }

    void f_relax(std::size_t l);
    void c_relax(std::size_t l);
    void fcf_relax(std::size_t l);

    /// Values at the owned C-points of level l, in order (owned part of R_I x).
    [[nodiscard]] std::vector<State> restrict_injection(std::size_t l, std::span<const State> x) const;

    /// FAS coarse problem: u_{l+1} = R u_l and
    /// g_{l+1} = A_{l+1}(R u_l) + R (g_l - A_l(u_l)). Keeps R u_l for the correction.
    void form_coarse_problem(std::size_t l);

    /// Forward solve of all rows of level l; the rows are gathered on rank 0,
    /// solved there and scattered back. Newton starts each row at the
    /// current iterate.
    void coarse_solve(std::size_t l);

    /// u_l += P (u_{l+1} - R u_l): add the error at C-points, then F-relax.
    void correct_ideal(std::size_t l);

    void v_cycle(std::size_t l);
    void f_cycle(std::size_t l);
    void cycle(CycleType type) { type == CycleType::V ? v_cycle(0) : f_cycle(0); }

    /// A_l(u_l) on the owned rows.
    [[nodiscard]] std::vector<State> apply_operator(std::size_t l);
    /// g_l - A_l(u_l) on the owned rows.
    [[nodiscard]] std::vector<State> residual(std::size_t l);
    /// 2-norm of the finest-level residual over rows j >= 1; identical on all ranks.
    [[nodiscard]] double residual_norm();

    /// Number of cycle entries per level since construction.
    [[nodiscard]] const std::vector<std::size_t>& visits() const noexcept { return visits_; }

private:
    void send_right(std::size_t l, const State& s);
    [[nodiscard]] State recv_left(std::size_t l);
    [[nodiscard]] bool has_left(std::size_t l) const;
    [[nodiscard]] bool has_right(std::size_t l) const;
    void propagate(std::size_t l, std::size_t first, std::size_t last, const State& seed);
    [[nodiscard]] State solve(std::size_t l, std::size_t j, const State& u_prev, const State& g_j,
                              const State& guess) const;

    const Hierarchy* hierarchy_;
    const stepper::BackwardEuler* stepper_;
    const Layout* layout_;
    Communicator* comm_;
    EngineOptions options_;
    int rank_;
    std::vector<std::unique_ptr<LevelOperator>> operators_;
    std::vector<SpaceTimeFunction> levels_;
    std::vector<std::vector<State>> restricted_;
    std::vector<std::size_t> visits_;
};

}  // namespace eddymgrit::mgrit
