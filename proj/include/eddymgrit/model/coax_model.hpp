#pragma once

#include "eddymgrit/model/assembly.hpp"
#include "eddymgrit/model/materials.hpp"
#include "eddymgrit/model/mesh.hpp"
#include "eddymgrit/model/pwm_source.hpp"
#include "eddymgrit/model/state.hpp"

#include <vector>

namespace eddymgrit::model {

/// Semi-discrete field-circuit model of the coaxial cable
///
///   M da/dt + K(a) a - X i = 0
///   X^T da/dt             = v_s(t)
///
/// with a = 0 on the outer boundary. Immutable after construction.
class CoaxModel {
public:
    CoaxModel(Mesh1D mesh, MaterialMap materials, PwmSource source);

    [[nodiscard]] const Mesh1D& mesh() const noexcept { return mesh_; }
    [[nodiscard]] const MaterialMap& materials() const noexcept { return materials_; }
    [[nodiscard]] const PwmSource& source() const noexcept { return source_; }
    [[nodiscard]] const AssembledOperators& operators() const noexcept { return ops_; }

    [[nodiscard]] std::size_t node_count() const noexcept { return mesh_.node_count(); }
    /// Rows of one block: free field nodes plus the circuit row.
    [[nodiscard]] std::size_t row_count() const noexcept { return mesh_.free_count() + 1; }

    [[nodiscard]] State zero_state() const { return State::zeros(mesh_.node_count()); }

    /// Right-hand side of one backward-Euler row: zero field part, v_s(t)
    /// in the circuit row.
    [[nodiscard]] State source_rhs(double t) const;

    /// Backward-Euler block row without its source:
    ///   field:   M (a - a_prev)/dt + K(a) a - X i
    ///   circuit: X^T (a - a_prev)/dt
    /// The Dirichlet entry of the field part is zero. When `stiffness` is
    /// given it receives the stiffness evaluation at u.a; when `magnitude`
    /// is given it receives, per row, the sum of magnitudes of all terms
    /// (the scale of the rounding error of the row).
    [[nodiscard]] State row_action(const State& u, const State& u_prev, double dt,
                                   StiffnessEvaluation* stiffness = nullptr, State* magnitude = nullptr) const;

private:
    Mesh1D mesh_;
    MaterialMap materials_;
    PwmSource source_;
    AssembledOperators ops_;
};

/// Residual of one backward-Euler step, row_action(u, u_prev, dt) minus
/// (0, v_s(t)), flattened to free field rows followed by the circuit row.
/// Throws std::invalid_argument on dimension mismatch or dt <= 0.
[[nodiscard]] std::vector<double> dae_residual(const State& u, const State& u_prev, double dt, double t,
                                               const CoaxModel& model);

}  // namespace eddymgrit::model
