#pragma once

#include "eddymgrit/model/materials.hpp"
#include "eddymgrit/model/mesh.hpp"
#include "eddymgrit/model/tridiagonal.hpp"

#include <span>
#include <vector>

namespace eddymgrit::model {

/// Flux density below which the differential reluctivity is frozen.
inline constexpr double kFluxDensityFloor = 1.0e-12;  // T

/// State-independent discrete operators, per unit axial length.
struct AssembledOperators {
    /// M_pq = integral of sigma phi_p phi_q 2 pi r dr, over all nodes.
    Tridiagonal mass;
    /// X_p = integral of chi phi_p 2 pi r dr with chi = 1/S_0 on the wire.
    std::vector<double> winding;
};

/// Linear elements, two-point Gauss quadrature on the weight 2 pi r dr.
/// Throws std::invalid_argument when element tags do not match the region
/// boundaries or the material map is inconsistent.
[[nodiscard]] AssembledOperators assemble(const Mesh1D& mesh, const MaterialMap& materials);

struct StiffnessEvaluation {
    std::vector<double> action;  ///< K(a) a, one entry per node
    Tridiagonal jacobian;        ///< d(K(a) a)/da, over all nodes
    /// Per node, the sum of magnitudes of the terms entering K(a) a when
    /// every nodal value is taken in absolute value; eps times this bounds
    /// the rounding error of the action.
    std::vector<double> magnitude;
};

/// Weak form of -(1/r) d/dr (r nu(|a'|) a') with B = |a'| per quadrature
/// point. The Jacobian uses the differential reluctivity nu + B dnu/dB.
[[nodiscard]] StiffnessEvaluation stiffness_and_jacobian(std::span<const double> a, const Mesh1D& mesh,
                                                         const MaterialMap& materials);

/// X^T a
[[nodiscard]] double flux_linkage(std::span<const double> a, const AssembledOperators& ops);

}  // namespace eddymgrit::model
