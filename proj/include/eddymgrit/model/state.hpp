#pragma once

#include <cstddef>
#include <vector>

namespace eddymgrit::model {

/// Unknowns of one time point: nodal vector potentials A_z (Wb/m) on every
/// mesh node, including the Dirichlet node at the outer radius, and the
/// circuit current (A).
///
/// The same layout doubles as a block row of the space-time system: the
/// field part then holds one entry per node (the Dirichlet entry is unused
/// and kept at zero) and `i` holds the circuit row.
struct State {
    std::vector<double> a;
    double i = 0.0;

    [[nodiscard]] static State zeros(std::size_t node_count) {
        return State{std::vector<double>(node_count, 0.0), 0.0};
    }

    [[nodiscard]] std::size_t node_count() const noexcept { return a.size(); }

    friend bool operator==(const State&, const State&) = default;
};

/// x += alpha * y
void axpy(double alpha, const State& y, State& x);

/// x - y, componentwise.
[[nodiscard]] State difference(const State& x, const State& y);

/// Squared 2-norm over the free rows: all nodes except the last (Dirichlet)
/// one, plus the circuit entry.
[[nodiscard]] double free_norm_squared(const State& r);

/// Largest absolute entry over all nodes and the current.
[[nodiscard]] double max_abs(const State& s);

}  // namespace eddymgrit::model
