#pragma once

#include "eddymgrit/mgrit/engine.hpp"
#include "eddymgrit/mgrit/solve.hpp"
#include "eddymgrit/model/coax_model.hpp"
#include "eddymgrit/stepper/backward_euler.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

namespace testing_support {

using eddymgrit::model::State;

inline eddymgrit::model::CoaxModel coax(std::size_t nodes, bool linear = false) {
    using namespace eddymgrit::model;
    MaterialMap mats = linear ? MaterialMap::coax(1e7, Reluctivity::constant(400.0)) : MaterialMap{};
    return CoaxModel(Mesh1D::coax(nodes), mats, PwmSource{});
}

inline std::vector<State> sequential(const eddymgrit::stepper::BackwardEuler& be, const eddymgrit::mgrit::Hierarchy& h) {
    const auto times = h.times(0);
    return eddymgrit::stepper::time_stepping(be, be.model().zero_state(), times).states;
}

/// Largest difference relative to the largest magnitude of the reference,
/// over all time points, separately for potentials and current; the larger.
inline double max_relative_difference(const std::vector<State>& a, const std::vector<State>& ref) {
    double da = 0.0, di = 0.0, sa = 0.0, si = 0.0;
    for (std::size_t j = 0; j < ref.size(); ++j) {
        for (std::size_t k = 0; k < ref[j].a.size(); ++k) {
            da = std::max(da, std::abs(a[j].a[k] - ref[j].a[k]));
            sa = std::max(sa, std::abs(ref[j].a[k]));
        }
        di = std::max(di, std::abs(a[j].i - ref[j].i));
        si = std::max(si, std::abs(ref[j].i));
    }
    return std::max(sa > 0 ? da / sa : da, si > 0 ? di / si : di);
}

/// Engine over a serial layout, owning everything it points to.
struct SerialRig {
    eddymgrit::mgrit::Hierarchy h;
    eddymgrit::mgrit::Layout layout;
    eddymgrit::mgrit::SerialCommunicator comm;
    std::vector<State> g;
    std::unique_ptr<eddymgrit::mgrit::Engine> engine;

    SerialRig(const eddymgrit::stepper::BackwardEuler& be, eddymgrit::mgrit::Hierarchy hierarchy,
              eddymgrit::mgrit::EngineOptions options = {})
        : h(std::move(hierarchy)), layout(eddymgrit::mgrit::Layout::serial(h)) {
        g = eddymgrit::mgrit::make_rhs(h, be.model(), be.model().zero_state());
        engine = std::make_unique<eddymgrit::mgrit::Engine>(h, be, layout, comm, options, &g);
        const std::vector<State> u(h.level(0).points(), be.model().zero_state());
        engine->initialize(u, g);
    }

    void set_u(const std::vector<State>& u) { engine->initialize(u, g); }
    [[nodiscard]] const std::vector<State>& u(std::size_t l = 0) const { return engine->level(l).u_values(); }
};

}  // namespace testing_support
