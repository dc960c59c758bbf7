#include "eddymgrit/model/coax_model.hpp"

#include <cmath>
#include <stdexcept>

namespace eddymgrit::model {

CoaxModel::CoaxModel(Mesh1D mesh, MaterialMap materials, PwmSource source)
    : mesh_(std::move(mesh)), materials_(std::move(materials)), source_(source) {
    source_.validate();
    ops_ = assemble(mesh_, materials_);
}

State CoaxModel::source_rhs(double t) const {
    State g = zero_state();
    g.i = eval_voltage(t, source_);
    return g;
}

State CoaxModel::row_action(const State& u, const State& u_prev, double dt, StiffnessEvaluation* stiffness_out,
                             State* magnitude) const {
    const std::size_t n = node_count();
    if (u.a.size() != n || u_prev.a.size() != n) {
        throw std::invalid_argument("row_action: state has wrong number of nodes");
    }
    std::vector<double> rate(n);
    for (std::size_t k = 0; k < n; ++k) {
        rate[k] = (u.a[k] - u_prev.a[k]) / dt;
    }
    auto stiffness = stiffness_and_jacobian(u.a, mesh_, materials_);
    const auto mass_rate = ops_.mass.multiply(rate);

    State r = zero_state();
    double circuit = 0.0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        r.a[k] = mass_rate[k] + stiffness.action[k] - ops_.winding[k] * u.i;
        circuit += ops_.winding[k] * rate[k];
    }
    r.i = circuit;
    if (magnitude != nullptr) {
        std::vector<double> size(n);
        for (std::size_t k = 0; k < n; ++k) {
            size[k] = (std::abs(u.a[k]) + std::abs(u_prev.a[k])) / dt;
        }
        const auto& mass = ops_.mass;
        *magnitude = zero_state();
        double circuit_size = 0.0;
        for (std::size_t k = 0; k + 1 < n; ++k) {
            double m = std::abs(mass.diag[k]) * size[k];
            if (k > 0) {
                m += std::abs(mass.lower[k]) * size[k - 1];
            }
            m += std::abs(mass.upper[k]) * size[k + 1];
            magnitude->a[k] = m + stiffness.magnitude[k] + std::abs(ops_.winding[k] * u.i);
            circuit_size += std::abs(ops_.winding[k]) * size[k];
        }
        magnitude->i = circuit_size;
    }
    if (stiffness_out != nullptr) {
        *stiffness_out = std::move(stiffness);
    }
    return r;
}

std::vector<double> dae_residual(const State& u, const State& u_prev, double dt, double t, const CoaxModel& model) {
    if (!(dt > 0.0)) {
        throw std::invalid_argument("dae_residual: dt must be positive");
    }
    if (u.a.size() != model.node_count() || u_prev.a.size() != model.node_count()) {
        throw std::invalid_argument("dae_residual: state has wrong number of nodes");
    }
    const State r = model.row_action(u, u_prev, dt);
    std::vector<double> flat(r.a.begin(), r.a.end() - 1);
    flat.push_back(r.i - eval_voltage(t, model.source()));
    return flat;
}

}  // namespace eddymgrit::model
