#include "eddymgrit/model/assembly.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace eddymgrit::model {

namespace {

// Two-point Gauss rule on [0, 1].
constexpr double kGaussOffset = 0.21132486540518711775;  // (1 - 1/sqrt(3)) / 2
constexpr std::array<double, 2> kGaussPoints{kGaussOffset, 1.0 - kGaussOffset};
constexpr double kGaussWeight = 0.5;

}  // namespace

AssembledOperators assemble(const Mesh1D& mesh, const MaterialMap& materials) {
    materials.validate();
    const auto& g = mesh.geometry();
    (void)mesh.node_at(g.r_wire);
    (void)mesh.node_at(g.r_ins);

    const std::size_t n = mesh.node_count();
    AssembledOperators ops{Tridiagonal(n), std::vector<double>(n, 0.0)};
    const double wire_area = std::numbers::pi * g.r_wire * g.r_wire;

    for (std::size_t e = 0; e < mesh.element_count(); ++e) {
        const double r0 = mesh.radius(e);
        const double r1 = mesh.radius(e + 1);
        const double h = r1 - r0;
        const Region region = mesh.region(e);
        const double sigma = materials.conductivity(region);
        const double chi = region == Region::wire ? 1.0 / wire_area : 0.0;

        double m00 = 0.0;
        double m01 = 0.0;
        double m11 = 0.0;
        for (double xi : kGaussPoints) {
            const double r = r0 + xi * h;
            const double w = kGaussWeight * h * 2.0 * std::numbers::pi * r;
            const double phi0 = 1.0 - xi;
            const double phi1 = xi;
            m00 += w * sigma * phi0 * phi0;
            m01 += w * sigma * phi0 * phi1;
            m11 += w * sigma * phi1 * phi1;
            ops.winding[e] += w * chi * phi0;
            ops.winding[e + 1] += w * chi * phi1;
        }
        ops.mass.add_element(e, m00, m01, m01, m11);
    }
    return ops;
}

StiffnessEvaluation stiffness_and_jacobian(std::span<const double> a, const Mesh1D& mesh,
                                           const MaterialMap& materials) {
    const std::size_t n = mesh.node_count();
    if (a.size() != n) {
        throw std::invalid_argument("stiffness: potential vector has wrong length");
    }
    StiffnessEvaluation out{std::vector<double>(n, 0.0), Tridiagonal(n), std::vector<double>(n, 0.0)};

    for (std::size_t e = 0; e < mesh.element_count(); ++e) {
        const double r0 = mesh.radius(e);
        const double h = mesh.radius(e + 1) - r0;
        const Reluctivity& law = materials.reluctivity(mesh.region(e));
        const double grad = (a[e + 1] - a[e]) / h;

        double flux = 0.0;       // integral of nu a' 2 pi r dr
        double flux_size = 0.0;  // same with |a_e| + |a_e+1| in place of a_e+1 - a_e
        double tangent = 0.0;    // integral of nu_d 2 pi r dr
        for (double xi : kGaussPoints) {
            const double r = r0 + xi * h;
            const double w = kGaussWeight * h * 2.0 * std::numbers::pi * r;
            const double b = std::abs(grad);
            const ReluctivityValue nu = law.evaluate(b);
            const double nu_d =
                b < kFluxDensityFloor ? law.evaluate(kFluxDensityFloor).nu : nu.nu + b * nu.dnu_db;
            flux += w * nu.nu * grad;
            flux_size += w * nu.nu * (std::abs(a[e]) + std::abs(a[e + 1])) / h;
            tangent += w * nu_d;
        }
        // phi_0' = -1/h, phi_1' = 1/h
        out.action[e] -= flux / h;
        out.action[e + 1] += flux / h;
        out.magnitude[e] += flux_size / h;
        out.magnitude[e + 1] += flux_size / h;
        const double k = tangent / (h * h);
        out.jacobian.add_element(e, k, -k, -k, k);
    }
    return out;
}

double flux_linkage(std::span<const double> a, const AssembledOperators& ops) {
    if (a.size() != ops.winding.size()) {
        throw std::invalid_argument("flux_linkage: potential vector has wrong length");
    }
    double sum = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        sum += ops.winding[k] * a[k];
    }
    return sum;
}

}  // namespace eddymgrit::model
