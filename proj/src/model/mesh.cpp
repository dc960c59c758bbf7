#include "eddymgrit/model/mesh.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace eddymgrit::model {

std::string_view to_string(Region r) noexcept {
    switch (r) {
    case Region::wire:
        return "wire";
    case Region::insulator:
        return "insulator";
    case Region::shield:
        return "shield";
    }
    return "?";
}

namespace {

Region expected_region(double r_left, double r_right, const CoaxGeometry& g) {
    if (r_right <= g.r_wire) {
        return Region::wire;
    }
    if (r_left >= g.r_wire && r_right <= g.r_ins) {
        return Region::insulator;
    }
    if (r_left >= g.r_ins) {
        return Region::shield;
    }
    throw std::invalid_argument("mesh element [" + std::to_string(r_left) + ", " + std::to_string(r_right) +
                                "] straddles a region boundary");
}

}  // namespace

Mesh1D::Mesh1D(std::vector<double> radii, std::vector<Region> element_regions, CoaxGeometry geometry)
    : radii_(std::move(radii)), regions_(std::move(element_regions)), geometry_(geometry) {
    const auto& g = geometry_;
    if (!(0.0 < g.r_wire && g.r_wire < g.r_ins && g.r_ins < g.r_out)) {
        throw std::invalid_argument("coax geometry requires 0 < r_wire < r_ins < r_out");
    }
    if (radii_.size() < 2) {
        throw std::invalid_argument("mesh needs at least two nodes");
    }
    if (regions_.size() + 1 != radii_.size()) {
        throw std::invalid_argument("mesh needs exactly one region tag per element");
    }
    if (radii_.front() != 0.0) {
        throw std::invalid_argument("mesh must start on the axis (r_0 = 0)");
    }
    if (radii_.back() != g.r_out) {
        throw std::invalid_argument("mesh must end at the outer radius");
    }
    for (std::size_t k = 1; k < radii_.size(); ++k) {
        if (!(radii_[k] > radii_[k - 1])) {
            throw std::invalid_argument("mesh radii must be strictly increasing");
        }
    }
    (void)node_at(g.r_wire);
    (void)node_at(g.r_ins);
    for (std::size_t e = 0; e < regions_.size(); ++e) {
        if (expected_region(radii_[e], radii_[e + 1], g) != regions_[e]) {
            throw std::invalid_argument("element " + std::to_string(e) + " is tagged " +
                                        std::string(to_string(regions_[e])) +
                                        " but lies in a different region");
        }
    }
}

Mesh1D Mesh1D::coax(std::size_t node_count, const CoaxGeometry& geometry) {
    if (node_count < 4) {
        throw std::invalid_argument("coax mesh needs at least 4 nodes (one element per region)");
    }
    const std::size_t elements = node_count - 1;
    const std::array<double, 4> bounds{0.0, geometry.r_wire, geometry.r_ins, geometry.r_out};
    const double total = geometry.r_out;

    // Largest-remainder apportionment with at least one element per region.
    std::array<std::size_t, 3> count{};
    std::array<double, 3> remainder{};
    std::size_t assigned = 0;
    for (std::size_t k = 0; k < 3; ++k) {
        const double share = static_cast<double>(elements) * (bounds[k + 1] - bounds[k]) / total;
        count[k] = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(share)));
        remainder[k] = share - std::floor(share);
        assigned += count[k];
    }
    while (assigned < elements) {
        const auto k = static_cast<std::size_t>(std::max_element(remainder.begin(), remainder.end()) - remainder.begin());
        ++count[k];
        remainder[k] = -1.0;
        ++assigned;
    }
    while (assigned > elements) {
        const auto k = static_cast<std::size_t>(std::max_element(count.begin(), count.end()) - count.begin());
        --count[k];
        --assigned;
    }

    std::vector<double> radii{0.0};
    std::vector<Region> regions;
    for (std::size_t k = 0; k < 3; ++k) {
        const double h = (bounds[k + 1] - bounds[k]) / static_cast<double>(count[k]);
        for (std::size_t e = 1; e <= count[k]; ++e) {
            radii.push_back(e == count[k] ? bounds[k + 1] : bounds[k] + static_cast<double>(e) * h);
            regions.push_back(static_cast<Region>(k));
        }
    }
    return Mesh1D(std::move(radii), std::move(regions), geometry);
}

std::size_t Mesh1D::node_at(double r) const {
    auto it = std::lower_bound(radii_.begin(), radii_.end(), r);
    if (it == radii_.end() || *it != r) {
        throw std::invalid_argument("no mesh node at r = " + std::to_string(r));
    }
    return static_cast<std::size_t>(it - radii_.begin());
}

std::size_t Mesh1D::nearest_node(double r) const {
    std::size_t best = 0;
    for (std::size_t k = 1; k < radii_.size(); ++k) {
        if (std::abs(radii_[k] - r) < std::abs(radii_[best] - r)) {
            best = k;
        }
    }
    return best;
}

}  // namespace eddymgrit::model
