#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace eddymgrit::model {

enum class Region { wire = 0, insulator = 1, shield = 2 };

[[nodiscard]] std::string_view to_string(Region r) noexcept;

struct CoaxGeometry {
    double r_wire = 1.0e-3;  ///< m
    double r_ins = 2.0e-3;   ///< m
    double r_out = 3.0e-3;   ///< m
};

/// Radial mesh of linear elements over [0, r_out] with one region tag per
/// element. Node 0 sits on the axis, the last node carries the Dirichlet
/// condition.
class Mesh1D {
public:
    /// Validates all invariants; throws std::invalid_argument on violation.
    Mesh1D(std::vector<double> radii, std::vector<Region> element_regions, CoaxGeometry geometry);

    /// Uniform spacing inside each region with element counts proportional
    /// to region thickness (at least one element per region).
    [[nodiscard]] static Mesh1D coax(std::size_t node_count, const CoaxGeometry& geometry = {});

    [[nodiscard]] std::size_t node_count() const noexcept { return radii_.size(); }
    [[nodiscard]] std::size_t element_count() const noexcept { return regions_.size(); }
    /// Nodes carrying unknowns (all but the Dirichlet node).
    [[nodiscard]] std::size_t free_count() const noexcept { return radii_.size() - 1; }

    [[nodiscard]] double radius(std::size_t node) const { return radii_.at(node); }
    [[nodiscard]] Region region(std::size_t element) const { return regions_.at(element); }
    [[nodiscard]] const std::vector<double>& radii() const noexcept { return radii_; }
    [[nodiscard]] const CoaxGeometry& geometry() const noexcept { return geometry_; }

    /// Index of the node located exactly at `r`; throws if there is none.
    [[nodiscard]] std::size_t node_at(double r) const;
    /// Index of the node closest to `r`.
    [[nodiscard]] std::size_t nearest_node(double r) const;

private:
    std::vector<double> radii_;
    std::vector<Region> regions_;
    CoaxGeometry geometry_;
};

}  // namespace eddymgrit::model
