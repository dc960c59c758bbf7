#pragma once

#include <cstddef>
#include <vector>

namespace eddymgrit::mgrit {

/// One temporal grid of the hierarchy. Level 0 is the finest.
struct TimeLevel {
    std::size_t index = 0;
    std::size_t intervals = 0;
    /// Fine intervals per interval of this level (product of the coarsening
    /// factors below it).
    std::size_t stride = 1;
    /// Coarsening factor to the next level; 0 on the coarsest level.
    std::size_t coarsening = 0;
    double dt = 0.0;

    [[nodiscard]] std::size_t points() const noexcept { return intervals + 1; }
    [[nodiscard]] bool is_coarsest() const noexcept { return coarsening == 0; }
    [[nodiscard]] bool is_c_point(std::size_t j) const noexcept { return coarsening != 0 && j % coarsening == 0; }
};

/// Uniform temporal grids on [t0, t_end]; level l+1 consists exactly of the
/// C-points of level l.
class Hierarchy {
public:
    /// Per-level coarsening factors (one fewer than levels). Throws
    /// std::invalid_argument when a factor is < 2 or does not divide the
    /// interval count of its level.
    Hierarchy(std::size_t fine_intervals, const std::vector<std::size_t>& factors, double t0, double t_end);

    [[nodiscard]] std::size_t level_count() const noexcept { return levels_.size(); }
    [[nodiscard]] const TimeLevel& level(std::size_t l) const { return levels_.at(l); }
    [[nodiscard]] const std::vector<TimeLevel>& levels() const noexcept { return levels_; }
    [[nodiscard]] std::size_t fine_intervals() const noexcept { return fine_intervals_; }
    [[nodiscard]] double t0() const noexcept { return t0_; }
    [[nodiscard]] double t_end() const noexcept { return t_end_; }

    /// Time of point j on level l, computed from the fine index j * stride
    /// so coarse points coincide bitwise with their fine C-points.
    [[nodiscard]] double time(std::size_t l, std::size_t j) const;
    [[nodiscard]] std::vector<double> times(std::size_t l) const;

private:
    std::size_t fine_intervals_;
    double t0_;
    double t_end_;
    std::vector<TimeLevel> levels_;
};

/// Uniform factor m on all levels. Requires m >= 2 when levels > 1 and
/// fine_intervals divisible by m^(levels-1).
[[nodiscard]] Hierarchy build_hierarchy(std::size_t fine_intervals, std::size_t m, std::size_t levels,
                                        double t0 = 0.0, double t_end = 0.04);

}  // namespace eddymgrit::mgrit
