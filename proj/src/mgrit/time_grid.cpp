#include "eddymgrit/mgrit/time_grid.hpp"

#include <stdexcept>
#include <string>

namespace eddymgrit::mgrit {

Hierarchy::Hierarchy(std::size_t fine_intervals, const std::vector<std::size_t>& factors, double t0, double t_end)
    : fine_intervals_(fine_intervals), t0_(t0), t_end_(t_end) {
    if (fine_intervals == 0) {
        throw std::invalid_argument("time grid needs at least one interval");
    }
    if (!(t_end > t0)) {
        throw std::invalid_argument("time grid needs t_end > t0");
    }
    std::size_t intervals = fine_intervals;
    std::size_t stride = 1;
    for (std::size_t l = 0; l <= factors.size(); ++l) {
        TimeLevel level;
        level.index = l;
        level.intervals = intervals;
        level.stride = stride;
        level.dt = (t_end - t0) * static_cast<double>(stride) / static_cast<double>(fine_intervals);
        if (l < factors.size()) {
            const std::size_t m = factors[l];
            if (m < 2) {
                throw std::invalid_argument("coarsening factor must be at least 2");
            }
            if (intervals % m != 0) {
                throw std::invalid_argument("level " + std::to_string(l) + " has " + std::to_string(intervals) +
                                            " intervals, not divisible by coarsening factor " + std::to_string(m));
            }
            level.coarsening = m;
            intervals /= m;
            stride *= m;
        }
        levels_.push_back(level);
    }
}

double Hierarchy::time(std::size_t l, std::size_t j) const {
    const std::size_t fine = j * level(l).stride;
    return t0_ + static_cast<double>(fine) * (t_end_ - t0_) / static_cast<double>(fine_intervals_);
}

std::vector<double> Hierarchy::times(std::size_t l) const {
    std::vector<double> t(level(l).points());
    for (std::size_t j = 0; j < t.size(); ++j) {
        t[j] = time(l, j);
    }
    return t;
}

Hierarchy build_hierarchy(std::size_t fine_intervals, std::size_t m, std::size_t levels, double t0, double t_end) {
    if (levels == 0) {
        throw std::invalid_argument("hierarchy needs at least one level");
    }
    return Hierarchy(fine_intervals, std::vector<std::size_t>(levels - 1, m), t0, t_end);
}

}  // namespace eddymgrit::mgrit
