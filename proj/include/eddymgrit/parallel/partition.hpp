#pragma once

#include "eddymgrit/mgrit/layout.hpp"
#include "eddymgrit/mgrit/time_grid.hpp"

#include <cstddef>
#include <vector>

namespace eddymgrit::parallel {

using mgrit::IndexRange;
using mgrit::Layout;

/// Balanced contiguous blocks; the first points % workers blocks get one
/// extra point. Requires 1 <= workers <= points.
[[nodiscard]] std::vector<IndexRange> split_points(std::size_t points, std::size_t workers);

/// Finest level split by split_points, coarser levels by C-point image.
[[nodiscard]] Layout partition(const mgrit::Hierarchy& h, std::size_t workers);

}  // namespace eddymgrit::parallel
