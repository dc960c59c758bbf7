#pragma once

#include "eddymgrit/mgrit/time_grid.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace eddymgrit::mgrit {

/// Half-open range of time indices [begin, end).
struct IndexRange {
    std::size_t begin = 0;
    std::size_t end = 0;

    [[nodiscard]] bool empty() const noexcept { return begin >= end; }
    [[nodiscard]] std::size_t size() const noexcept { return empty() ? 0 : end - begin; }
    [[nodiscard]] bool contains(std::size_t j) const noexcept { return j >= begin && j < end; }

    friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

/// Ownership of time points: ranges[level][rank]. A rank owns a point of
/// level l+1 iff it owns the corresponding C-point of level l.
struct Layout {
    std::size_t workers = 1;
    std::vector<std::vector<IndexRange>> ranges;

    [[nodiscard]] const IndexRange& range(std::size_t level, int rank) const {
        return ranges.at(level).at(static_cast<std::size_t>(rank));
    }
    /// Nearest lower / higher rank owning at least one point of `level`.
    [[nodiscard]] std::optional<int> prev_active(std::size_t level, int rank) const;
    [[nodiscard]] std::optional<int> next_active(std::size_t level, int rank) const;
    [[nodiscard]] int owner(std::size_t level, std::size_t index) const;

    /// Everything on rank 0.
    [[nodiscard]] static Layout serial(const Hierarchy& h);
    /// Coarse ranges induced by fine-level ranges.
    [[nodiscard]] static Layout from_fine_ranges(const Hierarchy& h, std::vector<IndexRange> fine);
};

}  // namespace eddymgrit::mgrit
