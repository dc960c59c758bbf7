#include "eddymgrit/mgrit/layout.hpp"

#include <stdexcept>

namespace eddymgrit::mgrit {

std::optional<int> Layout::prev_active(std::size_t level, int rank) const {
    const auto& row = ranges.at(level);
    for (int r = rank - 1; r >= 0; --r) {
        if (!row[static_cast<std::size_t>(r)].empty()) {
            return r;
        }
    }
    return std::nullopt;
}

std::optional<int> Layout::next_active(std::size_t level, int rank) const {
    const auto& row = ranges.at(level);
    for (std::size_t r = static_cast<std::size_t>(rank) + 1; r < row.size(); ++r) {
        if (!row[r].empty()) {
            return static_cast<int>(r);
        }
    }
    return std::nullopt;
}

int Layout::owner(std::size_t level, std::size_t index) const {
    const auto& row = ranges.at(level);
    for (std::size_t r = 0; r < row.size(); ++r) {
        if (row[r].contains(index)) {
            return static_cast<int>(r);
        }
    }
    throw std::out_of_range("time index not owned by any worker");
}

Layout Layout::serial(const Hierarchy& h) {
    return from_fine_ranges(h, {IndexRange{0, h.level(0).points()}});
}

Layout Layout::from_fine_ranges(const Hierarchy& h, std::vector<IndexRange> fine) {
    if (fine.empty() || fine.front().begin != 0 || fine.back().end != h.level(0).points()) {
        throw std::invalid_argument("fine ranges must cover every time point");
    }
    for (std::size_t r = 1; r < fine.size(); ++r) {
        if (fine[r].begin != fine[r - 1].end) {
            throw std::invalid_argument("fine ranges must be contiguous and ordered by rank");
        }
    }
    Layout layout;
    layout.workers = fine.size();
    layout.ranges.push_back(std::move(fine));
    for (std::size_t l = 0; l + 1 < h.level_count(); ++l) {
        const std::size_t m = h.level(l).coarsening;
        std::vector<IndexRange> coarse;
        for (const IndexRange& r : layout.ranges.back()) {
            coarse.push_back({(r.begin + m - 1) / m, (r.end + m - 1) / m});
        }
        layout.ranges.push_back(std::move(coarse));
    }
    return layout;
}

}  // namespace eddymgrit::mgrit
