#include "eddymgrit/parallel/partition.hpp"

#include <stdexcept>
#include <string>

namespace eddymgrit::parallel {

std::vector<IndexRange> split_points(std::size_t points, std::size_t workers) {
    if (workers < 1 || workers > points) {
        throw std::invalid_argument("cannot split " + std::to_string(points) + " time points over " +
                                    std::to_string(workers) + " workers");
    }
    const std::size_t base = points / workers;
    const std::size_t extra = points % workers;
    std::vector<IndexRange> out;
    out.reserve(workers);
    std::size_t begin = 0;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t size = base + (w < extra ? 1 : 0);
        out.push_back({begin, begin + size});
        begin += size;
    }
    return out;
}

Layout partition(const mgrit::Hierarchy& h, std::size_t workers) {
    return Layout::from_fine_ranges(h, split_points(h.level(0).points(), workers));
}

}  // namespace eddymgrit::parallel
