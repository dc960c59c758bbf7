#include "eddymgrit/mgrit/space_time.hpp"

#include <stdexcept>
#include <string>

namespace eddymgrit::mgrit {

SpaceTimeFunction::SpaceTimeFunction(IndexRange range, std::vector<State> u, std::vector<State> g)
    : range_(range), u_(std::move(u)), g_(std::move(g)) {
    if (u_.size() != range_.size() || g_.size() != range_.size()) {
        throw std::invalid_argument("space-time block does not match its index range");
    }
}

std::size_t SpaceTimeFunction::offset(std::size_t j) const {
    if (!range_.contains(j)) {
        throw std::out_of_range("time index " + std::to_string(j) + " is not owned (range [" +
                                std::to_string(range_.begin) + ", " + std::to_string(range_.end) + "))");
    }
    if (hook_) {
        hook_(j);
    }
    return j - range_.begin;
}

State& SpaceTimeFunction::u(std::size_t j) { return u_[offset(j)]; }
const State& SpaceTimeFunction::u(std::size_t j) const { return u_[offset(j)]; }
State& SpaceTimeFunction::g(std::size_t j) { return g_[offset(j)]; }
const State& SpaceTimeFunction::g(std::size_t j) const { return g_[offset(j)]; }

}  // namespace eddymgrit::mgrit
