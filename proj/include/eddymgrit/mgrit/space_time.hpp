#pragma once

#include "eddymgrit/mgrit/layout.hpp"
#include "eddymgrit/model/state.hpp"

#include <functional>
#include <vector>

namespace eddymgrit::mgrit {

using model::State;

/// The part of one level's space-time vectors u and g owned by a worker.
/// Row 0 of the finest level is the initial condition, g_0 = u_0.
class SpaceTimeFunction {
public:
    using ReadHook = std::function<void(std::size_t index)>;

    SpaceTimeFunction() = default;
    SpaceTimeFunction(IndexRange range, std::vector<State> u, std::vector<State> g);

    [[nodiscard]] const IndexRange& range() const noexcept { return range_; }

    /// Access by global time index; throws std::out_of_range for points the
    /// worker does not own.
    [[nodiscard]] State& u(std::size_t j);
    [[nodiscard]] const State& u(std::size_t j) const;
    [[nodiscard]] State& g(std::size_t j);
    [[nodiscard]] const State& g(std::size_t j) const;

    [[nodiscard]] std::vector<State>& u_values() noexcept { return u_; }
    [[nodiscard]] const std::vector<State>& u_values() const noexcept { return u_; }
    [[nodiscard]] std::vector<State>& g_values() noexcept { return g_; }
    [[nodiscard]] const std::vector<State>& g_values() const noexcept { return g_; }

    /// Called with the global index on every u/g access (tracing).
    void set_read_hook(ReadHook hook) { hook_ = std::move(hook); }

private:
    std::size_t offset(std::size_t j) const;

    IndexRange range_;
    std::vector<State> u_;
    std::vector<State> g_;
    ReadHook hook_;
};

}  // namespace eddymgrit::mgrit
