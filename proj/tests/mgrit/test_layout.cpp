#include "eddymgrit/mgrit/layout.hpp"
#include "eddymgrit/mgrit/space_time.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace eddymgrit::mgrit;

TEST_CASE("serial layout owns everything on rank 0") {
    const auto h = build_hierarchy(16, 4, 3, 0.0, 1.0);
    const auto lay = Layout::serial(h);
    CHECK(lay.workers == 1);
    for (std::size_t l = 0; l < 3; ++l) {
        CHECK(lay.range(l, 0) == IndexRange{0, h.level(l).points()});
        CHECK(lay.owner(l, h.level(l).points() - 1) == 0);
    }
    CHECK_THROWS_AS((void)lay.owner(0, 17), std::out_of_range);
}

TEST_CASE("coarse ownership follows the fine C-points") {
    const auto h = build_hierarchy(16, 4, 2, 0.0, 1.0);
    const auto lay = Layout::from_fine_ranges(h, {{0, 6}, {6, 9}, {9, 17}});
    CHECK(lay.range(1, 0) == IndexRange{0, 2});
    CHECK(lay.range(1, 1) == IndexRange{2, 3});
    CHECK(lay.range(1, 2) == IndexRange{3, 5});

    const auto sparse = Layout::from_fine_ranges(h, {{0, 4}, {4, 5}, {5, 8}, {8, 17}});
    CHECK(sparse.range(1, 2).empty());
    CHECK(sparse.next_active(1, 1) == 3);
    CHECK(sparse.prev_active(1, 3) == 1);
    CHECK_FALSE(sparse.prev_active(1, 0).has_value());
    CHECK_FALSE(sparse.next_active(1, 3).has_value());

    CHECK_THROWS_AS((void)Layout::from_fine_ranges(h, {{0, 6}, {7, 17}}), std::invalid_argument);
    CHECK_THROWS_AS((void)Layout::from_fine_ranges(h, {{0, 6}, {6, 16}}), std::invalid_argument);
}

TEST_CASE("space-time function indexes by global time index") {
    std::vector<State> u(3, State::zeros(2));
    std::vector<State> g(3, State::zeros(2));
    u[1].i = 7.0;
    SpaceTimeFunction f({4, 7}, u, g);
    std::vector<std::size_t> seen;
    f.set_read_hook([&](std::size_t j) { seen.push_back(j); });
    CHECK(f.u(5).i == 7.0);
    f.g(6).i = 1.0;
    CHECK(f.g_values()[2].i == 1.0);
    CHECK(seen == std::vector<std::size_t>{5, 6});
    CHECK_THROWS_AS((void)f.u(3), std::out_of_range);
    CHECK_THROWS_AS((void)f.g(7), std::out_of_range);
}
