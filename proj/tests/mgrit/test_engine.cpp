#include "support.hpp"

#include <doctest.h>

#include <functional>

using namespace eddymgrit;
using mgrit::build_hierarchy;
using testing_support::max_relative_difference;
using testing_support::SerialRig;

namespace {

const model::CoaxModel& nonlinear() {
    static const auto m = testing_support::coax(17);
    return m;
}

const model::CoaxModel& linear() {
    static const auto m = testing_support::coax(17, true);
    return m;
}

}  // namespace

TEST_CASE("F-relaxation from exact C-points reproduces the sequential trajectory") {
    const stepper::BackwardEuler be(nonlinear());
    SerialRig rig(be, build_hierarchy(32, 4, 2));
    const auto exact = testing_support::sequential(be, rig.h);
    std::vector<model::State> u(exact.size(), nonlinear().zero_state());
    for (std::size_t j = 0; j < u.size(); j += 4) {
        u[j] = exact[j];
    }
    rig.set_u(u);
    rig.engine->f_relax(0);
    CHECK(max_relative_difference(rig.u(), exact) < 1e-12);
}

TEST_CASE("relaxation leaves the zero solution of a zero source alone") {
    const model::CoaxModel quiet(model::Mesh1D::coax(17), model::MaterialMap{}, model::PwmSource{0.0, 0.02, 200});
    const stepper::BackwardEuler be(quiet);
    SerialRig rig(be, build_hierarchy(16, 4, 2));
    rig.engine->c_relax(0);
    rig.engine->fcf_relax(0);
    for (const auto& s : rig.u()) {
        CHECK(s == quiet.zero_state());
    }
}

TEST_CASE("FCF relaxation is the composition of its sweeps") {
    const stepper::BackwardEuler be(nonlinear());
    SerialRig a(be, build_hierarchy(32, 4, 2));
    SerialRig b(be, build_hierarchy(32, 4, 2));
    a.engine->fcf_relax(0);
    b.engine->f_relax(0);
    b.engine->c_relax(0);
    b.engine->f_relax(0);
    CHECK(a.u() == b.u());

    // one F-sweep already fixes the F-points for the current C-points
    const auto once = a.u();
    a.engine->f_relax(0);
    CHECK(max_relative_difference(a.u(), once) < 1e-12);
}

TEST_CASE("exact trajectory is a fixed point of relaxation and of both cycles") {
    const stepper::BackwardEuler be(nonlinear());
    const auto h = build_hierarchy(32, 4, 3);
    SerialRig rig(be, h);
    const auto exact = testing_support::sequential(be, h);
    for (auto cycle : {mgrit::CycleType::V, mgrit::CycleType::F}) {
        rig.set_u(exact);
        rig.engine->fcf_relax(0);
        CHECK(max_relative_difference(rig.u(), exact) < 1e-10);
        rig.set_u(exact);
        rig.engine->cycle(cycle);
        CHECK(max_relative_difference(rig.u(), exact) < 1e-10);
    }
}

TEST_CASE("operator applied to the trajectory reproduces the right-hand side") {
    const stepper::BackwardEuler be(nonlinear());
    SerialRig rig(be, build_hierarchy(16, 4, 2));
    const auto zero_res = rig.engine->residual(0);
    CHECK(zero_res[0] == model::difference(rig.g[0], rig.u()[0]));

    rig.set_u(testing_support::sequential(be, rig.h));
    const auto res = rig.engine->residual(0);
    for (std::size_t j = 1; j < res.size(); ++j) {
        CHECK(std::sqrt(model::free_norm_squared(res[j])) < 1e-8);
    }
    CHECK(rig.engine->residual_norm() < 1e-8);
}

TEST_CASE("injection picks the C-points") {
    const stepper::BackwardEuler be(nonlinear());
    SerialRig rig(be, build_hierarchy(16, 4, 2));
    std::vector<model::State> x(17, nonlinear().zero_state());
    for (std::size_t j = 0; j < 17; ++j) {
        x[j].i = static_cast<double>(j);
    }
    const auto coarse = rig.engine->restrict_injection(0, x);
    REQUIRE(coarse.size() == 5);
    for (std::size_t k = 0; k < 5; ++k) {
        CHECK(coarse[k].i == static_cast<double>(4 * k));
    }
}

TEST_CASE("FAS coarse problem of the exact solution gives a zero correction") {
    const stepper::BackwardEuler be(nonlinear());
    const auto h = build_hierarchy(32, 4, 2);
    SerialRig rig(be, h);
    const auto exact = testing_support::sequential(be, h);
    rig.set_u(exact);
    rig.engine->form_coarse_problem(0);
    const auto injected = rig.engine->restrict_injection(0, exact);
    CHECK(rig.u(1) == injected);
    rig.engine->coarse_solve(1);
    CHECK(max_relative_difference(rig.u(1), injected) < 1e-10);
    rig.engine->correct_ideal(0);
    CHECK(max_relative_difference(rig.u(), exact) < 1e-10);
}

TEST_CASE("coarse solve agrees with a direct row-by-row Newton solve") {
    const stepper::BackwardEuler be(nonlinear());
    const auto h = build_hierarchy(32, 4, 2);
    SerialRig rig(be, h);
    rig.engine->fcf_relax(0);
    rig.engine->form_coarse_problem(0);
    const auto g = rig.engine->level(1).g_values();
    const auto start = rig.u(1);
    rig.engine->coarse_solve(1);

    const double dt = h.level(1).dt;
    std::vector<model::State> oracle(g.size());
    oracle[0] = g[0];
    for (std::size_t k = 1; k < g.size(); ++k) {
        oracle[k] = be.solve_row(oracle[k - 1], dt, g[k], start[k]).u;
        const auto res = model::difference(nonlinear().row_action(oracle[k], oracle[k - 1], dt), g[k]);
        CHECK(std::sqrt(model::free_norm_squared(res)) < 1e-7);
    }
    CHECK(max_relative_difference(rig.u(1), oracle) < 1e-12);
}

TEST_CASE("one-interval coarse grid takes a single row solve") {
    const stepper::BackwardEuler be(nonlinear());
    SerialRig rig(be, build_hierarchy(4, 4, 2));
    rig.engine->fcf_relax(0);
    rig.engine->form_coarse_problem(0);
    rig.engine->coarse_solve(1);
    REQUIRE(rig.u(1).size() == 2);
    const auto& g = rig.engine->level(1).g_values();
    const auto res = model::difference(nonlinear().row_action(rig.u(1)[1], rig.u(1)[0], rig.h.level(1).dt), g[1]);
    CHECK(std::sqrt(model::free_norm_squared(res)) < 1e-7);
}

TEST_CASE("three-level V-cycle equals its unrolled recursion") {
    const stepper::BackwardEuler be(nonlinear());
    const auto h = build_hierarchy(32, 2, 3);
    SerialRig a(be, h);
    SerialRig b(be, h);
    for (int it = 0; it < 2; ++it) {
        a.engine->v_cycle(0);

        auto& e = *b.engine;
        e.fcf_relax(0);
        e.form_coarse_problem(0);
        e.fcf_relax(1);
        e.form_coarse_problem(1);
        e.coarse_solve(2);
        e.correct_ideal(1);
        e.correct_ideal(0);
        CHECK(a.u() == b.u());
    }
}

TEST_CASE("two-level F-cycle is a V-cycle preceded by a coarse-solve correction") {
    const stepper::BackwardEuler be(nonlinear());
    const auto h = build_hierarchy(32, 4, 2);
    SerialRig a(be, h);
    SerialRig b(be, h);
    a.engine->f_cycle(0);

    auto& e = *b.engine;
    e.fcf_relax(0);
    e.form_coarse_problem(0);
    e.coarse_solve(1);
    e.correct_ideal(0);
    e.v_cycle(0);
    CHECK(a.u() == b.u());
}

TEST_CASE("F-cycle visits levels as the standard schedule") {
    const stepper::BackwardEuler be(nonlinear());
    const std::size_t levels = 4;
    SerialRig rig(be, build_hierarchy(16, 2, levels));
    rig.engine->f_cycle(0);

    std::vector<std::size_t> expected(levels, 0);
    std::function<void(std::size_t)> v = [&](std::size_t l) {
        ++expected[l];
        if (l + 1 < levels) {
            v(l + 1);
        }
    };
    std::function<void(std::size_t)> f = [&](std::size_t l) {
        ++expected[l];
        if (l + 1 < levels) {
            f(l + 1);
            v(l);
        }
    };
    f(0);
    CHECK(rig.engine->visits() == expected);
    CHECK(expected == std::vector<std::size_t>{2, 3, 4, 4});
}

TEST_CASE("two-level cycle with the ideal coarse operator is exact for a linear problem") {
    const stepper::BackwardEuler be(linear());
    const auto h = build_hierarchy(32, 4, 2);
    mgrit::EngineOptions opt;
    opt.coarse = mgrit::CoarseOperator::ideal;
    SerialRig rig(be, h, opt);
    rig.engine->v_cycle(0);
    const auto exact = testing_support::sequential(be, h);
    CHECK(max_relative_difference(rig.u(), exact) < 1e-9);
}

TEST_CASE("engine rejects inconsistent setups") {
    const stepper::BackwardEuler be(nonlinear());
    const auto h = build_hierarchy(16, 2, 3);
    mgrit::EngineOptions opt;
    opt.coarse = mgrit::CoarseOperator::ideal;
    CHECK_THROWS_AS(SerialRig(be, h, opt), std::invalid_argument);

    const auto lay = mgrit::Layout::from_fine_ranges(h, {{0, 9}, {9, 17}});
    mgrit::SerialCommunicator comm;
    CHECK_THROWS_AS(mgrit::Engine(h, be, lay, comm), std::invalid_argument);
}
