#include "eddymgrit/cli/config.hpp"

#include <doctest.h>

#include <filesystem>

using namespace eddymgrit;
using cli::ConfigError;

namespace {

ConfigError error_of(std::string_view text) {
    try {
        (void)cli::parse_config_text(text);
    } catch (const ConfigError& e) {
        return e;
    }
    FAIL("expected a configuration error");
    return ConfigError("", 0, "");
}

}  // namespace

TEST_CASE("minimal file gets defaults") {
    const auto c = cli::parse_config_text("nt=1024, levels=3, m=8\n");
    CHECK(c.time.nt == 1024);
    CHECK(c.solver.levels == 3);
    CHECK(c.solver.m == 8);
    CHECK(c.problem.nodes == 65);
    CHECK(c.time.t_end == 0.04);
    CHECK(c.solver.tol == 1e-6);
    CHECK(c.solver.max_iter == 100);
    CHECK(c.solver.cycle == mgrit::CycleType::V);
    CHECK(c.exec.workers == 1);
    CHECK(c.exec.deterministic);
    CHECK(c.problem.source.amplitude == 0.25);
    CHECK(c.problem.sigma == 1e7);
}

TEST_CASE("divisibility violation names the key and its line") {
    const auto e = error_of("# header\nm = 8\nlevels = 3\nnt = 1000\n");
    CHECK(e.key() == "time.nt");
    CHECK(e.line() == 4);
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);

    const auto same_line = error_of("nt=1000, m=8, levels=3");
    CHECK(same_line.key() == "time.nt");
    CHECK(same_line.line() == 1);
}

TEST_CASE("syntax and type errors") {
    CHECK(error_of("time.nt = 64\nsolver.bogus = 1\n").line() == 2);
    CHECK(error_of("solver.bogus = 1").key() == "solver.bogus");
    CHECK(error_of("time.nt = sixty").key() == "time.nt");
    CHECK(error_of("solver.tol = 1e-6x").key() == "solver.tol");
    CHECK(error_of("solver.cycle = W").key() == "solver.cycle");
    CHECK(error_of("time.nt =").key() == "time.nt");
    CHECK(error_of("time.nt").line() == 1);
    const auto dup = error_of("nt = 64\ntime.nt = 128\n");
    CHECK(dup.key() == "time.nt");
    CHECK(dup.line() == 2);
    CHECK(error_of("solver.levels = 3\nsolver.coarse_operator = ideal\n").key() == "solver.coarse_operator");
    CHECK(error_of("problem.nu_table = /nonexistent/table.txt").key() == "problem.nu_table");
    CHECK(error_of("exec.workers = 0").key() == "exec.workers");
}

TEST_CASE("shipped configurations parse") {
    const std::filesystem::path dir = EDDYMGRIT_SOURCE_DIR "/configs";
    const auto fine = cli::parse_config(dir / "fine_grid.cfg");
    CHECK(fine.time.nt == 16384);
    CHECK(fine.solver.m == 64);
    CHECK(fine.solver.levels == 3);
    CHECK(fine.solver.tol == 1e-6);
    CHECK(fine.text.find("nt = 16384") != std::string::npos);

    const auto lin = cli::parse_config(dir / "linear.cfg");
    CHECK(lin.problem.shield_model == cli::ShieldModel::constant);
    CHECK(lin.solver.coarse == mgrit::CoarseOperator::ideal);

    CHECK_NOTHROW((void)cli::parse_config(dir / "desk.cfg"));
    CHECK_THROWS_AS((void)cli::parse_config(dir / "missing.cfg"), ConfigError);
}

TEST_CASE("relative table paths resolve against the config directory") {
    const auto c = cli::parse_config_text("problem.nu_table = bh_soft_iron.txt", EDDYMGRIT_SOURCE_DIR "/data");
    CHECK(c.problem.nu_table == std::filesystem::path(EDDYMGRIT_SOURCE_DIR "/data/bh_soft_iron.txt"));
}
