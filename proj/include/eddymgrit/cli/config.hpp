#pragma once

#include "eddymgrit/mgrit/engine.hpp"
#include "eddymgrit/model/materials.hpp"
#include "eddymgrit/model/mesh.hpp"
#include "eddymgrit/model/pwm_source.hpp"
#include "eddymgrit/stepper/backward_euler.hpp"

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

namespace eddymgrit::cli {

enum class ShieldModel { spline, constant };

struct ProblemConfig {
    std::size_t nodes = 65;
    model::CoaxGeometry geometry;
    double sigma = 1.0e7;
    /// B-nu table for the shield; empty selects the built-in soft-iron curve.
    std::filesystem::path nu_table;
    ShieldModel shield_model = ShieldModel::spline;
    /// Shield reluctivity of the constant model, m/H.
    double shield_nu = 400.0;
    model::PwmSource source;
};

struct TimeConfig {
    double t_end = 0.04;
    std::size_t nt = 1024;
};

struct SolverConfig {
    mgrit::CycleType cycle = mgrit::CycleType::V;
    /// 1 means sequential time stepping.
    std::size_t levels = 3;
    std::size_t m = 16;
    double tol = 1.0e-6;
    std::size_t max_iter = 100;
    mgrit::CoarseOperator coarse = mgrit::CoarseOperator::rediscretized;
    stepper::NewtonConfig newton;
};

struct ExecConfig {
    std::size_t workers = 1;
    bool deterministic = true;
};

struct OutputConfig {
    std::filesystem::path dir = "run";
    bool dump_fields = false;
};

struct RunConfig {
    ProblemConfig problem;
    TimeConfig time;
    SolverConfig solver;
    ExecConfig exec;
    OutputConfig output;
    /// The configuration text as read, echoed into the run summary.
    std::string text;
};

/// Bad configuration; `key` is the canonical key and `line` its line in
/// the file (0 when the value is a default).
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, std::size_t line, const std::string& message);
    [[nodiscard]] const std::string& key() const noexcept { return key_; }
    [[nodiscard]] std::size_t line() const noexcept { return line_; }
    /// The description without key and line.
    [[nodiscard]] const std::string& message() const noexcept { return message_; }

private:
    std::string key_;
    std::size_t line_;
    std::string message_;
};

/// Parses "key = value" lines with '#' comments. Keys are
/// section.name (problem, time, solver, exec, output) or one of the short
/// aliases (nt, levels, m, tol, cycle, ...). Several assignments may share
/// a line when separated by commas. A relative problem.nu_table is resolved
/// against `base_dir`; output.dir is taken as given. Applies defaults and
/// validates the result.
[[nodiscard]] RunConfig parse_config_text(std::string_view text, const std::filesystem::path& base_dir = {});
[[nodiscard]] RunConfig parse_config(const std::filesystem::path& path);

/// Throws ConfigError for inconsistent settings (line 0).
void validate(const RunConfig& config);

[[nodiscard]] std::string_view to_string(mgrit::CycleType c);
[[nodiscard]] std::string_view to_string(mgrit::CoarseOperator c);
[[nodiscard]] std::string_view to_string(ShieldModel s);

}  // namespace eddymgrit::cli
