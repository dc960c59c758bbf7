#pragma once

#include "eddymgrit/cli/config.hpp"
#include "eddymgrit/mgrit/solve.hpp"
#include "eddymgrit/model/coax_model.hpp"

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace eddymgrit::cli {

enum class RunMode { mgrit, baseline };

[[nodiscard]] model::CoaxModel build_model(const RunConfig& config);
/// One level for baseline runs or levels == 1.
[[nodiscard]] mgrit::Hierarchy build_time_grid(const RunConfig& config, RunMode mode);

/// Potential probes: wire centre, inner shield surface, middle of the shield.
[[nodiscard]] std::array<std::size_t, 3> probe_nodes(const model::Mesh1D& mesh);

struct RunOutcome {
    RunMode mode = RunMode::mgrit;
    bool converged = false;
    std::size_t iterations = 0;
    double initial_residual = 0.0;
    double final_residual = 0.0;
    std::vector<double> history;
    std::vector<double> cycle_seconds;
    double total_seconds = 0.0;
    bool monotone = true;
    std::vector<double> times;
    std::vector<model::State> u;

    /// 0 converged, 2 not converged.
    [[nodiscard]] int exit_code() const noexcept { return converged ? 0 : 2; }
};

/// MGRIT, or sequential time stepping when levels == 1. No file output.
[[nodiscard]] RunOutcome execute(const RunConfig& config, RunMode mode);

/// residual_history.csv, solution.csv, summary.txt and optionally fields.bin.
void write_outputs(const RunConfig& config, const RunOutcome& outcome, const std::filesystem::path& dir);

/// execute + write_outputs with diagnostics on `log`; returns the exit code
/// (1 on solver or output errors).
int run(const RunConfig& config, RunMode mode, std::ostream& log);

/// solution.csv contents: rows of t, i, a_probe0, a_probe1, a_probe2.
struct SolutionTable {
    std::vector<std::array<double, 5>> rows;
};

class CompareError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

[[nodiscard]] SolutionTable read_solution(const std::filesystem::path& csv);

struct ColumnDifference {
    std::string name;
    double max_abs = 0.0;
    /// max_abs divided by the largest magnitude of the column in the reference.
    double max_rel = 0.0;
};

struct CompareReport {
    std::vector<ColumnDifference> columns;
    [[nodiscard]] bool within(double tol) const;
};

/// Differences of i and the probe potentials of `a` relative to `reference`.
/// Throws CompareError when the time grids differ.
[[nodiscard]] CompareReport compare_solutions(const SolutionTable& a, const SolutionTable& reference);
[[nodiscard]] CompareReport compare_runs(const std::filesystem::path& dir_a, const std::filesystem::path& dir_b);

struct SweepEntry {
    mgrit::CycleType cycle = mgrit::CycleType::V;
    std::size_t levels = 0;
    std::size_t m = 0;
    RunOutcome outcome;
};

/// Runs every (levels[k], m[k]) pair with every cycle type. A single m is
/// used for all level counts.
[[nodiscard]] std::vector<SweepEntry> sweep(const RunConfig& base, const std::vector<std::size_t>& levels,
                                            const std::vector<std::size_t>& m,
                                            const std::vector<mgrit::CycleType>& cycles, std::ostream* progress);

/// Iteration counts with cycles as rows and hierarchies as columns.
void print_sweep_table(const std::vector<SweepEntry>& entries, std::ostream& out);
void write_sweep_csv(const std::vector<SweepEntry>& entries, const std::filesystem::path& csv);

}  // namespace eddymgrit::cli
