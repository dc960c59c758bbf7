#include "eddymgrit/cli/run.hpp"

#include "eddymgrit/model/reluctivity_spline.hpp"
#include "eddymgrit/parallel/run_parallel.hpp"
#include "eddymgrit/parallel/wire.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

namespace eddymgrit::cli {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_short(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::ofstream open_out(const std::filesystem::path& p, std::ios::openmode mode = std::ios::out) {
    std::ofstream out(p, mode);
    if (!out) {
        throw std::runtime_error("cannot write " + p.string());
    }
    return out;
}

}  // namespace

model::CoaxModel build_model(const RunConfig& config) {
    const ProblemConfig& p = config.problem;
    model::Reluctivity shield = model::Reluctivity::constant(p.shield_nu);
    if (p.shield_model == ShieldModel::spline) {
        shield = model::Reluctivity::spline(p.nu_table.empty() ? model::ReluctivitySpline::default_soft_iron()
                                                               : model::read_bh_table(p.nu_table));
    }
    return model::CoaxModel(model::Mesh1D::coax(p.nodes, p.geometry), model::MaterialMap::coax(p.sigma, shield),
                            p.source);
}

mgrit::Hierarchy build_time_grid(const RunConfig& config, RunMode mode) {
    const std::size_t levels = mode == RunMode::baseline ? 1 : config.solver.levels;
    return mgrit::build_hierarchy(config.time.nt, config.solver.m, levels, 0.0, config.time.t_end);
}

std::array<std::size_t, 3> probe_nodes(const model::Mesh1D& mesh) {
    const auto& g = mesh.geometry();
    return {0, mesh.node_at(g.r_ins), mesh.nearest_node(0.5 * (g.r_ins + g.r_out))};
}

RunOutcome execute(const RunConfig& config, RunMode mode) {
    if (config.solver.levels == 1) {
        mode = RunMode::baseline;
    }
    const model::CoaxModel model = build_model(config);
    const stepper::BackwardEuler stepper(model, config.solver.newton);
    const mgrit::Hierarchy h = build_time_grid(config, mode);
    const std::vector<model::State> g = mgrit::make_rhs(h, model, model.zero_state());

    RunOutcome out;
    out.mode = mode;
    out.times = h.times(0);

    mgrit::SolveOptions options;
    options.cycle = config.solver.cycle;
    options.tol = config.solver.tol;
    options.max_iter = config.solver.max_iter;
    options.coarse = config.solver.coarse;
    options.deterministic_reduction = config.exec.deterministic;

    if (mode == RunMode::baseline) {
        const auto start = std::chrono::steady_clock::now();
        stepper::Trajectory traj = stepper::time_stepping(stepper, model.zero_state(), out.times);
        out.total_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        options.max_iter = 0;
        const mgrit::SolveResult check = mgrit::solve(h, stepper, g, options, &traj.states);
        out.converged = true;
        out.initial_residual = check.initial_residual;
        out.final_residual = check.initial_residual;
        out.u = std::move(traj.states);
        return out;
    }

    parallel::ParallelRun run = parallel::run_parallel(h, stepper, g, options, config.exec.workers);
    mgrit::SolveResult& r = run.result;
    out.converged = r.converged;
    out.iterations = r.iterations;
    out.initial_residual = r.initial_residual;
    out.final_residual = r.history.empty() ? r.initial_residual : r.history.back();
    out.monotone = r.monotone();
    out.history = std::move(r.history);
    out.cycle_seconds = std::move(r.cycle_seconds);
    out.total_seconds = r.total_seconds;
    out.u = std::move(r.u);
    return out;
}

void write_outputs(const RunConfig& config, const RunOutcome& outcome, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    const model::Mesh1D mesh = model::Mesh1D::coax(config.problem.nodes, config.problem.geometry);
    const auto probes = probe_nodes(mesh);

    {
        std::ofstream csv = open_out(dir / "residual_history.csv");
        csv << "iter,residual_norm,wall_seconds\n";
        for (std::size_t k = 0; k < outcome.history.size(); ++k) {
            csv << k + 1 << ',' << fmt(outcome.history[k]) << ',' << fmt(outcome.cycle_seconds.at(k)) << '\n';
        }
    }
    {
        std::ofstream csv = open_out(dir / "solution.csv");
        csv << "t,i,a_probe0,a_probe1,a_probe2\n";
        for (std::size_t j = 0; j < outcome.u.size(); ++j) {
            const model::State& s = outcome.u[j];
            csv << fmt(outcome.times.at(j)) << ',' << fmt(s.i) << ',' << fmt(s.a[probes[0]]) << ','
                << fmt(s.a[probes[1]]) << ',' << fmt(s.a[probes[2]]) << '\n';
        }
    }
    if (config.output.dump_fields) {
        std::ofstream bin = open_out(dir / "fields.bin", std::ios::out | std::ios::binary);
        std::vector<std::byte> buf;
        for (std::size_t j = 0; j < outcome.u.size(); ++j) {
            buf.clear();
            parallel::encode({0, static_cast<std::int32_t>(j), outcome.u[j]}, buf);
            bin.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
        }
    }
    {
        std::ofstream sum = open_out(dir / "summary.txt");
        double mean_cycle = 0.0;
        for (double s : outcome.cycle_seconds) {
            mean_cycle += s;
        }
        if (!outcome.cycle_seconds.empty()) {
            mean_cycle /= static_cast<double>(outcome.cycle_seconds.size());
        }
        sum << "mode=" << (outcome.mode == RunMode::mgrit ? "mgrit" : "baseline") << '\n'
            << "converged=" << (outcome.converged ? "true" : "false") << '\n'
            << "iterations=" << outcome.iterations << '\n'
            << "initial_residual=" << fmt(outcome.initial_residual) << '\n'
            << "final_residual=" << fmt(outcome.final_residual) << '\n'
            << "monotone=" << (outcome.monotone ? "true" : "false") << '\n'
            << "total_wall_seconds=" << fmt(outcome.total_seconds) << '\n'
            << "mean_cycle_seconds=" << fmt(mean_cycle) << '\n'
            << "nt=" << config.time.nt << '\n'
            << "levels=" << (outcome.mode == RunMode::mgrit ? config.solver.levels : 1) << '\n'
            << "m=" << config.solver.m << '\n'
            << "cycle=" << to_string(config.solver.cycle) << '\n'
            << "coarse_operator=" << to_string(config.solver.coarse) << '\n'
            << "tol=" << fmt(config.solver.tol) << '\n'
            << "workers=" << config.exec.workers << '\n'
            << "deterministic=" << (config.exec.deterministic ? "true" : "false") << '\n'
            << "probe_nodes=" << probes[0] << ',' << probes[1] << ',' << probes[2] << '\n'
            << "# config (verbatim)\n"
            << config.text;
        if (!config.text.empty() && config.text.back() != '\n') {
            sum << '\n';
        }
    }
}

int run(const RunConfig& config, RunMode mode, std::ostream& log) {
    try {
        const RunOutcome outcome = execute(config, mode);
        write_outputs(config, outcome, config.output.dir);
        if (outcome.mode == RunMode::baseline) {
            log << "time stepping: " << outcome.u.size() - 1 << " steps in " << fmt_short(outcome.total_seconds)
                << " s, space-time residual " << fmt_short(outcome.final_residual) << '\n';
        } else {
            log << "initial residual " << fmt_short(outcome.initial_residual) << '\n';
            for (std::size_t k = 0; k < outcome.history.size(); ++k) {
                log << "iter " << k + 1 << "  residual " << fmt_short(outcome.history[k]) << '\n';
            }
            log << (outcome.converged ? "converged" : "not converged") << " after " << outcome.iterations
                << " iterations, " << fmt_short(outcome.total_seconds) << " s\n";
            if (!outcome.monotone) {
                log << "note: residual history is not monotone\n";
            }
        }
        log << "output written to " << config.output.dir.string() << '\n';
        return outcome.exit_code();
    } catch (const std::exception& e) {
        log << "error: " << e.what() << '\n';
        return 1;
    }
}

SolutionTable read_solution(const std::filesystem::path& csv) {
    std::ifstream in(csv);
    if (!in) {
        throw CompareError("cannot read " + csv.string());
    }
    std::string line;
    if (!std::getline(in, line) || line.rfind("t,i,a_probe0,a_probe1,a_probe2", 0) != 0) {
        throw CompareError(csv.string() + ": missing solution.csv header");
    }
    SolutionTable table;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        std::array<double, 5> row{};
        std::istringstream fields(line);
        for (std::size_t c = 0; c < row.size(); ++c) {
            std::string cell;
            if (!std::getline(fields, cell, ',')) {
                throw CompareError(csv.string() + ":" + std::to_string(line_no) + ": expected 5 columns");
            }
            try {
                std::size_t used = 0;
                row[c] = std::stod(cell, &used);
                if (used != cell.size()) {
                    throw std::invalid_argument(cell);
                }
            } catch (const std::exception&) {
                throw CompareError(csv.string() + ":" + std::to_string(line_no) + ": bad number '" + cell + "'");
            }
        }
        table.rows.push_back(row);
    }
    return table;
}

bool CompareReport::within(double tol) const {
    return std::all_of(columns.begin(), columns.end(), [&](const ColumnDifference& c) { return c.max_rel <= tol; });
}

CompareReport compare_solutions(const SolutionTable& a, const SolutionTable& reference) {
    if (a.rows.size() != reference.rows.size()) {
        throw CompareError("time grids differ: " + std::to_string(a.rows.size()) + " vs " +
                           std::to_string(reference.rows.size()) + " points");
    }
    double t_scale = 0.0;
    for (const auto& r : reference.rows) {
        t_scale = std::max(t_scale, std::abs(r[0]));
    }
    for (std::size_t j = 0; j < a.rows.size(); ++j) {
        if (std::abs(a.rows[j][0] - reference.rows[j][0]) > 1e-12 * t_scale) {
            throw CompareError("time grids differ at point " + std::to_string(j));
        }
    }
    static const std::array<const char*, 4> names = {"i", "a_probe0", "a_probe1", "a_probe2"};
    CompareReport report;
    for (std::size_t c = 1; c < 5; ++c) {
        ColumnDifference d{names[c - 1], 0.0, 0.0};
        double scale = 0.0;
        for (std::size_t j = 0; j < a.rows.size(); ++j) {
            d.max_abs = std::max(d.max_abs, std::abs(a.rows[j][c] - reference.rows[j][c]));
            scale = std::max(scale, std::abs(reference.rows[j][c]));
        }
        d.max_rel = scale > 0.0 ? d.max_abs / scale : d.max_abs;
        report.columns.push_back(d);
    }
    return report;
}

CompareReport compare_runs(const std::filesystem::path& dir_a, const std::filesystem::path& dir_b) {
    return compare_solutions(read_solution(dir_a / "solution.csv"), read_solution(dir_b / "solution.csv"));
}

std::vector<SweepEntry> sweep(const RunConfig& base, const std::vector<std::size_t>& levels,
                              const std::vector<std::size_t>& m, const std::vector<mgrit::CycleType>& cycles,
                              std::ostream* progress) {
    if (levels.empty() || cycles.empty()) {
        throw std::invalid_argument("sweep needs at least one level count and one cycle type");
    }
    if (m.size() != 1 && m.size() != levels.size()) {
        throw std::invalid_argument("sweep needs one m, or one m per level count");
    }
    std::vector<SweepEntry> entries;
    for (std::size_t k = 0; k < levels.size(); ++k) {
        for (mgrit::CycleType cycle : cycles) {
            RunConfig c = base;
            c.solver.levels = levels[k];
            c.solver.m = m.size() == 1 ? m[0] : m[k];
            c.solver.cycle = cycle;
            validate(c);
            SweepEntry e{cycle, c.solver.levels, c.solver.m, execute(c, RunMode::mgrit)};
            if (progress != nullptr) {
                *progress << to_string(cycle) << "-cycle L=" << e.levels << " m=" << e.m << ": "
                          << e.outcome.iterations << " iterations, residual " << fmt_short(e.outcome.final_residual)
                          << ", " << fmt_short(e.outcome.total_seconds) << " s\n";
            }
            entries.push_back(std::move(e));
        }
    }
    return entries;
}

void print_sweep_table(const std::vector<SweepEntry>& entries, std::ostream& out) {
    std::vector<std::pair<std::size_t, std::size_t>> columns;
    std::vector<mgrit::CycleType> rows;
    for (const auto& e : entries) {
        if (std::find(columns.begin(), columns.end(), std::make_pair(e.levels, e.m)) == columns.end()) {
            columns.emplace_back(e.levels, e.m);
        }
        if (std::find(rows.begin(), rows.end(), e.cycle) == rows.end()) {
            rows.push_back(e.cycle);
        }
    }
    char buf[64];
    out << "cycle";
    for (const auto& [l, m] : columns) {
        std::snprintf(buf, sizeof buf, "  %12s", ("L=" + std::to_string(l) + ",m=" + std::to_string(m)).c_str());
        out << buf;
    }
    out << '\n';
    for (mgrit::CycleType cycle : rows) {
        out << "  " << to_string(cycle) << "  ";
        for (const auto& col : columns) {
            std::string cell = "-";
            for (const auto& e : entries) {
                if (e.cycle == cycle && e.levels == col.first && e.m == col.second) {
                    cell = std::to_string(e.outcome.iterations) + (e.outcome.converged ? "" : "*");
                }
            }
            std::snprintf(buf, sizeof buf, "  %12s", cell.c_str());
            out << buf;
        }
        out << '\n';
    }
    out << "(* = not converged)\n";
}

void write_sweep_csv(const std::vector<SweepEntry>& entries, const std::filesystem::path& csv) {
    if (csv.has_parent_path()) {
        std::filesystem::create_directories(csv.parent_path());
    }
    std::ofstream out = open_out(csv);
    out << "cycle,levels,m,iterations,converged,initial_residual,final_residual,total_wall_seconds\n";
    for (const auto& e : entries) {
        out << to_string(e.cycle) << ',' << e.levels << ',' << e.m << ',' << e.outcome.iterations << ','
            << (e.outcome.converged ? 1 : 0) << ',' << fmt(e.outcome.initial_residual) << ','
            << fmt(e.outcome.final_residual) << ',' << fmt(e.outcome.total_seconds) << '\n';
    }
}

}  // namespace eddymgrit::cli
