#include "eddymgrit/cli/config.hpp"
#include "eddymgrit/cli/run.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>

using namespace eddymgrit;

namespace {

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

std::vector<std::size_t> parse_counts(const std::string& s, const char* what) {
    std::vector<std::size_t> out;
    for (const std::string& item : split_list(s)) {
        try {
            std::size_t used = 0;
            const unsigned long v = std::stoul(item, &used);
            if (used != item.size()) {
                throw std::invalid_argument(item);
            }
            out.push_back(v);
        } catch (const std::exception&) {
            throw std::invalid_argument(std::string("bad ") + what + " entry '" + item + "'");
        }
    }
    return out;
}

cli::RunConfig load(const std::string& path, const std::string& out_dir, std::size_t workers) {
    cli::RunConfig config = cli::parse_config(path);
    if (!out_dir.empty()) {
        config.output.dir = out_dir;
    }
    if (workers > 0) {
        config.exec.workers = workers;
        cli::validate(config);
    }
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"MGRIT solver for a PWM-driven nonlinear eddy current coax model"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::size_t workers = 0;

    auto* solve = app.add_subcommand("solve", "Run MGRIT (time stepping when levels = 1)");
    solve->add_option("config", config_path, "Configuration file")->required()->check(CLI::ExistingFile);
    solve->add_option("--out", out_dir, "Output directory (overrides output.dir)");
    solve->add_option("--workers", workers, "Worker threads (overrides exec.workers)");

    auto* baseline = app.add_subcommand("baseline", "Sequential backward Euler time stepping");
    baseline->add_option("config", config_path, "Configuration file")->required()->check(CLI::ExistingFile);
    baseline->add_option("--out", out_dir, "Output directory (overrides output.dir)");

    std::string dir_a;
    std::string dir_b;
    double tol = 1e-5;
    auto* compare = app.add_subcommand("compare", "Compare solution.csv of two run directories");
    compare->add_option("dir_a", dir_a, "Run directory")->required();
    compare->add_option("dir_b", dir_b, "Reference run directory")->required();
    compare->add_option("--tol", tol, "Largest accepted relative difference")->capture_default_str();

    std::string levels_list = "3,4,5";
    std::string m_list;
    std::string cycles_list = "V,F";
    auto* sweep = app.add_subcommand("sweep", "Iteration counts over hierarchies and cycle types");
    sweep->add_option("config", config_path, "Configuration file")->required()->check(CLI::ExistingFile);
    sweep->add_option("--levels", levels_list, "Comma-separated level counts")->capture_default_str();
    sweep->add_option("--m", m_list, "Comma-separated coarsening factors, one per level count or a single one");
    sweep->add_option("--cycles", cycles_list, "Comma-separated cycle types")->capture_default_str();
    sweep->add_option("--out", out_dir, "Directory for sweep.csv (overrides output.dir)");
    sweep->add_option("--workers", workers, "Worker threads (overrides exec.workers)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (solve->parsed()) {
            return cli::run(load(config_path, out_dir, workers), cli::RunMode::mgrit, std::cerr);
        }
        if (baseline->parsed()) {
            return cli::run(load(config_path, out_dir, 0), cli::RunMode::baseline, std::cerr);
        }
        if (compare->parsed()) {
            const cli::CompareReport report = cli::compare_runs(dir_a, dir_b);
            std::printf("%-10s %24s %24s\n", "column", "max_abs_diff", "max_rel_diff");
            for (const auto& c : report.columns) {
                std::printf("%-10s %24.17g %24.17g\n", c.name.c_str(), c.max_abs, c.max_rel);
            }
            const bool ok = report.within(tol);
            std::printf("%s (tol %g)\n", ok ? "within tolerance" : "EXCEEDS tolerance", tol);
            return ok ? 0 : 2;
        }
        if (sweep->parsed()) {
            const cli::RunConfig config = load(config_path, out_dir, workers);
            std::vector<std::size_t> m = m_list.empty() ? std::vector<std::size_t>{config.solver.m}
                                                        : parse_counts(m_list, "m");
            std::vector<mgrit::CycleType> cycles;
            for (const std::string& c : split_list(cycles_list)) {
                if (c == "V" || c == "v") {
                    cycles.push_back(mgrit::CycleType::V);
                } else if (c == "F" || c == "f") {
                    cycles.push_back(mgrit::CycleType::F);
                } else {
                    throw std::invalid_argument("bad cycle type '" + c + "'");
                }
            }
            const auto entries = cli::sweep(config, parse_counts(levels_list, "levels"), m, cycles, &std::cerr);
            cli::print_sweep_table(entries, std::cout);
            cli::write_sweep_csv(entries, config.output.dir / "sweep.csv");
            for (const auto& e : entries) {
                if (!e.outcome.converged) {
                    return 2;
                }
            }
            return 0;
        }
    } catch (const cli::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
