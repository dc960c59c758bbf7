#include "eddymgrit/cli/config.hpp"

#include "eddymgrit/model/reluctivity_spline.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <vector>

namespace eddymgrit::cli {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) {
        if (c >= 'A' && c <= 'Z') {
            c = static_cast<char>(c - 'A' + 'a');
        }
    }
    return out;
}

double parse_double(std::string_view v) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out)) {
        throw std::invalid_argument("expected a number, got '" + std::string(v) + "'");
    }
    return out;
}

std::size_t parse_count(std::string_view v) {
    unsigned long long out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) {
        throw std::invalid_argument("expected a non-negative integer, got '" + std::string(v) + "'");
    }
    return static_cast<std::size_t>(out);
}

int parse_int(std::string_view v) {
    int out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) {
        throw std::invalid_argument("expected an integer, got '" + std::string(v) + "'");
    }
    return out;
}

bool parse_bool(std::string_view v) {
    const std::string s = lower(v);
    if (s == "true" || s == "yes" || s == "on" || s == "1") {
        return true;
    }
    if (s == "false" || s == "no" || s == "off" || s == "0") {
        return false;
    }
    throw std::invalid_argument("expected true or false, got '" + std::string(v) + "'");
}

mgrit::CycleType parse_cycle(std::string_view v) {
    const std::string s = lower(v);
    if (s == "v") {
        return mgrit::CycleType::V;
    }
    if (s == "f") {
        return mgrit::CycleType::F;
    }
    throw std::invalid_argument("expected V or F, got '" + std::string(v) + "'");
}

using Setter = std::function<void(RunConfig&, std::string_view, const std::filesystem::path&)>;

const std::map<std::string, Setter, std::less<>>& setters() {
    static const std::map<std::string, Setter, std::less<>> table = {
        {"problem.nodes", [](RunConfig& c, std::string_view v, auto&) { c.problem.nodes = parse_count(v); }},
        {"problem.r_wire", [](RunConfig& c, std::string_view v, auto&) { c.problem.geometry.r_wire = parse_double(v); }},
        {"problem.r_ins", [](RunConfig& c, std::string_view v, auto&) { c.problem.geometry.r_ins = parse_double(v); }},
        {"problem.r_out", [](RunConfig& c, std::string_view v, auto&) { c.problem.geometry.r_out = parse_double(v); }},
        {"problem.sigma", [](RunConfig& c, std::string_view v, auto&) { c.problem.sigma = parse_double(v); }},
        {"problem.nu_table",
         [](RunConfig& c, std::string_view v, const std::filesystem::path& base) {
             const std::filesystem::path p(v);
             c.problem.nu_table = p.is_absolute() || base.empty() ? p : base / p;
         }},
        {"problem.shield_model",
         [](RunConfig& c, std::string_view v, auto&) {
             const std::string s = lower(v);
             if (s == "spline") {
                 c.problem.shield_model = ShieldModel::spline;
             } else if (s == "constant") {
                 c.problem.shield_model = ShieldModel::constant;
             } else {
                 throw std::invalid_argument("expected spline or constant, got '" + std::string(v) + "'");
             }
         }},
        {"problem.shield_nu", [](RunConfig& c, std::string_view v, auto&) { c.problem.shield_nu = parse_double(v); }},
        {"problem.v0", [](RunConfig& c, std::string_view v, auto&) { c.problem.source.amplitude = parse_double(v); }},
        {"problem.period", [](RunConfig& c, std::string_view v, auto&) { c.problem.source.period = parse_double(v); }},
        {"problem.teeth", [](RunConfig& c, std::string_view v, auto&) { c.problem.source.teeth = parse_int(v); }},
        {"time.t_end", [](RunConfig& c, std::string_view v, auto&) { c.time.t_end = parse_double(v); }},
        {"time.nt", [](RunConfig& c, std::string_view v, auto&) { c.time.nt = parse_count(v); }},
        {"solver.cycle", [](RunConfig& c, std::string_view v, auto&) { c.solver.cycle = parse_cycle(v); }},
        {"solver.levels", [](RunConfig& c, std::string_view v, auto&) { c.solver.levels = parse_count(v); }},
        {"solver.m", [](RunConfig& c, std::string_view v, auto&) { c.solver.m = parse_count(v); }},
        {"solver.tol", [](RunConfig& c, std::string_view v, auto&) { c.solver.tol = parse_double(v); }},
        {"solver.max_iter", [](RunConfig& c, std::string_view v, auto&) { c.solver.max_iter = parse_count(v); }},
        {"solver.coarse_operator",
         [](RunConfig& c, std::string_view v, auto&) {
             const std::string s = lower(v);
             if (s == "rediscretized") {
                 c.solver.coarse = mgrit::CoarseOperator::rediscretized;
             } else if (s == "ideal") {
                 c.solver.coarse = mgrit::CoarseOperator::ideal;
             } else {
                 throw std::invalid_argument("expected rediscretized or ideal, got '" + std::string(v) + "'");
             }
         }},
        {"solver.newton_atol", [](RunConfig& c, std::string_view v, auto&) { c.solver.newton.atol = parse_double(v); }},
        {"solver.newton_rtol", [](RunConfig& c, std::string_view v, auto&) { c.solver.newton.rtol = parse_double(v); }},
        {"solver.newton_max_iter",
         [](RunConfig& c, std::string_view v, auto&) { c.solver.newton.max_iterations = parse_int(v); }},
        {"solver.newton_damping",
         [](RunConfig& c, std::string_view v, auto&) { c.solver.newton.damping = parse_double(v); }},
        {"solver.newton_line_search",
         [](RunConfig& c, std::string_view v, auto&) { c.solver.newton.line_search = parse_bool(v); }},
        {"exec.workers", [](RunConfig& c, std::string_view v, auto&) { c.exec.workers = parse_count(v); }},
        {"exec.deterministic", [](RunConfig& c, std::string_view v, auto&) { c.exec.deterministic = parse_bool(v); }},
        {"output.dir", [](RunConfig& c, std::string_view v, auto&) { c.output.dir = std::filesystem::path(v); }},
        {"output.dump_fields", [](RunConfig& c, std::string_view v, auto&) { c.output.dump_fields = parse_bool(v); }},
    };
    return table;
}

const std::map<std::string, std::string, std::less<>>& aliases() {
    static const std::map<std::string, std::string, std::less<>> table = {
        {"nodes", "problem.nodes"},   {"nt", "time.nt"},           {"t_end", "time.t_end"},
        {"cycle", "solver.cycle"},    {"levels", "solver.levels"}, {"L", "solver.levels"},
        {"m", "solver.m"},            {"tol", "solver.tol"},       {"max_iter", "solver.max_iter"},
        {"workers", "exec.workers"},  {"W", "exec.workers"},       {"deterministic", "exec.deterministic"},
        {"dir", "output.dir"},
    };
    return table;
}

// Splits "a=1, b=2" into assignments; a comma only separates when every
// piece is itself an assignment, so values may contain commas otherwise.
std::vector<std::string_view> assignments(std::string_view line) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        parts.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    for (std::string_view p : parts) {
        if (p.find('=') == std::string_view::npos) {
            return {line};
        }
    }
    return parts;
}

void check(bool ok, const char* key, const std::string& message) {
    if (!ok) {
        throw ConfigError(key, 0, message);
    }
}

}  // namespace

ConfigError::ConfigError(std::string key, std::size_t line, const std::string& message)
    : std::runtime_error((line > 0 ? "line " + std::to_string(line) + ": " : std::string()) + key + ": " + message),
      key_(std::move(key)),
      line_(line),
      message_(message) {}

void validate(const RunConfig& c) {
    const auto& g = c.problem.geometry;
    check(c.problem.nodes >= 4, "problem.nodes", "need at least 4 nodes (one element per region)");
    check(g.r_wire > 0.0, "problem.r_wire", "must be positive");
    check(g.r_ins > g.r_wire, "problem.r_ins", "must exceed problem.r_wire");
    check(g.r_out > g.r_ins, "problem.r_out", "must exceed problem.r_ins");
    check(c.problem.sigma > 0.0, "problem.sigma", "must be positive");
    check(c.problem.shield_nu > 0.0, "problem.shield_nu", "must be positive");
    check(c.problem.source.period > 0.0, "problem.period", "must be positive");
    check(c.problem.source.teeth >= 1, "problem.teeth", "must be at least 1");
    check(c.time.t_end > 0.0, "time.t_end", "must be positive");
    check(c.time.nt >= 1, "time.nt", "must be at least 1");
    check(c.solver.levels >= 1, "solver.levels", "must be at least 1");
    if (c.solver.levels > 1) {
        check(c.solver.m >= 2, "solver.m", "must be at least 2");
        std::size_t block = 1;
        for (std::size_t l = 1; l < c.solver.levels; ++l) {
            check(block <= c.time.nt / c.solver.m, "time.nt", "too few steps for the requested levels");
            block *= c.solver.m;
        }
        check(c.time.nt % block == 0, "time.nt",
              std::to_string(c.time.nt) + " is not divisible by m^(levels-1) = " + std::to_string(block));
    }
    check(c.solver.tol > 0.0, "solver.tol", "must be positive");
    check(c.solver.coarse == mgrit::CoarseOperator::rediscretized || c.solver.levels == 2, "solver.coarse_operator",
          "ideal needs exactly two levels");
    check(c.solver.newton.atol > 0.0, "solver.newton_atol", "must be positive");
    check(c.solver.newton.rtol > 0.0, "solver.newton_rtol", "must be positive");
    check(c.solver.newton.max_iterations >= 1, "solver.newton_max_iter", "must be at least 1");
    check(c.solver.newton.damping > 0.0 && c.solver.newton.damping <= 1.0, "solver.newton_damping",
          "must lie in (0, 1]");
    check(c.exec.workers >= 1, "exec.workers", "must be at least 1");
    check(c.exec.workers <= c.time.nt + 1, "exec.workers", "more workers than time points");
    if (!c.problem.nu_table.empty()) {
        check(std::filesystem::is_regular_file(c.problem.nu_table), "problem.nu_table",
              "no such file: " + c.problem.nu_table.string());
    }
}

RunConfig parse_config_text(std::string_view text, const std::filesystem::path& base_dir) {
    RunConfig config;
    config.text = std::string(text);
    std::map<std::string, std::size_t, std::less<>> seen;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        for (std::string_view item : assignments(line)) {
            const auto eq = item.find('=');
            if (eq == std::string_view::npos) {
                throw ConfigError(std::string(item), line_no, "expected 'key = value'");
            }
            std::string key(trim(item.substr(0, eq)));
            const std::string_view value = trim(item.substr(eq + 1));
            if (const auto a = aliases().find(key); a != aliases().end()) {
                key = a->second;
            }
            const auto s = setters().find(key);
            if (s == setters().end()) {
                throw ConfigError(key, line_no, "unknown key");
            }
            if (const auto prev = seen.find(key); prev != seen.end()) {
                throw ConfigError(key, line_no, "already set on line " + std::to_string(prev->second));
            }
            if (value.empty()) {
                throw ConfigError(key, line_no, "missing value");
            }
            try {
                s->second(config, value, base_dir);
            } catch (const std::invalid_argument& e) {
                throw ConfigError(key, line_no, e.what());
            }
            seen.emplace(key, line_no);
        }
    }

    try {
        validate(config);
    } catch (const ConfigError& e) {
        const auto where = seen.find(e.key());
        throw ConfigError(e.key(), where == seen.end() ? 0 : where->second, e.message());
    }
    if (!config.problem.nu_table.empty() && config.problem.shield_model == ShieldModel::spline) {
        try {
            (void)model::read_bh_table(config.problem.nu_table);
        } catch (const std::exception& e) {
            const auto where = seen.find("problem.nu_table");
            throw ConfigError("problem.nu_table", where == seen.end() ? 0 : where->second, e.what());
        }
    }
    return config;
}

RunConfig parse_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("<file>", 0, "cannot open " + path.string());
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config_text(text.str(), path.parent_path());
}

std::string_view to_string(mgrit::CycleType c) { return c == mgrit::CycleType::V ? "V" : "F"; }

std::string_view to_string(mgrit::CoarseOperator c) {
    return c == mgrit::CoarseOperator::ideal ? "ideal" : "rediscretized";
}

std::string_view to_string(ShieldModel s) { return s == ShieldModel::spline ? "spline" : "constant"; }

}  // namespace eddymgrit::cli
