#include "eddymgrit/mgrit/solve.hpp"

#include <chrono>
#include <stdexcept>

namespace eddymgrit::mgrit {

bool SolveResult::monotone() const {
    double prev = initial_residual;
    for (double r : history) {
        if (!(r < prev)) {
            return false;
        }
        prev = r;
    }
    return true;
}

std::vector<State> make_rhs(const Hierarchy& h, const model::CoaxModel& model, const State& u0) {
    std::vector<State> g(h.level(0).points());
    g[0] = u0;
    for (std::size_t j = 1; j < g.size(); ++j) {
        g[j] = model.source_rhs(h.time(0, j));
    }
    return g;
}

SolveResult drive(Engine& engine, const SolveOptions& options) {
    if (!(options.tol > 0.0)) {
        throw std::invalid_argument("MGRIT tolerance must be positive");
    }
    using clock = std::chrono::steady_clock;
    const auto start = clock::now();

    SolveResult result;
    result.initial_residual = engine.residual_norm();
    result.converged = result.initial_residual < options.tol;
    while (!result.converged && result.history.size() < options.max_iter) {
        const auto t0 = clock::now();
        engine.cycle(options.cycle);
        const double r = engine.residual_norm();
        result.history.push_back(r);
        result.cycle_seconds.push_back(std::chrono::duration<double>(clock::now() - t0).count());
        result.converged = r < options.tol;
    }
    result.iterations = result.history.size();
    result.u = engine.level(0).u_values();
    result.total_seconds = std::chrono::duration<double>(clock::now() - start).count();
    return result;
}

SolveResult solve(const Hierarchy& h, const stepper::BackwardEuler& stepper, const std::vector<State>& g,
                  const SolveOptions& options, const std::vector<State>* initial) {
    const std::size_t points = h.level(0).points();
    if (g.size() != points) {
        throw std::invalid_argument("right-hand side does not match the finest level");
    }
    std::vector<State> u0 = initial != nullptr ? *initial : std::vector<State>(points, g.front());
    if (u0.size() != points) {
        throw std::invalid_argument("initial iterate does not match the finest level");
    }
    const Layout layout = Layout::serial(h);
    SerialCommunicator comm;
    Engine engine(h, stepper, layout, comm, EngineOptions{options.coarse, options.deterministic_reduction}, &g);
    engine.initialize(u0, g);
    return drive(engine, options);
}

}  // namespace eddymgrit::mgrit
