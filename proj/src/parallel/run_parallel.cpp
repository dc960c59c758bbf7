#include "eddymgrit/parallel/run_parallel.hpp"

#include "eddymgrit/parallel/partition.hpp"

#include <exception>
#include <optional>
#include <thread>

namespace eddymgrit::parallel {

ParallelRun run_parallel(const mgrit::Hierarchy& h, const stepper::BackwardEuler& stepper,
                         const std::vector<mgrit::State>& g, const mgrit::SolveOptions& options,
                         std::size_t workers, const std::vector<mgrit::State>* initial) {
    const std::size_t points = h.level(0).points();
    if (g.size() != points || (initial != nullptr && initial->size() != points)) {
        throw std::invalid_argument("vectors do not match the finest level");
    }
    if (workers == 1) {
        ParallelRun run;
        run.result = mgrit::solve(h, stepper, g, options, initial);
        run.messages.assign(1, MessageCounts{});
        return run;
    }

    const Layout layout = partition(h, workers);
    const std::vector<mgrit::State> u0 = initial != nullptr ? *initial : std::vector<mgrit::State>(points, g.front());
    const int size = static_cast<int>(workers);
    ThreadHub hub(size);

    std::vector<mgrit::SolveResult> results(workers);
    std::vector<std::exception_ptr> errors(workers);
    std::mutex first_mutex;
    std::optional<int> first_failure;

    auto work = [&](int rank) {
        try {
            ThreadCommunicator comm(hub, rank);
            mgrit::Engine engine(h, stepper, layout, comm,
                                 mgrit::EngineOptions{options.coarse, options.deterministic_reduction}, &g);
            engine.initialize(u0, g);
            results[static_cast<std::size_t>(rank)] = mgrit::drive(engine, options);
        } catch (const Aborted&) {
            // Torn down because another worker failed.
        } catch (...) {
            errors[static_cast<std::size_t>(rank)] = std::current_exception();
            {
                std::lock_guard lock(first_mutex);
                if (!first_failure) {
                    first_failure = rank;
                }
            }
            hub.abort();
        }
    };

    {
        std::vector<std::jthread> threads;
        threads.reserve(workers);
        for (int rank = 0; rank < size; ++rank) {
            threads.emplace_back(work, rank);
        }
    }

    if (first_failure) {
        const int rank = *first_failure;
        try {
            std::rethrow_exception(errors[static_cast<std::size_t>(rank)]);
        } catch (const std::exception& e) {
            throw WorkerFailure(rank, "worker " + std::to_string(rank) + ": " + e.what());
        } catch (...) {
            throw WorkerFailure(rank, "worker " + std::to_string(rank) + ": unknown error");
        }
    }

    std::vector<mgrit::State> u;
    u.reserve(points);
    for (auto& r : results) {
        for (auto& s : r.u) {
            u.push_back(std::move(s));
        }
    }
    ParallelRun run;
    run.result = std::move(results.front());
    run.result.u = std::move(u);
    for (int rank = 0; rank < size; ++rank) {
        run.messages.push_back(hub.sent(rank));
    }
    return run;
}

}  // namespace eddymgrit::parallel
