#pragma once

#include "eddymgrit/mgrit/solve.hpp"
#include "eddymgrit/parallel/thread_comm.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace eddymgrit::parallel {

/// A worker thread threw; `worker` is its rank.
class WorkerFailure : public std::runtime_error {
public:
    WorkerFailure(int worker, const std::string& what) : std::runtime_error(what), worker_(worker) {}
    [[nodiscard]] int worker() const noexcept { return worker_; }

private:
    int worker_;
};

struct ParallelRun {
    /// As from mgrit::solve, with `u` stitched from all workers.
    mgrit::SolveResult result;
    /// Messages sent by each worker.
    std::vector<MessageCounts> messages;
};

/// MGRIT with the finest level split over `workers` threads. With
/// deterministic reduction the result is bitwise identical for every
/// worker count. workers == 1 runs on the calling thread.
[[nodiscard]] ParallelRun run_parallel(const mgrit::Hierarchy& h, const stepper::BackwardEuler& stepper,
                                       const std::vector<mgrit::State>& g, const mgrit::SolveOptions& options,
                                       std::size_t workers, const std::vector<mgrit::State>* initial = nullptr);

}  // namespace eddymgrit::parallel
