#pragma once

#include "eddymgrit/mgrit/communicator.hpp"

#include <condition_variable>
#include <cstddef>
#include <deque>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace eddymgrit::parallel {

using mgrit::Message;
using mgrit::MessageKind;

/// Another worker failed and the run was torn down.
class Aborted : public std::runtime_error {
public:
    Aborted() : std::runtime_error("run aborted by another worker") {}
};

struct MessageCounts {
    std::size_t boundary = 0;
    std::size_t collective = 0;
    /// Doubles sent, all kinds.
    std::size_t payload = 0;
};

/// In-process mailboxes for `workers` threads, one FIFO per ordered pair.
class ThreadHub {
public:
    explicit ThreadHub(int workers);

    [[nodiscard]] int workers() const noexcept { return workers_; }

    void post(int source, int dest, Message msg);
    /// Blocks until a message from `source` to `dest` arrives; throws
    /// Aborted once abort() was called.
    [[nodiscard]] Message take(int source, int dest);
    void abort();

    /// Messages sent by `rank` so far.
    [[nodiscard]] MessageCounts sent(int rank) const;

private:
    std::size_t slot(int source, int dest) const;

    int workers_;
    mutable std::mutex mutex_;
    std::condition_variable arrived_;
    std::vector<std::deque<Message>> boxes_;
    std::vector<MessageCounts> sent_;
    bool aborted_ = false;
};

class ThreadCommunicator final : public mgrit::Communicator {
public:
    ThreadCommunicator(ThreadHub& hub, int rank);

    [[nodiscard]] int rank() const override { return rank_; }
    [[nodiscard]] int size() const override { return hub_->workers(); }
    void send(int dest, Message msg) override;
    [[nodiscard]] Message recv(int source) override;

private:
    ThreadHub* hub_;
    int rank_;
};

}  // namespace eddymgrit::parallel
