#include "eddymgrit/parallel/thread_comm.hpp"

#include <string>

namespace eddymgrit::parallel {

ThreadHub::ThreadHub(int workers)
    : workers_(workers),
      boxes_(static_cast<std::size_t>(workers > 0 ? workers * workers : 0)),
      sent_(static_cast<std::size_t>(workers > 0 ? workers : 0)) {
    if (workers < 1) {
        throw std::invalid_argument("a hub needs at least one worker");
    }
}

std::size_t ThreadHub::slot(int source, int dest) const {
    if (source < 0 || source >= workers_ || dest < 0 || dest >= workers_) {
        throw std::out_of_range("no worker pair (" + std::to_string(source) + ", " + std::to_string(dest) + ")");
    }
    return static_cast<std::size_t>(source * workers_ + dest);
}

void ThreadHub::post(int source, int dest, Message msg) {
    const std::size_t s = slot(source, dest);
    {
        std::lock_guard lock(mutex_);
        if (aborted_) {
            throw Aborted();
        }
        MessageCounts& c = sent_[static_cast<std::size_t>(source)];
        (msg.kind == MessageKind::boundary ? c.boundary : c.collective) += 1;
        c.payload += msg.payload.size();
        boxes_[s].push_back(std::move(msg));
    }
    arrived_.notify_all();
}

Message ThreadHub::take(int source, int dest) {
    const std::size_t s = slot(source, dest);
    std::unique_lock lock(mutex_);
    arrived_.wait(lock, [&] { return aborted_ || !boxes_[s].empty(); });
    if (aborted_) {
        throw Aborted();
    }
    Message msg = std::move(boxes_[s].front());
    boxes_[s].pop_front();
    return msg;
}

void ThreadHub::abort() {
    {
        std::lock_guard lock(mutex_);
        aborted_ = true;
    }
    arrived_.notify_all();
}

MessageCounts ThreadHub::sent(int rank) const {
    std::lock_guard lock(mutex_);
    return sent_.at(static_cast<std::size_t>(rank));
}

ThreadCommunicator::ThreadCommunicator(ThreadHub& hub, int rank) : hub_(&hub), rank_(rank) {
    if (rank < 0 || rank >= hub.workers()) {
        throw std::out_of_range("rank outside the hub");
    }
}

void ThreadCommunicator::send(int dest, Message msg) { hub_->post(rank_, dest, std::move(msg)); }

Message ThreadCommunicator::recv(int source) { return hub_->take(source, rank_); }

}  // namespace eddymgrit::parallel
