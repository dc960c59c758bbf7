#pragma once

#include "eddymgrit/model/state.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace eddymgrit::mgrit {

enum class MessageKind : std::uint8_t {
    /// Nearest-neighbour State hand-off before a sweep.
    boundary,
    /// Gather/scatter around the coarsest-level solve and the norm reduction.
    collective,
};

/// Unit of communication between workers. Boundary messages carry one
/// State flattened as [a_0 .. a_N, i].
struct Message {
    MessageKind kind = MessageKind::boundary;
    std::int32_t level = 0;
    std::int32_t index = 0;
    std::vector<double> payload;
};

[[nodiscard]] std::vector<double> flatten(const model::State& s);
[[nodiscard]] model::State unflatten(const double* data, std::size_t node_count);

/// Point-to-point transport between workers. Messages between a given pair
/// are delivered in send order; send never blocks, recv blocks.
class Communicator {
public:
    virtual ~Communicator() = default;

    [[nodiscard]] virtual int rank() const = 0;
    [[nodiscard]] virtual int size() const = 0;
    virtual void send(int dest, Message msg) = 0;
    [[nodiscard]] virtual Message recv(int source) = 0;
};

/// Single worker; any attempt to communicate is a logic error.
class SerialCommunicator final : public Communicator {
public:
    [[nodiscard]] int rank() const override { return 0; }
    [[nodiscard]] int size() const override { return 1; }
    void send(int, Message) override { throw std::logic_error("serial communicator cannot send"); }
    [[nodiscard]] Message recv(int) override { throw std::logic_error("serial communicator cannot receive"); }
};

/// The message received did not match what the protocol expected.
class ProtocolError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace eddymgrit::mgrit
