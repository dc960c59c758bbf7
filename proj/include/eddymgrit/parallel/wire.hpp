#pragma once

#include "eddymgrit/model/state.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace eddymgrit::parallel {

/// One State tagged with its level and time index, as sent over a byte
/// transport: int32 level, int32 index, then float64 [a_0 .. a_N, i], all
/// little-endian.
struct StateRecord {
    std::int32_t level = 0;
    std::int32_t index = 0;
    model::State state;

    friend bool operator==(const StateRecord&, const StateRecord&) = default;
};

class WireFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

[[nodiscard]] std::size_t record_size(std::size_t node_count);
void encode(const StateRecord& rec, std::vector<std::byte>& out);
[[nodiscard]] std::vector<std::byte> encode(const StateRecord& rec);
/// Decodes one record spanning all of `bytes`.
[[nodiscard]] StateRecord decode(std::span<const std::byte> bytes);

}  // namespace eddymgrit::parallel
