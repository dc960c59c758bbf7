#include "eddymgrit/parallel/wire.hpp"

#include <algorithm>
#include <array>
#include <bit>

namespace eddymgrit::parallel {

namespace {

template <typename T>
void put(T value, std::vector<std::byte>& out) {
    auto bytes = std::bit_cast<std::array<std::byte, sizeof(T)>>(value);
    if constexpr (std::endian::native == std::endian::big) {
        std::reverse(bytes.begin(), bytes.end());
    }
    out.insert(out.end(), bytes.begin(), bytes.end());
}

template <typename T>
T get(std::span<const std::byte> bytes, std::size_t offset) {
    std::array<std::byte, sizeof(T)> raw{};
    std::copy_n(bytes.begin() + static_cast<std::ptrdiff_t>(offset), sizeof(T), raw.begin());
    if constexpr (std::endian::native == std::endian::big) {
        std::reverse(raw.begin(), raw.end());
    }
    return std::bit_cast<T>(raw);
}

constexpr std::size_t kHeader = 2 * sizeof(std::int32_t);

}  // namespace

std::size_t record_size(std::size_t node_count) { return kHeader + (node_count + 1) * sizeof(double); }

void encode(const StateRecord& rec, std::vector<std::byte>& out) {
    out.reserve(out.size() + record_size(rec.state.a.size()));
    put(rec.level, out);
    put(rec.index, out);
    for (double v : rec.state.a) {
        put(v, out);
    }
    put(rec.state.i, out);
}

std::vector<std::byte> encode(const StateRecord& rec) {
    std::vector<std::byte> out;
    encode(rec, out);
    return out;
}

StateRecord decode(std::span<const std::byte> bytes) {
    if (bytes.size() < record_size(1) || (bytes.size() - kHeader) % sizeof(double) != 0) {
        throw WireFormatError("record of " + std::to_string(bytes.size()) + " bytes is malformed");
    }
    StateRecord rec;
    rec.level = get<std::int32_t>(bytes, 0);
    rec.index = get<std::int32_t>(bytes, sizeof(std::int32_t));
    const std::size_t values = (bytes.size() - kHeader) / sizeof(double);
    rec.state.a.resize(values - 1);
    for (std::size_t k = 0; k + 1 < values; ++k) {
        rec.state.a[k] = get<double>(bytes, kHeader + k * sizeof(double));
    }
    rec.state.i = get<double>(bytes, kHeader + (values - 1) * sizeof(double));
    return rec;
}

}  // namespace eddymgrit::parallel
