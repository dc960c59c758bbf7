#include "eddymgrit/parallel/wire.hpp"

#include <doctest.h>

#include <bit>
#include <cstring>
#include <limits>

using namespace eddymgrit;

TEST_CASE("record round trip") {
    parallel::StateRecord rec{2, 257, model::State{{1.5, -0.0, 1e-300, std::numeric_limits<double>::max()}, -3.25}};
    const auto bytes = parallel::encode(rec);
    CHECK(bytes.size() == parallel::record_size(4));
    CHECK(bytes.size() == 8 + 5 * 8);
    CHECK(parallel::decode(bytes) == rec);
}

TEST_CASE("layout is little-endian with the header first") {
    parallel::StateRecord rec{1, 3, model::State{{2.0}, 0.5}};
    const auto bytes = parallel::encode(rec);
    REQUIRE(bytes.size() == 24);
    CHECK(bytes[0] == std::byte{1});
    CHECK(bytes[1] == std::byte{0});
    CHECK(bytes[4] == std::byte{3});
    // 2.0 = 0x4000000000000000, most significant byte last
    CHECK(bytes[8 + 7] == std::byte{0x40});
    CHECK(bytes[8] == std::byte{0});
    // 0.5 = 0x3FE0000000000000
    CHECK(bytes[16 + 7] == std::byte{0x3F});
    CHECK(bytes[16 + 6] == std::byte{0xE0});
}

TEST_CASE("malformed records are rejected") {
    const auto bytes = parallel::encode(parallel::StateRecord{0, 0, model::State{{1.0, 2.0}, 0.0}});
    CHECK_THROWS_AS((void)parallel::decode(std::span(bytes).first(bytes.size() - 1)), parallel::WireFormatError);
    CHECK_THROWS_AS((void)parallel::decode(std::span(bytes).first(4)), parallel::WireFormatError);
}
