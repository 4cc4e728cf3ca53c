#include <doctest.h>

#include <bit>
#include <random>

#include "asyncdes/desfunc.hpp"

using namespace asyncdes;

namespace {
struct KatVector {
    std::uint64_t data;
    std::uint64_t key;
    bool encrypt;
    std::uint64_t expected;
};
#include "../fixtures/des_kat.inc"
}  // namespace

TEST_CASE("known-answer vectors") {
    for (const auto& v : kKatVectors) {
        CAPTURE(to_hex(Word64(v.data)));
        CAPTURE(to_hex(Word64(v.key)));
        CHECK(des_apply(BitDomain::Concrete, Word64(v.data), Word64(v.key), v.encrypt).bits == v.expected);
    }
}

TEST_CASE("classic worked example") {
    const Word64 data(0x0123456789ABCDEFull), key(0x133457799BBCDFF1ull);
    CHECK(initial_permutation(BitDomain::Concrete, data).bits == kIp0123456789ABCDEF);
    const auto ks = key_schedule(BitDomain::Concrete, key, true);
    for (int i = 0; i < 16; ++i) CHECK(ks.subkeys[i].bits == kSubkeys133457799BBCDFF1[i]);
    CHECK(sbox_lookup(BitDomain::Concrete, 1, Word6(0)).bits == kS1Row0Col0);
    CHECK(to_hex(des_apply(BitDomain::Concrete, data, key, true)) == "85E813540F0AB405");
}

TEST_CASE("decryption subkeys are the encryption subkeys reversed") {
    const Word64 key(0x0E329232EA6D0D73ull);
    const auto e = key_schedule(BitDomain::Concrete, key, true);
    const auto d = key_schedule(BitDomain::Concrete, key, false);
    for (int i = 0; i < 16; ++i) CHECK(d.subkeys[i] == e.subkeys[15 - i]);
}

TEST_CASE("round trip and avalanche on random inputs") {
    std::mt19937_64 rng(7);
    double flipped = 0;
    int samples = 0;
    for (int n = 0; n < 200; ++n) {
        const Word64 data(rng()), key(rng());
        const auto c = des_apply(BitDomain::Concrete, data, key, true);
        CHECK(des_apply(BitDomain::Concrete, c, key, false) == data);
        const int b = static_cast<int>(rng() % 64);
        const auto c2 = des_apply(BitDomain::Concrete, Word64(data.bits ^ (std::uint64_t{1} << b)), key, true);
        flipped += std::popcount(c.bits ^ c2.bits);
        ++samples;
    }
    const double mean = flipped / samples;
    CHECK(mean > 28.0);
    CHECK(mean < 36.0);
}

TEST_CASE("tables are permutations or selections of the right widths") {
    CHECK_NOTHROW(validate_tables());
    CHECK(shift_schedule()[0] == 1);
    int total = 0;
    for (int s : shift_schedule()) total += s;
    CHECK(total == 28);
}

TEST_CASE("abstract domain collapses every word") {
    const Word64 a(0x0123456789ABCDEFull), k(0x133457799BBCDFF1ull);
    CHECK(des_apply(BitDomain::Abstract, a, k, true).bits == 0);
    CHECK(bit_cardinality(BitDomain::Abstract) == 1);
    CHECK(bit_xor(BitDomain::Concrete, 1, 1) == 0);
}

TEST_CASE("hex parsing") {
    CHECK(parse_hex64("85e813540f0ab405").bits == 0x85E813540F0AB405ull);
    CHECK_THROWS(parse_hex64("85E813540F0AB40"));
    CHECK_THROWS(parse_hex64("85E813540F0AB40G"));
}
