#include <doctest.h>

#include <stdexcept>

#include <random>

#include "fec/crc24.hpp"
#include "test_util.hpp"

using namespace fec;
using namespace fec::crc24;

TEST_CASE("all-zero message encodes to all-zero parity") {
    for (std::size_t m : {std::size_t{1}, std::size_t{16}, std::size_t{72}}) {
        const std::vector<uint8_t> parity = crc_encode(std::vector<uint8_t>(m, 0));
        REQUIRE(parity.size() == 24);
        for (uint8_t b : parity) CHECK(b == 0);
    }
}

TEST_CASE("single impulse message: parity is the low part of the polynomial") {
    // D^24 mod g(D) = g(D) - D^24, so the parity carries g23..g0
    const std::vector<uint8_t> parity = crc_encode({1});
    REQUIRE(parity.size() == 24);
    for (std::size_t j = 0; j < 24; ++j) CHECK(parity[j] == kPolynomial[23 - j]);
}

TEST_CASE("crc_encode rejects an empty message") {
    CHECK_THROWS_AS(crc_encode({}), std::invalid_argument);
}

TEST_CASE("random messages self-check") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t m = 1 + rng() % 80;
        std::vector<uint8_t> cb = testutil::random_bits(rng, m);
        const std::vector<uint8_t> parity = crc_encode(cb);
        cb.insert(cb.end(), parity.begin(), parity.end());
        CHECK(crc_check(cb));
    }
}

TEST_CASE("crc_check basics") {
    CHECK(crc_check(std::vector<uint8_t>(40, 0)));
    CHECK_THROWS_AS(crc_check(std::vector<uint8_t>(24, 0)), std::invalid_argument);
}

TEST_CASE("every single-bit flip on a valid block is detected") {
    std::mt19937_64 rng(9);
    std::vector<uint8_t> cb = testutil::random_bits(rng, 16);
    const std::vector<uint8_t> parity = crc_encode(cb);
    cb.insert(cb.end(), parity.begin(), parity.end());
    REQUIRE(cb.size() == 40);
    REQUIRE(crc_check(cb));
    for (std::size_t i = 0; i < cb.size(); ++i) {
        cb[i] ^= 1;
        CHECK_FALSE(crc_check(cb));
        cb[i] ^= 1;
    }
}

TEST_CASE("non-systematic generator rows carry the shifted polynomial") {
    const CrcGenerators gens = build_crc_generators(16);
    REQUIRE(gens.nonsys.rows() == 16);
    REQUIRE(gens.nonsys.cols() == 40);
    // row 0, columns 0..24: polynomial coefficients in transmission order
    // (highest degree first)
    for (std::size_t j = 0; j <= 24; ++j) {
        CHECK(gens.nonsys.get(0, j) == (kPolynomial[24 - j] != 0));
    }
    for (std::size_t j = 25; j < 40; ++j) CHECK_FALSE(gens.nonsys.get(0, j));
    // row i is row 0 shifted right by i
    for (std::size_t i = 1; i < 16; ++i) {
        for (std::size_t j = 0; j < 40; ++j) {
            const bool expect = j >= i && gens.nonsys.get(0, j - i);
            CHECK(gens.nonsys.get(i, j) == expect);
        }
    }
}

TEST_CASE("systematic generator: m=1 row is 1 followed by its parity") {
    const CrcGenerators gens = build_crc_generators(1);
    const std::vector<uint8_t> row = gens.sys.row_bits(0);
    const std::vector<uint8_t> parity = crc_encode({1});
    CHECK(row[0] == 1);
    for (std::size_t j = 0; j < 24; ++j) CHECK(row[1 + j] == parity[j]);
}

TEST_CASE("systematic generator rows all pass the CRC check") {
    const CrcGenerators gens = build_crc_generators(16);
    for (std::size_t i = 0; i < 16; ++i) {
        CHECK(gens.sys.get(i, i));
        CHECK(crc_check(gens.sys.row_bits(i)));
    }
}

TEST_CASE("matrix encoding equals long-division encoding") {
    std::mt19937_64 rng(77);
    for (std::size_t m : {std::size_t{5}, std::size_t{16}, std::size_t{64}}) {
        const CrcGenerators gens = build_crc_generators(m);
        for (int trial = 0; trial < 50; ++trial) {
            const std::vector<uint8_t> msg = testutil::random_bits(rng, m);
            std::vector<uint8_t> expect = msg;
            const std::vector<uint8_t> parity = crc_encode(msg);
            expect.insert(expect.end(), parity.begin(), parity.end());
            CHECK(vec_mat_mul(msg, gens.sys) == expect);
        }
    }
}

TEST_CASE("crc_encode is linear") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t m = 1 + rng() % 64;
        const std::vector<uint8_t> a = testutil::random_bits(rng, m);
        const std::vector<uint8_t> b = testutil::random_bits(rng, m);
        std::vector<uint8_t> ab(m);
        for (std::size_t i = 0; i < m; ++i) ab[i] = a[i] ^ b[i];
        const std::vector<uint8_t> pa = crc_encode(a);
        const std::vector<uint8_t> pb = crc_encode(b);
        const std::vector<uint8_t> pab = crc_encode(ab);
        for (std::size_t i = 0; i < 24; ++i) CHECK(pab[i] == (pa[i] ^ pb[i]));
    }
}
