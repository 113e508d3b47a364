#include "fec/crc24.hpp"

#include <stdexcept>

namespace fec {
namespace crc24 {

// g0..g24, lowest degree first. Read highest-first this is 1100001100100110011111011.
const std::array<uint8_t, 25> kPolynomial = {
    1, 1, 0, 1, 1, 1, 1, 1, 0, 0, 1, 1, 0,
    0, 1, 0, 0, 1, 1, 0, 0, 0, 0, 1, 1};

namespace {

// Coefficients highest degree first; this is also the order the divisor is
// laid across the bit stream (bit 0 of a block is the highest-degree term).
std::array<uint8_t, 25> descending() {
    std::array<uint8_t, 25> d;
    for (std::size_t i = 0; i < 25; ++i) d[i] = kPolynomial[24 - i];
    return d;
}

const std::array<uint8_t, 25> kDescending = descending();

}  // namespace

std::vector<uint8_t> crc_encode(const std::vector<uint8_t>& msg) {
    if (msg.empty()) {
        throw std::invalid_argument("crc_encode: empty message");
    }
    std::vector<uint8_t> work(msg);
    work.resize(msg.size() + kParityBits, 0);
    for (std::size_t i = 0; i < msg.size(); ++i) {
        if (!work[i]) continue;
        for (std::size_t j = 0; j <= kParityBits; ++j) work[i + j] ^= kDescending[j];
    }
    return std::vector<uint8_t>(work.begin() + static_cast<std::ptrdiff_t>(msg.size()), work.end());
}

bool crc_check(const std::vector<uint8_t>& cb) {
    if (cb.size() < kParityBits + 1) {
        throw std::invalid_argument("crc_check: block shorter than 25 bits");
    }
    std::vector<uint8_t> work(cb);
    for (std::size_t i = 0; i + kParityBits < work.size(); ++i) {
        if (!work[i]) continue;
        for (std::size_t j = 0; j <= kParityBits; ++j) work[i + j] ^= kDescending[j];
    }
    for (std::size_t i = work.size() - kParityBits; i < work.size(); ++i) {
        if (work[i]) return false;
    }
    return true;
}

CrcGenerators build_crc_generators(std::size_t m) {
    if (m < 1) {
        throw std::invalid_argument("build_crc_generators: m must be >= 1");
    }
    const std::size_t k = m + kParityBits;
    BinaryMatrix nonsys(m, k);
    // Row i carries the divisor coefficients in transmission order starting
    // at column i; the band is upper-triangular with unit diagonal.
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j <= kParityBits; ++j) {
            if (kDescending[j]) nonsys.set(i, i + j, true);
        }
    }
    SystematizeResult sr = systematize(nonsys);
    for (std::size_t j = 0; j < k; ++j) {
        if (sr.perm(j) != j) {
            throw std::logic_error("build_crc_generators: elimination required a column swap");
        }
    }
    if (sr.rank != m) {
        throw std::logic_error("build_crc_generators: banded matrix not full rank");
    }
    return CrcGenerators{std::move(nonsys), std::move(sr.gsys)};
}

}  // namespace crc24
}  // namespace fec
