#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "fec/gf2.hpp"

namespace fec {
namespace crc24 {

inline constexpr std::size_t kParityBits = 24;

/// CRC24a generator coefficients g0..g24, lowest degree first.
/// {g24..g0} = 1100001100100110011111011.
extern const std::array<uint8_t, 25> kPolynomial;

/// Parity of msg * D^24 mod g(D). Message bit 0 is the highest-degree
/// coefficient (LTE convention); callers append parity after the message.
std::vector<uint8_t> crc_encode(const std::vector<uint8_t>& msg);

/// True iff cb (message followed by parity, length >= 25) is divisible by g(D).
bool crc_check(const std::vector<uint8_t>& cb);

struct CrcGenerators {
    BinaryMatrix nonsys;  // m x (m+24), banded rows of g0..g24
    BinaryMatrix sys;     // [I_m | Q]
};

CrcGenerators build_crc_generators(std::size_t m);

}  // namespace crc24
}  // namespace fec
