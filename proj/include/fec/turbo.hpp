#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "fec/gf2.hpp"

namespace fec {

inline constexpr std::size_t kTailBits = 12;

struct QppEntry {
    std::size_t k;
    std::size_t f1;
    std::size_t f2;
};

/// All 188 interleaver sizes with their QPP coefficients.
const std::vector<QppEntry>& qpp_table();

bool is_valid_block_length(std::size_t k);

/// Code-block length k, message length m = k - 24 and derived quantities.
struct CodeConfig {
    std::size_t k;
    std::size_t m;
    std::size_t qpp_f1;
    std::size_t qpp_f2;
    std::size_t n_coded;  // 3k + 12
    double rate;          // m / n_coded

    static CodeConfig for_block_length(std::size_t k);
};

/// pi(i) = (f1*i + f2*i^2) mod k.
std::vector<std::size_t> qpp_permutation(const CodeConfig& cfg);

/// First k terms of the RSC parity impulse response: 1 then 1110010 repeating.
std::vector<uint8_t> impulse_sequence(std::size_t k);

/// k x k parity sub-matrix; row i is the impulse response delayed by i steps.
BinaryMatrix build_parity_matrix(std::size_t k);

struct TurboGenerator {
    BinaryMatrix g_turbo;   // k x 3k, [I | P | P~]
    BinaryMatrix g_concat;  // m x 3k, systematic CRC generator times g_turbo
};

TurboGenerator build_generators(const CodeConfig& cfg);

/// Full transmit mapping: systematic (k), parity-1 (k), parity-2 (k), then 12
/// tail bits (x,z pairs for encoder 1, then encoder 2).
std::vector<uint8_t> trellis_encode(const CodeConfig& cfg, const std::vector<uint8_t>& cb);

namespace rsc {
// Recursive systematic convolutional code 1, (1+D+D^3)/(1+D^2+D^3).
inline constexpr int kNumStates = 8;

inline int feedback(int state, int bit) {
    return bit ^ ((state >> 1) & 1) ^ ((state >> 2) & 1);
}
inline int parity_out(int state, int bit) {
    const int a = feedback(state, bit);
    return a ^ (state & 1) ^ ((state >> 2) & 1);
}
inline int next_state(int state, int bit) {
    const int a = feedback(state, bit);
    return ((state << 1) & 6) | a;
}
/// Input that drives the register toward zero (makes the feedback term 0).
inline int flush_input(int state) {
    return ((state >> 1) & 1) ^ ((state >> 2) & 1);
}
}  // namespace rsc

}  // namespace fec
