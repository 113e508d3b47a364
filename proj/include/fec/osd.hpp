#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "fec/gf2.hpp"

namespace fec {

enum class CrcMode { aided, filter, none };

/// Everything one OSD invocation needs. Reliabilities drive the sort (and the
/// re-encoding basis); hard_ref/magnitudes come from the channel and feed the
/// discrepancy metric only.
struct OsdInput {
    std::vector<double> reliabilities;  // 3k, accumulated decoder LLRs
    std::vector<uint8_t> hard_ref;      // 3k, signs of the channel samples
    std::vector<double> magnitudes;     // 3k, |y_i|
    const BinaryMatrix* generator = nullptr;  // k x 3k or m x 3k
};

struct OsdResult {
    std::vector<uint8_t> best_codeword;  // natural order, 3k
    double best_distance = 0.0;
    double ned = 0.0;
    std::size_t candidates_evaluated = 0;
    bool crc_filtered_empty = false;
};

/// Orders positions by |reliability| descending, ties by lower index first.
ColumnPermutation sort_by_reliability(const std::vector<double>& reliabilities);

struct MrbResult {
    BinaryMatrix gsys_permuted;
    ColumnPermutation effective_perm;  // reliability sort composed with elimination swaps
};

/// Column-permutes the generator and systematizes it; the first rows()
/// positions of the permuted domain form the most reliable basis.
MrbResult build_mrb(const BinaryMatrix& generator, const ColumnPermutation& perm);

/// Sum of |y_i| over positions where the candidate disagrees with the channel
/// hard decision.
double discrepancy(const std::vector<uint8_t>& candidate, const OsdInput& input);

/// d* normalized by the total channel magnitude; in [0, 1].
double ned(double d_star, const std::vector<double>& magnitudes);

/// Streams all order-<=n candidates (order-0, then single flips by ascending
/// basis index, then pairs lexicographically) to the visitor in natural order.
void reencode_order_n(const BinaryMatrix& gsys_permuted,
                      const ColumnPermutation& effective_perm,
                      const std::vector<uint8_t>& basis_bits,
                      std::size_t order,
                      const std::function<void(const std::vector<uint8_t>&)>& visit);

OsdResult osd_decode(const OsdInput& input, std::size_t order, CrcMode crc_mode);

}  // namespace fec
