#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fec/hybrid.hpp"

namespace fec {

struct ChannelParams {
    double ebn0_db;
    double noise_var;  // sigma^2 = 1 / (2 * rate * 10^(ebn0/10)), unit symbol energy

    static ChannelParams from_ebn0(double ebn0_db, const CodeConfig& cfg);
};

struct SweepPoint {
    double ebn0_db = 0.0;
    std::uint64_t frames_run = 0;
    std::uint64_t frame_errors = 0;       // detected or wrong message
    std::uint64_t undetected_errors = 0;  // accepted with wrong message
    double fer = 0.0;
    double uer = 0.0;
    std::uint64_t seed = 0;
};

std::vector<double> modulate(const std::vector<uint8_t>& bits);

void add_noise(std::vector<double>& symbols, double noise_var, std::mt19937_64& rng);

/// Brute-force maximum likelihood decoder: enumerates all 2^m messages once
/// and picks the codeword with maximum correlation to the received samples.
class MlOracle {
public:
    explicit MlOracle(const CodeConfig& cfg);  // rejects m > 20

    /// Returns the full 3k+12 codeword closest to y.
    std::vector<uint8_t> decode(const std::vector<double>& y) const;

    std::size_t codebook_size() const { return codebook_.size() / stride_; }

private:
    CodeConfig cfg_;
    std::size_t stride_;                // words per codeword
    std::vector<uint64_t> codebook_;    // packed codewords
};

struct StopRule {
    std::uint64_t max_frames = 1000000;
    std::uint64_t min_frame_errors = 100;
};

/// Deterministic per-point seed from a master seed and the point index.
std::uint64_t derive_seed(std::uint64_t master_seed, std::size_t point_index);

/// One Monte Carlo measurement: random message, CRC + trellis encoding, BPSK,
/// AWGN, decode with the configured scheme, classify against the truth.
SweepPoint run_point(const SchemeConfig& scheme, const CodeConfig& cfg, double ebn0_db,
                     const StopRule& stop, std::uint64_t seed);

}  // namespace fec
