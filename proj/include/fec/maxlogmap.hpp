#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "fec/turbo.hpp"

namespace fec {

/// Channel LLRs for one frame, split by transmit stream. Sign convention:
/// positive LLR favours bit 0 (BPSK 0 -> +1, 1 -> -1).
struct LlrFrame {
    std::vector<double> sys;    // k
    std::vector<double> par1;   // k
    std::vector<double> par2;   // k
    std::array<double, kTailBits> tails;  // x,z pairs: encoder 1 then encoder 2
    double noise_var = 1.0;

    std::size_t k() const { return sys.size(); }
};

/// LLR = 2*y/sigma^2 for every received sample; y is laid out sys, par1,
/// par2, tails (3k+12 values).
LlrFrame channel_llrs(std::span<const double> y, double noise_var, std::size_t k);

struct IterationOutput {
    std::vector<double> full_llrs;  // 3k: sys, par1, par2 in natural order
    std::vector<uint8_t> hard_cb;   // k, from the systematic LLRs
    bool crc_pass = false;
    std::size_t iteration = 0;
};

struct ComponentResult {
    std::vector<double> extrinsic;
    std::vector<double> sys_full;
    std::vector<double> par_full;
};

/// One Max-Log-MAP pass over the 8-state trellis. The forward recursion
/// starts in state 0; the backward recursion is anchored in state 0 after the
/// three tail steps, whose sys/parity LLRs are passed as the boundary.
ComponentResult component_decode(std::span<const double> sys_llr,
                                 std::span<const double> par_llr,
                                 std::span<const double> apriori,
                                 std::span<const double, 3> tail_sys,
                                 std::span<const double, 3> tail_par);

/// Iterative turbo decoder: two constituent Max-Log-MAP decoders exchanging
/// scaled extrinsic information. Holds per-frame state between iterations.
class TurboDecoder {
public:
    explicit TurboDecoder(const CodeConfig& cfg, double extrinsic_scale = 0.75);

    void reset(const LlrFrame& frame);

    /// One full iteration (decoder 1 then decoder 2); call after reset().
    IterationOutput iterate();

    /// Runs up to t_max iterations, stopping early on CRC pass. Returns the
    /// final output plus every per-iteration output.
    std::pair<IterationOutput, std::vector<IterationOutput>> decode(const LlrFrame& frame,
                                                                    std::size_t t_max);

    const CodeConfig& config() const { return cfg_; }
    double extrinsic_scale() const { return scale_; }

private:
    CodeConfig cfg_;
    double scale_;
    std::vector<std::size_t> pi_;
    const LlrFrame* frame_ = nullptr;
    std::vector<double> apriori1_;
    std::vector<double> sys2_;  // interleaved systematic LLRs
    std::size_t iter_ = 0;
};

}  // namespace fec
