#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fec/maxlogmap.hpp"
#include "fec/osd.hpp"
#include "fec/turbo.hpp"

namespace fec {

enum class Detection { crc, ned, genie };

struct HybridConfig {
    std::size_t osd_order = 2;
    std::size_t start_iteration = 1;  // f, 1-based
    double accum_alpha = 0.0;
    std::size_t t_max = 8;
    double eta = 0.2;
    CrcMode crc_mode = CrcMode::aided;
    Detection detection = Detection::ned;

    /// Enforces the detection/crc-mode pairing rules; throws on violation.
    void validate() const;
};

enum class DecodeStatus { std_success, osd_accepted, detected_error };

struct DecodeOutcome {
    std::vector<uint8_t> message;  // m bits; empty when an error is declared
    DecodeStatus status = DecodeStatus::detected_error;
    std::size_t iterations_used = 0;
    std::optional<double> ned_value;
    std::optional<double> best_distance;
};

/// R^t = L^t + alpha * R^{t-1}.
std::vector<double> accumulate(const std::vector<double>& current,
                               const std::vector<double>& previous_acc,
                               double alpha);

/// Reject iff the NED exceeds the threshold (strictly).
bool detect_ned(double ned_value, double eta);

/// Runs STD with per-iteration OSD per the configured schedule and renders
/// the final accept/detect decision.
class HybridDecoder {
public:
    HybridDecoder(const CodeConfig& cfg, double extrinsic_scale = 0.75);

    DecodeOutcome decode(const LlrFrame& frame, const HybridConfig& cfg,
                         const std::vector<uint8_t>* genie_truth = nullptr);

    const TurboGenerator& generators() const { return gen_; }
    const CodeConfig& config() const { return cfg_; }

private:
    CodeConfig cfg_;
    TurboGenerator gen_;
    TurboDecoder std_;
};

/// Scheme names as they appear in result legends, e.g. "STD",
/// "STD+OSD(2,1,0)", "STD+OSD(1,T,1)+CRC-aided+NED(0.15)", "MLD".
struct SchemeConfig {
    enum class Kind { std_only, hybrid, mld };
    Kind kind = Kind::std_only;
    HybridConfig hybrid;  // meaningful for Kind::hybrid; t_max also used by std_only
    std::string name;
};

/// Default NED threshold for a block length (0.2 short blocks, 0.15 from 96 up).
double default_eta(std::size_t k);

SchemeConfig parse_scheme(const std::string& name, std::size_t k);

}  // namespace fec
