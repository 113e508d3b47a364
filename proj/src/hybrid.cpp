#include "fec/hybrid.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fec {

void HybridConfig::validate() const {
    if (osd_order > 2) {
        throw std::invalid_argument("HybridConfig: osd_order capped at 2");
    }
    if (start_iteration < 1 || start_iteration > t_max) {
        throw std::invalid_argument("HybridConfig: start_iteration must be in [1, t_max]");
    }
    if (accum_alpha < 0.0) {
        throw std::invalid_argument("HybridConfig: accum_alpha must be >= 0");
    }
    if (eta < 0.0 || eta > 1.0) {
        throw std::invalid_argument("HybridConfig: eta must be in [0, 1]");
    }
    if (detection == Detection::crc && crc_mode != CrcMode::filter) {
        throw std::invalid_argument("HybridConfig: CRC detection requires the CRC-filter mode");
    }
    if (crc_mode == CrcMode::aided && detection == Detection::crc) {
        throw std::invalid_argument("HybridConfig: CRC-aided decoding cannot use CRC detection");
    }
}

std::vector<double> accumulate(const std::vector<double>& current,
                               const std::vector<double>& previous_acc,
                               double alpha) {
    if (current.size() != previous_acc.size()) {
        throw std::invalid_argument("accumulate: length mismatch");
    }
    std::vector<double> out(current.size());
    for (std::size_t i = 0; i < current.size(); ++i) {
        out[i] = current[i] + alpha * previous_acc[i];
    }
    return out;
}

bool detect_ned(double ned_value, double eta) { return ned_value > eta; }

HybridDecoder::HybridDecoder(const CodeConfig& cfg, double extrinsic_scale)
    : cfg_(cfg), gen_(build_generators(cfg)), std_(cfg, extrinsic_scale) {}

DecodeOutcome HybridDecoder::decode(const LlrFrame& frame, const HybridConfig& hc,
                                    const std::vector<uint8_t>* genie_truth) {
    hc.validate();
    if (hc.detection == Detection::genie && genie_truth == nullptr) {
        throw std::invalid_argument("HybridDecoder: genie detection without the transmitted block");
    }
    const std::size_t k = cfg_.k;
    const std::size_t n = 3 * k;

    OsdInput osd_in;
    osd_in.generator = hc.crc_mode == CrcMode::aided ? &gen_.g_concat : &gen_.g_turbo;
    osd_in.hard_ref.resize(n);
    osd_in.magnitudes.resize(n);
    auto channel_at = [&](std::size_t i) -> double {
        if (i < k) return frame.sys[i];
        if (i < 2 * k) return frame.par1[i - k];
        return frame.par2[i - 2 * k];
    };
    for (std::size_t i = 0; i < n; ++i) {
        const double y = channel_at(i);
        osd_in.hard_ref[i] = y < 0.0 ? 1 : 0;
        osd_in.magnitudes[i] = std::abs(y);
    }

    std_.reset(frame);
    std::vector<double> acc(n, 0.0);
    std::optional<OsdResult> best;
    std::size_t iterations = 0;
    for (std::size_t t = 1; t <= hc.t_max; ++t) {
        IterationOutput out = std_.iterate();
        iterations = t;
        if (out.crc_pass) {
            DecodeOutcome res;
            res.status = DecodeStatus::std_success;
            res.iterations_used = t;
            res.message.assign(out.hard_cb.begin(),
                               out.hard_cb.begin() + static_cast<std::ptrdiff_t>(cfg_.m));
            return res;
        }
        acc = accumulate(out.full_llrs, acc, hc.accum_alpha);
        if (t >= hc.start_iteration) {
            osd_in.reliabilities = acc;
            OsdResult r = osd_decode(osd_in, hc.osd_order, hc.crc_mode);
            if (!r.crc_filtered_empty &&
                (!best || r.best_distance < best->best_distance)) {
                best = std::move(r);
            }
        }
    }

    DecodeOutcome res;
    res.iterations_used = iterations;
    if (!best) {
        res.status = DecodeStatus::detected_error;
        return res;
    }
    res.ned_value = best->ned;
    res.best_distance = best->best_distance;

    bool reject = false;
    switch (hc.detection) {
        case Detection::crc:
            reject = false;  // a CRC-passing candidate exists
            break;
        case Detection::ned:
            reject = detect_ned(best->ned, hc.eta);
            break;
        case Detection::genie:
            reject = !std::equal(genie_truth->begin(), genie_truth->end(),
                                 best->best_codeword.begin());
            break;
    }
    if (reject) {
        res.status = DecodeStatus::detected_error;
        return res;
    }
    res.status = DecodeStatus::osd_accepted;
    res.message.assign(best->best_codeword.begin(),
                       best->best_codeword.begin() + static_cast<std::ptrdiff_t>(cfg_.m));
    return res;
}

double default_eta(std::size_t k) { return k >= 96 ? 0.15 : 0.2; }

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t");
    std::size_t b = s.find_last_not_of(" \t");
    if (a == std::string::npos) return "";
    return s.substr(a, b - a + 1);
}

}  // namespace

SchemeConfig parse_scheme(const std::string& name, std::size_t k) {
    SchemeConfig sc;
    sc.name = name;
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (pos <= name.size()) {
        std::size_t next = name.find('+', pos);
        if (next == std::string::npos) next = name.size();
        parts.push_back(trim(name.substr(pos, next - pos)));
        pos = next + 1;
    }
    if (parts.empty() || parts.front() == "") {
        throw std::invalid_argument("parse_scheme: empty scheme name");
    }
    if (parts.front() == "MLD") {
        if (parts.size() != 1) {
            throw std::invalid_argument("parse_scheme: MLD takes no modifiers");
        }
        sc.kind = SchemeConfig::Kind::mld;
        return sc;
    }
    if (parts.front() != "STD") {
        throw std::invalid_argument("parse_scheme: unknown scheme '" + parts.front() + "'");
    }
    if (parts.size() == 1) {
        sc.kind = SchemeConfig::Kind::std_only;
        return sc;
    }

    sc.kind = SchemeConfig::Kind::hybrid;
    HybridConfig& hc = sc.hybrid;
    hc.crc_mode = CrcMode::filter;
    hc.detection = Detection::crc;
    hc.eta = default_eta(k);
    bool have_osd = false;
    for (std::size_t i = 1; i < parts.size(); ++i) {
        const std::string& p = parts[i];
        if (p.rfind("OSD(", 0) == 0 && p.back() == ')') {
            const std::string args = p.substr(4, p.size() - 5);
            std::size_t c1 = args.find(',');
            std::size_t c2 = args.find(',', c1 == std::string::npos ? 0 : c1 + 1);
            if (c1 == std::string::npos || c2 == std::string::npos) {
                throw std::invalid_argument("parse_scheme: OSD needs (N,f,alpha)");
            }
            const std::string fs = trim(args.substr(c1 + 1, c2 - c1 - 1));
            hc.osd_order = std::stoul(trim(args.substr(0, c1)));
            hc.start_iteration = (fs == "T") ? hc.t_max : std::stoul(fs);
            hc.accum_alpha = std::stod(trim(args.substr(c2 + 1)));
            have_osd = true;
        } else if (p == "CRC-aided") {
            hc.crc_mode = CrcMode::aided;
            if (hc.detection == Detection::crc) hc.detection = Detection::ned;
        } else if (p.rfind("NED(", 0) == 0 && p.back() == ')') {
            hc.detection = Detection::ned;
            hc.eta = std::stod(p.substr(4, p.size() - 5));
        } else if (p == "NED") {
            hc.detection = Detection::ned;
        } else if (p == "Genie") {
            hc.detection = Detection::genie;
        } else {
            throw std::invalid_argument("parse_scheme: unknown modifier '" + p + "'");
        }
    }
    if (!have_osd) {
        throw std::invalid_argument("parse_scheme: hybrid scheme needs an OSD(N,f,alpha) term");
    }
    hc.validate();
    return sc;
}

}  // namespace fec
