#include "fec/linksim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fec/crc24.hpp"

namespace fec {

ChannelParams ChannelParams::from_ebn0(double ebn0_db, const CodeConfig& cfg) {
    const double ebn0 = std::pow(10.0, ebn0_db / 10.0);
    ChannelParams p;
    p.ebn0_db = ebn0_db;
    p.noise_var = 1.0 / (2.0 * cfg.rate * ebn0);
    return p;
}

std::vector<double> modulate(const std::vector<uint8_t>& bits) {
    std::vector<double> s(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) s[i] = bits[i] ? -1.0 : 1.0;
    return s;
}

void add_noise(std::vector<double>& symbols, double noise_var, std::mt19937_64& rng) {
    std::normal_distribution<double> dist(0.0, std::sqrt(noise_var));
    for (double& s : symbols) s += dist(rng);
}

MlOracle::MlOracle(const CodeConfig& cfg) : cfg_(cfg) {
    if (cfg.m > 20) {
        throw std::invalid_argument("MlOracle: message length too large for enumeration");
    }
    const std::size_t n = cfg.n_coded;
    stride_ = (n + 63) / 64;
    const std::size_t count = std::size_t{1} << cfg.m;
    codebook_.assign(count * stride_, 0);
    std::vector<uint8_t> msg(cfg.m);
    for (std::size_t u = 0; u < count; ++u) {
        for (std::size_t b = 0; b < cfg.m; ++b) msg[b] = (u >> b) & 1u;
        std::vector<uint8_t> cb = msg;
        const std::vector<uint8_t> par = crc24::crc_encode(msg);
        cb.insert(cb.end(), par.begin(), par.end());
        const std::vector<uint8_t> coded = trellis_encode(cfg_, cb);
        uint64_t* w = codebook_.data() + u * stride_;
        for (std::size_t i = 0; i < n; ++i) {
            if (coded[i]) w[i >> 6] |= uint64_t{1} << (i & 63);
        }
    }
}

std::vector<uint8_t> MlOracle::decode(const std::vector<double>& y) const {
    const std::size_t n = cfg_.n_coded;
    if (y.size() != n) {
        throw std::invalid_argument("MlOracle: sample count mismatch");
    }
    // correlation = sum(y) - 2 * sum_{c_i=1} y_i; minimizing the second term
    // maximizes the correlation
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_u = 0;
    const std::size_t count = codebook_.size() / stride_;
    for (std::size_t u = 0; u < count; ++u) {
        const uint64_t* w = codebook_.data() + u * stride_;
        double s = 0.0;
        for (std::size_t wi = 0; wi < stride_; ++wi) {
            uint64_t bits = w[wi];
            while (bits) {
                const int b = std::countr_zero(bits);
                s += y[wi * 64 + static_cast<std::size_t>(b)];
                bits &= bits - 1;
            }
        }
        if (s < best) {
            best = s;
            best_u = u;
        }
    }
    const uint64_t* w = codebook_.data() + best_u * stride_;
    std::vector<uint8_t> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = (w[i >> 6] >> (i & 63)) & 1u;
    return out;
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::size_t point_index) {
    // splitmix64 step over (seed, index)
    std::uint64_t z = master_seed + 0x9e3779b97f4a7c15ULL * (point_index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

SweepPoint run_point(const SchemeConfig& scheme, const CodeConfig& cfg, double ebn0_db,
                     const StopRule& stop, std::uint64_t seed) {
    const ChannelParams ch = ChannelParams::from_ebn0(ebn0_db, cfg);
    std::mt19937_64 rng(seed);

    TurboDecoder std_dec(cfg);
    std::optional<HybridDecoder> hyb;
    std::optional<MlOracle> ml;
    switch (scheme.kind) {
        case SchemeConfig::Kind::hybrid:
            hyb.emplace(cfg);
            break;
        case SchemeConfig::Kind::mld:
            ml.emplace(cfg);
            break;
        case SchemeConfig::Kind::std_only:
            break;
    }

    SweepPoint pt;
    pt.ebn0_db = ebn0_db;
    pt.seed = seed;

    std::vector<uint8_t> msg(cfg.m);
    while (pt.frames_run < stop.max_frames && pt.frame_errors < stop.min_frame_errors) {
        for (std::size_t b = 0; b < cfg.m; ++b) msg[b] = (rng() >> 32) & 1u;
        std::vector<uint8_t> cb = msg;
        const std::vector<uint8_t> par = crc24::crc_encode(msg);
        cb.insert(cb.end(), par.begin(), par.end());
        const std::vector<uint8_t> coded = trellis_encode(cfg, cb);
        std::vector<double> y = modulate(coded);
        add_noise(y, ch.noise_var, rng);

        bool accepted = false;
        bool message_ok = false;
        switch (scheme.kind) {
            case SchemeConfig::Kind::std_only: {
                const LlrFrame frame = channel_llrs(y, ch.noise_var, cfg.k);
                auto [out, iters] = std_dec.decode(frame, scheme.hybrid.t_max);
                accepted = out.crc_pass;
                message_ok = accepted &&
                             std::equal(msg.begin(), msg.end(), out.hard_cb.begin());
                break;
            }
            case SchemeConfig::Kind::hybrid: {
                const LlrFrame frame = channel_llrs(y, ch.noise_var, cfg.k);
                const DecodeOutcome out = hyb->decode(frame, scheme.hybrid, &cb);
                accepted = out.status != DecodeStatus::detected_error;
                message_ok = accepted && out.message == msg;
                break;
            }
            case SchemeConfig::Kind::mld: {
                const std::vector<uint8_t> cw = ml->decode(y);
                accepted = true;
                message_ok = std::equal(msg.begin(), msg.end(), cw.begin());
                break;
            }
        }

        ++pt.frames_run;
        if (!accepted || !message_ok) ++pt.frame_errors;
        if (accepted && !message_ok) ++pt.undetected_errors;
    }
    pt.fer = static_cast<double>(pt.frame_errors) / static_cast<double>(pt.frames_run);
    pt.uer = static_cast<double>(pt.undetected_errors) / static_cast<double>(pt.frames_run);
    return pt;
}

}  // namespace fec
