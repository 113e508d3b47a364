#include "fec/maxlogmap.hpp"

#include <algorithm>
#include <stdexcept>

#include "fec/crc24.hpp"

namespace fec {

namespace {

constexpr double kNegInf = -1e300;

inline double bpsk(int bit) { return bit ? -1.0 : 1.0; }

struct Trellis {
    // [state][input] -> next state / parity label
    std::array<std::array<int, 2>, 8> next;
    std::array<std::array<int, 2>, 8> par;
    Trellis() {
        for (int s = 0; s < 8; ++s) {
            for (int d = 0; d < 2; ++d) {
                next[s][d] = rsc::next_state(s, d);
                par[s][d] = rsc::parity_out(s, d);
            }
        }
    }
};

const Trellis kTrellis;

void normalize(std::array<double, 8>& v) {
    const double m = *std::max_element(v.begin(), v.end());
    if (m > kNegInf) {
        for (double& x : v) x -= m;
    }
}

}  // namespace

LlrFrame channel_llrs(std::span<const double> y, double noise_var, std::size_t k) {
    if (noise_var <= 0.0) {
        throw std::invalid_argument("channel_llrs: noise variance must be positive");
    }
    if (y.size() != 3 * k + kTailBits) {
        throw std::invalid_argument("channel_llrs: expected 3k+12 samples");
    }
    const double scale = 2.0 / noise_var;
    LlrFrame f;
    f.noise_var = noise_var;
    f.sys.resize(k);
    f.par1.resize(k);
    f.par2.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        f.sys[i] = scale * y[i];
        f.par1[i] = scale * y[k + i];
        f.par2[i] = scale * y[2 * k + i];
    }
    for (std::size_t i = 0; i < kTailBits; ++i) f.tails[i] = scale * y[3 * k + i];
    return f;
}

ComponentResult component_decode(std::span<const double> sys_llr,
                                 std::span<const double> par_llr,
                                 std::span<const double> apriori,
                                 std::span<const double, 3> tail_sys,
                                 std::span<const double, 3> tail_par) {
    const std::size_t k = sys_llr.size();
    std::vector<std::array<double, 8>> alpha(k + 1);
    std::vector<std::array<double, 8>> beta(k + 1);

    alpha[0].fill(kNegInf);
    alpha[0][0] = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const double ls = sys_llr[i] + apriori[i];
        const double lp = par_llr[i];
        alpha[i + 1].fill(kNegInf);
        for (int s = 0; s < 8; ++s) {
            if (alpha[i][s] <= kNegInf) continue;
            for (int d = 0; d < 2; ++d) {
                const double g = 0.5 * ls * bpsk(d) + 0.5 * lp * bpsk(kTrellis.par[s][d]);
                const int ns = kTrellis.next[s][d];
                alpha[i + 1][ns] = std::max(alpha[i + 1][ns], alpha[i][s] + g);
            }
        }
        normalize(alpha[i + 1]);
    }

    // absorb the three tail steps into the backward boundary
    std::array<double, 8> b;
    b.fill(kNegInf);
    b[0] = 0.0;
    for (int t = 2; t >= 0; --t) {
        std::array<double, 8> prev;
        prev.fill(kNegInf);
        for (int s = 0; s < 8; ++s) {
            for (int d = 0; d < 2; ++d) {
                const double g = 0.5 * tail_sys[t] * bpsk(d) +
                                 0.5 * tail_par[t] * bpsk(kTrellis.par[s][d]);
                const double cand = g + b[kTrellis.next[s][d]];
                prev[s] = std::max(prev[s], cand);
            }
        }
        b = prev;
    }
    beta[k] = b;
    normalize(beta[k]);
    for (std::size_t i = k; i-- > 0;) {
        const double ls = sys_llr[i] + apriori[i];
        const double lp = par_llr[i];
        beta[i].fill(kNegInf);
        for (int s = 0; s < 8; ++s) {
            for (int d = 0; d < 2; ++d) {
                const double g = 0.5 * ls * bpsk(d) + 0.5 * lp * bpsk(kTrellis.par[s][d]);
                const double cand = g + beta[i + 1][kTrellis.next[s][d]];
                beta[i][s] = std::max(beta[i][s], cand);
            }
        }
        normalize(beta[i]);
    }

    ComponentResult out;
    out.extrinsic.resize(k);
    out.sys_full.resize(k);
    out.par_full.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        const double ls = sys_llr[i] + apriori[i];
        const double lp = par_llr[i];
        double best_sys[2] = {kNegInf, kNegInf};
        double best_par[2] = {kNegInf, kNegInf};
        for (int s = 0; s < 8; ++s) {
            if (alpha[i][s] <= kNegInf) continue;
            for (int d = 0; d < 2; ++d) {
                const int c = kTrellis.par[s][d];
                const double g = 0.5 * ls * bpsk(d) + 0.5 * lp * bpsk(c);
                const double metric = alpha[i][s] + g + beta[i + 1][kTrellis.next[s][d]];
                best_sys[d] = std::max(best_sys[d], metric);
                best_par[c] = std::max(best_par[c], metric);
            }
        }
        out.sys_full[i] = best_sys[0] - best_sys[1];
        out.par_full[i] = best_par[0] - best_par[1];
        out.extrinsic[i] = out.sys_full[i] - sys_llr[i] - apriori[i];
    }
    return out;
}

TurboDecoder::TurboDecoder(const CodeConfig& cfg, double extrinsic_scale)
    : cfg_(cfg), scale_(extrinsic_scale), pi_(qpp_permutation(cfg)) {}

void TurboDecoder::reset(const LlrFrame& frame) {
    if (frame.k() != cfg_.k) {
        throw std::invalid_argument("TurboDecoder: frame length mismatch");
    }
    frame_ = &frame;
    apriori1_.assign(cfg_.k, 0.0);
    sys2_.resize(cfg_.k);
    for (std::size_t i = 0; i < cfg_.k; ++i) sys2_[i] = frame.sys[pi_[i]];
    iter_ = 0;
}

IterationOutput TurboDecoder::iterate() {
    if (frame_ == nullptr) {
        throw std::logic_error("TurboDecoder: iterate() before reset()");
    }
    const std::size_t k = cfg_.k;
    const auto& t = frame_->tails;
    const std::array<double, 3> t1s = {t[0], t[2], t[4]};
    const std::array<double, 3> t1p = {t[1], t[3], t[5]};
    const std::array<double, 3> t2s = {t[6], t[8], t[10]};
    const std::array<double, 3> t2p = {t[7], t[9], t[11]};

    ComponentResult d1 = component_decode(frame_->sys, frame_->par1, apriori1_, t1s, t1p);
    std::vector<double> apriori2(k);
    for (std::size_t i = 0; i < k; ++i) apriori2[i] = scale_ * d1.extrinsic[pi_[i]];

    ComponentResult d2 = component_decode(sys2_, frame_->par2, apriori2, t2s, t2p);
    for (std::size_t i = 0; i < k; ++i) apriori1_[pi_[i]] = scale_ * d2.extrinsic[i];

    IterationOutput out;
    out.iteration = ++iter_;
    out.full_llrs.resize(3 * k);
    for (std::size_t i = 0; i < k; ++i) {
        out.full_llrs[pi_[i]] = d2.sys_full[i];     // systematic, de-interleaved
        out.full_llrs[k + i] = d1.par_full[i];      // parity 1
        out.full_llrs[2 * k + i] = d2.par_full[i];  // parity 2, trellis order
    }
    out.hard_cb.resize(k);
    for (std::size_t i = 0; i < k; ++i) out.hard_cb[i] = out.full_llrs[i] < 0.0 ? 1 : 0;
    out.crc_pass = crc24::crc_check(out.hard_cb);
    return out;
}

std::pair<IterationOutput, std::vector<IterationOutput>> TurboDecoder::decode(
    const LlrFrame& frame, std::size_t t_max) {
    if (t_max < 1) {
        throw std::invalid_argument("TurboDecoder: t_max must be >= 1");
    }
    reset(frame);
    std::vector<IterationOutput> per_iter;
    per_iter.reserve(t_max);
    for (std::size_t t = 0; t < t_max; ++t) {
        per_iter.push_back(iterate());
        if (per_iter.back().crc_pass) break;
    }
    IterationOutput final = per_iter.back();
    return {std::move(final), std::move(per_iter)};
}

}  // namespace fec
