#include "fec/turbo.hpp"

#include <stdexcept>

#include "fec/crc24.hpp"

namespace fec {

CodeConfig CodeConfig::for_block_length(std::size_t k) {
    for (const auto& e : qpp_table()) {
        if (e.k == k) {
            CodeConfig cfg;
            cfg.k = k;
            cfg.m = k - crc24::kParityBits;
            cfg.qpp_f1 = e.f1;
            cfg.qpp_f2 = e.f2;
            cfg.n_coded = 3 * k + kTailBits;
            cfg.rate = static_cast<double>(cfg.m) / static_cast<double>(cfg.n_coded);
            return cfg;
        }
    }
    throw std::invalid_argument("CodeConfig: unsupported block length " + std::to_string(k));
}

std::vector<std::size_t> qpp_permutation(const CodeConfig& cfg) {
    std::vector<std::size_t> pi(cfg.k);
    for (std::size_t i = 0; i < cfg.k; ++i) {
        // compute mod k at every step to avoid overflow for the largest sizes
        const std::size_t lin = (cfg.qpp_f1 % cfg.k) * i % cfg.k;
        const std::size_t quad = (cfg.qpp_f2 % cfg.k) * i % cfg.k * i % cfg.k;
        pi[i] = (lin + quad) % cfg.k;
    }
    return pi;
}

std::vector<uint8_t> impulse_sequence(std::size_t k) {
    if (k < 1) {
        throw std::invalid_argument("impulse_sequence: k must be >= 1");
    }
    static const uint8_t period[7] = {1, 1, 1, 0, 0, 1, 0};
    std::vector<uint8_t> seq(k);
    seq[0] = 1;
    for (std::size_t i = 1; i < k; ++i) seq[i] = period[(i - 1) % 7];
    return seq;
}

BinaryMatrix build_parity_matrix(std::size_t k) {
    const std::vector<uint8_t> a = impulse_sequence(k);
    BinaryMatrix p(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i; j < k; ++j) {
            if (a[j - i]) p.set(i, j, true);
        }
    }
    return p;
}

TurboGenerator build_generators(const CodeConfig& cfg) {
    const std::size_t k = cfg.k;
    const BinaryMatrix p = build_parity_matrix(k);
    const std::vector<std::size_t> pi = qpp_permutation(cfg);
    std::vector<std::size_t> pi_inv(k);
    for (std::size_t i = 0; i < k; ++i) pi_inv[pi[i]] = i;

    BinaryMatrix g_turbo(k, 3 * k);
    for (std::size_t i = 0; i < k; ++i) {
        g_turbo.set(i, i, true);
        for (std::size_t j = 0; j < k; ++j) {
            if (p.get(i, j)) g_turbo.set(i, k + j, true);
            // interleaved parity: row i of P~ is row pi_inv(i) of P
            if (p.get(pi_inv[i], j)) g_turbo.set(i, 2 * k + j, true);
        }
    }

    const crc24::CrcGenerators crc = crc24::build_crc_generators(cfg.m);
    // G^CRC is m x k, g_turbo is k x 3k
    BinaryMatrix g_concat = mat_mul(crc.sys, g_turbo);
    return TurboGenerator{std::move(g_turbo), std::move(g_concat)};
}

std::vector<uint8_t> trellis_encode(const CodeConfig& cfg, const std::vector<uint8_t>& cb) {
    const std::size_t k = cfg.k;
    if (cb.size() != k) {
        throw std::invalid_argument("trellis_encode: code block length mismatch");
    }
    const std::vector<std::size_t> pi = qpp_permutation(cfg);
    std::vector<uint8_t> out;
    out.reserve(3 * k + kTailBits);
    out.insert(out.end(), cb.begin(), cb.end());

    int s1 = 0;
    for (std::size_t i = 0; i < k; ++i) {
        const int d = cb[i];
        out.push_back(static_cast<uint8_t>(rsc::parity_out(s1, d)));
        s1 = rsc::next_state(s1, d);
    }
    int s2 = 0;
    for (std::size_t i = 0; i < k; ++i) {
        const int d = cb[pi[i]];
        out.push_back(static_cast<uint8_t>(rsc::parity_out(s2, d)));
        s2 = rsc::next_state(s2, d);
    }
    // trellis termination, three flush steps per encoder
    for (int* s : {&s1, &s2}) {
        for (int t = 0; t < 3; ++t) {
            const int d = rsc::flush_input(*s);
            out.push_back(static_cast<uint8_t>(d));
            out.push_back(static_cast<uint8_t>(rsc::parity_out(*s, d)));
            *s = rsc::next_state(*s, d);
        }
        if (*s != 0) {
            throw std::logic_error("trellis_encode: termination did not reach state zero");
        }
    }
    return out;
}

}  // namespace fec
