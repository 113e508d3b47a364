#include "fec/osd.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "fec/crc24.hpp"

namespace fec {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Order-0 first, single flips by ascending basis index, then pairs (i, j),
// i < j, lexicographically. Enumeration order is part of the contract: the
// running argmin keeps the first candidate on ties.
template <typename Fn>
void for_each_flip_set(std::size_t rows, std::size_t order, Fn&& fn) {
    fn(kNone, kNone);
    if (order >= 1) {
        for (std::size_t i = 0; i < rows; ++i) fn(i, kNone);
    }
    if (order >= 2) {
        for (std::size_t i = 0; i + 1 < rows; ++i) {
            for (std::size_t j = i + 1; j < rows; ++j) fn(i, j);
        }
    }
}

}  // namespace

ColumnPermutation sort_by_reliability(const std::vector<double>& reliabilities) {
    std::vector<std::size_t> idx(reliabilities.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return std::abs(reliabilities[a]) > std::abs(reliabilities[b]);
    });
    return ColumnPermutation(std::move(idx));
}

MrbResult build_mrb(const BinaryMatrix& generator, const ColumnPermutation& perm) {
    BinaryMatrix permuted = apply_column_perm(generator, perm);
    SystematizeResult sr = systematize(permuted);
    if (sr.rank != generator.rows()) {
        throw std::logic_error("build_mrb: generator is rank deficient");
    }
    ColumnPermutation effective = sr.perm.compose_after(perm);
    return MrbResult{std::move(sr.gsys), std::move(effective)};
}

double discrepancy(const std::vector<uint8_t>& candidate, const OsdInput& input) {
    if (candidate.size() != input.hard_ref.size() ||
        candidate.size() != input.magnitudes.size()) {
        throw std::invalid_argument("discrepancy: length mismatch");
    }
    double d = 0.0;
    for (std::size_t i = 0; i < candidate.size(); ++i) {
        if (candidate[i] != input.hard_ref[i]) d += input.magnitudes[i];
    }
    return d;
}

double ned(double d_star, const std::vector<double>& magnitudes) {
    double total = 0.0;
    for (double m : magnitudes) total += m;
    if (total <= 0.0) {
        throw std::invalid_argument("ned: all-zero magnitudes");
    }
    return d_star / total;
}

void reencode_order_n(const BinaryMatrix& gsys_permuted,
                      const ColumnPermutation& effective_perm,
                      const std::vector<uint8_t>& basis_bits,
                      std::size_t order,
                      const std::function<void(const std::vector<uint8_t>&)>& visit) {
    if (order > 2) {
        throw std::invalid_argument("reencode_order_n: order capped at 2");
    }
    const std::size_t rows = gsys_permuted.rows();
    const std::size_t n = gsys_permuted.cols();
    if (basis_bits.size() != rows) {
        throw std::invalid_argument("reencode_order_n: basis size mismatch");
    }
    const std::size_t wpr = gsys_permuted.words_per_row();
    std::vector<uint64_t> base(wpr, 0);
    for (std::size_t j = 0; j < rows; ++j) {
        if (!basis_bits[j]) continue;
        const uint64_t* r = gsys_permuted.row_words(j);
        for (std::size_t w = 0; w < wpr; ++w) base[w] ^= r[w];
    }
    std::vector<uint64_t> cand(wpr);
    std::vector<uint8_t> natural(n);
    for_each_flip_set(rows, order, [&](std::size_t i, std::size_t j) {
        cand = base;
        if (i != kNone) {
            const uint64_t* r = gsys_permuted.row_words(i);
            for (std::size_t w = 0; w < wpr; ++w) cand[w] ^= r[w];
        }
        if (j != kNone) {
            const uint64_t* r = gsys_permuted.row_words(j);
            for (std::size_t w = 0; w < wpr; ++w) cand[w] ^= r[w];
        }
        for (std::size_t p = 0; p < n; ++p) {
            natural[effective_perm(p)] = (cand[p >> 6] >> (p & 63)) & 1u;
        }
        visit(natural);
    });
}

OsdResult osd_decode(const OsdInput& input, std::size_t order, CrcMode crc_mode) {
    if (input.generator == nullptr) {
        throw std::invalid_argument("osd_decode: missing generator");
    }
    if (order > 2) {
        throw std::invalid_argument("osd_decode: order capped at 2");
    }
    const BinaryMatrix& g = *input.generator;
    const std::size_t n = g.cols();
    const std::size_t rows = g.rows();
    if (input.reliabilities.size() != n || input.hard_ref.size() != n ||
        input.magnitudes.size() != n) {
        throw std::invalid_argument("osd_decode: input length mismatch");
    }

    const ColumnPermutation perm = sort_by_reliability(input.reliabilities);
    MrbResult mrb = build_mrb(g, perm);
    const BinaryMatrix& gp = mrb.gsys_permuted;
    const ColumnPermutation& eff = mrb.effective_perm;
    const std::size_t wpr = gp.words_per_row();

    // permuted-domain views of the channel reference
    std::vector<uint64_t> z_perm((n + 63) / 64, 0);
    std::vector<double> w_perm(n);
    for (std::size_t p = 0; p < n; ++p) {
        const std::size_t src = eff(p);
        if (input.hard_ref[src]) z_perm[p >> 6] |= uint64_t{1} << (p & 63);
        w_perm[p] = input.magnitudes[src];
    }
    const uint64_t high_mask =
        (n & 63) ? ((uint64_t{1} << (n & 63)) - 1) : ~uint64_t{0};

    // basis bits: sign decisions of the (sorted) reliabilities
    std::vector<uint8_t> basis(rows);
    for (std::size_t j = 0; j < rows; ++j) basis[j] = input.reliabilities[eff(j)] < 0.0 ? 1 : 0;

    std::vector<uint64_t> base(wpr, 0);
    for (std::size_t j = 0; j < rows; ++j) {
        if (!basis[j]) continue;
        const uint64_t* r = gp.row_words(j);
        for (std::size_t w = 0; w < wpr; ++w) base[w] ^= r[w];
    }

    std::vector<std::size_t> nat_of_perm;
    std::size_t cb_len = 0;
    if (crc_mode == CrcMode::filter) {
        cb_len = rows;  // generator is k x 3k in filter mode
        nat_of_perm.resize(n);
        for (std::size_t p = 0; p < n; ++p) nat_of_perm[p] = eff(p);
    }

    OsdResult res;
    double best = std::numeric_limits<double>::infinity();
    std::vector<uint64_t> best_words;
    bool have_best = false;

    std::vector<uint64_t> cand(wpr);
    std::vector<uint8_t> cb(cb_len);
    for_each_flip_set(rows, order, [&](std::size_t i, std::size_t j) {
        ++res.candidates_evaluated;
        cand = base;
        if (i != kNone) {
            const uint64_t* r = gp.row_words(i);
            for (std::size_t w = 0; w < wpr; ++w) cand[w] ^= r[w];
        }
        if (j != kNone) {
            const uint64_t* r = gp.row_words(j);
            for (std::size_t w = 0; w < wpr; ++w) cand[w] ^= r[w];
        }
        if (crc_mode == CrcMode::filter) {
            for (std::size_t p = 0; p < n; ++p) {
                const std::size_t nat = nat_of_perm[p];
                if (nat < cb_len) cb[nat] = (cand[p >> 6] >> (p & 63)) & 1u;
            }
            if (!crc24::crc_check(cb)) return;
        }
        double d = 0.0;
        for (std::size_t w = 0; w < wpr; ++w) {
            uint64_t diff = cand[w] ^ z_perm[w];
            if (w + 1 == wpr) diff &= high_mask;
            while (diff) {
                const int b = std::countr_zero(diff);
                d += w_perm[w * 64 + static_cast<std::size_t>(b)];
                diff &= diff - 1;
            }
        }
        if (d < best) {
            best = d;
            best_words = cand;
            have_best = true;
        }
    });

    if (!have_best) {
        // filter mode with no CRC-passing candidate
        res.crc_filtered_empty = true;
        res.best_codeword.assign(n, 0);
        res.best_distance = 0.0;
        res.ned = 0.0;
        return res;
    }
    res.best_distance = best;
    res.ned = ned(best, input.magnitudes);
    res.best_codeword.assign(n, 0);
    for (std::size_t p = 0; p < n; ++p) {
        res.best_codeword[eff(p)] = (best_words[p >> 6] >> (p & 63)) & 1u;
    }
    return res;
}

}  // namespace fec
