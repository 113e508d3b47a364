#include "fec/gf2.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace fec {

BinaryMatrix::BinaryMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), words_(rows * wpr_, 0) {
    if (rows == 0 || cols == 0) {
        throw std::invalid_argument("BinaryMatrix: dimensions must be >= 1");
    }
}

BinaryMatrix BinaryMatrix::identity(std::size_t n) {
    BinaryMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

void BinaryMatrix::row_xor(std::size_t dst, std::size_t src) {
    uint64_t* d = row_words(dst);
    const uint64_t* s = row_words(src);
    for (std::size_t w = 0; w < wpr_; ++w) d[w] ^= s[w];
}

void BinaryMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap_ranges(row_words(a), row_words(a) + wpr_, row_words(b));
}

void BinaryMatrix::swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < rows_; ++r) {
        const bool va = get(r, a);
        const bool vb = get(r, b);
        set(r, a, vb);
        set(r, b, va);
    }
}

std::vector<uint8_t> BinaryMatrix::row_bits(std::size_t r) const {
    std::vector<uint8_t> out(cols_);
    for (std::size_t c = 0; c < cols_; ++c) out[c] = get(r, c) ? 1 : 0;
    return out;
}

bool BinaryMatrix::operator==(const BinaryMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && words_ == o.words_;
}

ColumnPermutation::ColumnPermutation(std::vector<std::size_t> mapping) : map_(std::move(mapping)) {
    std::vector<uint8_t> seen(map_.size(), 0);
    for (std::size_t v : map_) {
        if (v >= map_.size() || seen[v]) {
            throw std::invalid_argument("ColumnPermutation: mapping is not a bijection");
        }
        seen[v] = 1;
    }
}

ColumnPermutation ColumnPermutation::identity(std::size_t n) {
    std::vector<std::size_t> m(n);
    std::iota(m.begin(), m.end(), std::size_t{0});
    return ColumnPermutation(std::move(m));
}

ColumnPermutation ColumnPermutation::inverse() const {
    std::vector<std::size_t> inv(map_.size());
    for (std::size_t j = 0; j < map_.size(); ++j) inv[map_[j]] = j;
    return ColumnPermutation(std::move(inv));
}

ColumnPermutation ColumnPermutation::compose_after(const ColumnPermutation& other) const {
    if (size() != other.size()) {
        throw std::invalid_argument("ColumnPermutation: size mismatch in composition");
    }
    std::vector<std::size_t> out(map_.size());
    for (std::size_t j = 0; j < map_.size(); ++j) out[j] = other.map_[map_[j]];
    return ColumnPermutation(std::move(out));
}

BinaryMatrix mat_mul(const BinaryMatrix& a, const BinaryMatrix& b) {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("mat_mul: inner dimensions differ");
    }
    BinaryMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        uint64_t* dst = out.row_words(i);
        for (std::size_t t = 0; t < a.cols(); ++t) {
            if (!a.get(i, t)) continue;
            const uint64_t* src = b.row_words(t);
            for (std::size_t w = 0; w < out.words_per_row(); ++w) dst[w] ^= src[w];
        }
    }
    return out;
}

std::vector<uint8_t> vec_mat_mul(const std::vector<uint8_t>& msg, const BinaryMatrix& g) {
    if (msg.size() != g.rows()) {
        throw std::invalid_argument("vec_mat_mul: vector length differs from row count");
    }
    std::vector<uint64_t> acc(g.words_per_row(), 0);
    for (std::size_t t = 0; t < msg.size(); ++t) {
        if (!msg[t]) continue;
        const uint64_t* src = g.row_words(t);
        for (std::size_t w = 0; w < acc.size(); ++w) acc[w] ^= src[w];
    }
    std::vector<uint8_t> out(g.cols());
    for (std::size_t c = 0; c < g.cols(); ++c) out[c] = (acc[c >> 6] >> (c & 63)) & 1u;
    return out;
}

SystematizeResult systematize(const BinaryMatrix& g) {
    const std::size_t m = g.rows();
    const std::size_t n = g.cols();
    if (m > n) {
        throw std::invalid_argument("systematize: more rows than columns");
    }
    BinaryMatrix a = g;
    ColumnPermutation perm = ColumnPermutation::identity(n);
    std::size_t rank = 0;
    for (std::size_t r = 0; r < m; ++r) {
        // find pivot in column r, rows r..m-1; else pull in the nearest later column
        std::size_t pc = r;
        std::size_t pr = m;
        for (; pc < n; ++pc) {
            pr = m;
            for (std::size_t i = r; i < m; ++i) {
                if (a.get(i, pc)) { pr = i; break; }
            }
            if (pr < m) break;
        }
        if (pc == n) break;  // remaining rows are zero
        if (pc != r) {
            a.swap_cols(r, pc);
            perm.swap(r, pc);
        }
        a.swap_rows(r, pr);
        for (std::size_t i = 0; i < m; ++i) {
            if (i != r && a.get(i, r)) a.row_xor(i, r);
        }
        ++rank;
    }
    return SystematizeResult{std::move(a), std::move(perm), rank};
}

BinaryMatrix apply_column_perm(const BinaryMatrix& g, const ColumnPermutation& perm) {
    if (perm.size() != g.cols()) {
        throw std::invalid_argument("apply_column_perm: permutation size differs from column count");
    }
    BinaryMatrix out(g.rows(), g.cols());
    for (std::size_t r = 0; r < g.rows(); ++r) {
        for (std::size_t j = 0; j < g.cols(); ++j) {
            if (g.get(r, perm(j))) out.set(r, j, true);
        }
    }
    return out;
}

std::size_t gf2_rank(BinaryMatrix m) {
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pr = rows;
        for (std::size_t i = rank; i < rows; ++i) {
            if (m.get(i, c)) { pr = i; break; }
        }
        if (pr == rows) continue;
        m.swap_rows(rank, pr);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i != rank && m.get(i, c)) m.row_xor(i, rank);
        }
        ++rank;
    }
    return rank;
}

}  // namespace fec
