#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace fec {

/// Dense matrix over GF(2), bit-packed 64 entries per word, row-major.
class BinaryMatrix {
public:
    BinaryMatrix(std::size_t rows, std::size_t cols);

    static BinaryMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t words_per_row() const { return wpr_; }

    bool get(std::size_t r, std::size_t c) const {
        return (words_[r * wpr_ + (c >> 6)] >> (c & 63)) & 1u;
    }
    void set(std::size_t r, std::size_t c, bool v) {
        uint64_t& w = words_[r * wpr_ + (c >> 6)];
        const uint64_t mask = uint64_t{1} << (c & 63);
        w = v ? (w | mask) : (w & ~mask);
    }
    void flip(std::size_t r, std::size_t c) {
        words_[r * wpr_ + (c >> 6)] ^= uint64_t{1} << (c & 63);
    }

    const uint64_t* row_words(std::size_t r) const { return words_.data() + r * wpr_; }
    uint64_t* row_words(std::size_t r) { return words_.data() + r * wpr_; }

    /// dst ^= src, both rows of this matrix.
    void row_xor(std::size_t dst, std::size_t src);
    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);

    /// Row r as an unpacked bit vector.
    std::vector<uint8_t> row_bits(std::size_t r) const;

    bool operator==(const BinaryMatrix& o) const;

private:
    std::size_t rows_, cols_, wpr_;
    std::vector<uint64_t> words_;
};

/// Bijection on column indices; applying a permutation places input column
/// mapping[j] at output position j.
class ColumnPermutation {
public:
    explicit ColumnPermutation(std::vector<std::size_t> mapping);
    static ColumnPermutation identity(std::size_t n);

    std::size_t size() const { return map_.size(); }
    std::size_t operator()(std::size_t j) const { return map_[j]; }

    void swap(std::size_t a, std::size_t b) { std::swap(map_[a], map_[b]); }

    ColumnPermutation inverse() const;
    /// this after other: result(j) = other(this(j)).
    ColumnPermutation compose_after(const ColumnPermutation& other) const;

    const std::vector<std::size_t>& mapping() const { return map_; }

private:
    std::vector<std::size_t> map_;
};

BinaryMatrix mat_mul(const BinaryMatrix& a, const BinaryMatrix& b);

/// Row vector (1xn) times matrix (nxc); msg is unpacked bits.
std::vector<uint8_t> vec_mat_mul(const std::vector<uint8_t>& msg, const BinaryMatrix& g);

struct SystematizeResult {
    BinaryMatrix gsys;
    ColumnPermutation perm;   // records column swaps made during elimination
    std::size_t rank;
};

/// Gauss-Jordan elimination to [I | rest]. Pivot: first nonzero row in the
/// current column; if the column has no usable pivot, swap in the nearest
/// subsequent column that does (lowest index), recording the swap.
SystematizeResult systematize(const BinaryMatrix& g);

BinaryMatrix apply_column_perm(const BinaryMatrix& g, const ColumnPermutation& perm);

std::size_t gf2_rank(BinaryMatrix m);

}  // namespace fec
