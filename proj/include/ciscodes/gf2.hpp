#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ciscodes/errors.hpp"

namespace ciscodes {

/// Fixed-length bit-packed vector over GF(2).  Bits beyond length() are kept
/// zero so equality and hashing can work directly on the words.
class BitVec {
  public:
    BitVec() = default;
    explicit BitVec(int length) : len_(length), w_((length + 63) / 64, 0) {}

    /// Parse from a string of '0'/'1', coordinate i = s[i].
    static BitVec from_string(std::string_view s);
    /// Low-order interpretation: coordinate i = bit i of `bits` (length <= 64).
    static BitVec from_uint(uint64_t bits, int length);

    int length() const { return len_; }

    bool get(int i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(int i, bool v = true) {
        if (v)
            w_[i >> 6] |= uint64_t(1) << (i & 63);
        else
            w_[i >> 6] &= ~(uint64_t(1) << (i & 63));
    }

    int weight() const;
    bool is_zero() const;

    BitVec& operator^=(const BitVec& o);
    friend BitVec operator^(BitVec a, const BitVec& b) {
        a ^= b;
        return a;
    }
    bool operator==(const BitVec&) const = default;

    /// GF(2) inner product.
    bool dot(const BitVec& o) const;

    /// Lexicographic order on the coordinate string (coordinate 0 most
    /// significant).  Used only to fix deterministic orderings.
    bool lex_less(const BitVec& o) const;

    uint64_t to_uint64() const;
    std::string to_string() const;

    const std::vector<uint64_t>& words() const { return w_; }

  private:
    int len_ = 0;
    std::vector<uint64_t> w_;
};

/// Row-major GF(2) matrix; every row is a BitVec of length ncols.
class Gf2Matrix {
  public:
    Gf2Matrix() = default;
    Gf2Matrix(int nrows, int ncols) : ncols_(ncols), rows_(nrows, BitVec(ncols)) {}
    explicit Gf2Matrix(std::vector<BitVec> rows);

    static Gf2Matrix identity(int n);
    /// Parse the matrix text format: "<nrows> <ncols>\n" then nrows lines of
    /// exactly ncols characters from {0,1}.
    static Gf2Matrix parse(std::string_view text);
    std::string to_text() const;

    int nrows() const { return static_cast<int>(rows_.size()); }
    int ncols() const { return ncols_; }

    BitVec& row(int i) { return rows_[i]; }
    const BitVec& row(int i) const { return rows_[i]; }
    const std::vector<BitVec>& rows() const { return rows_; }

    bool get(int r, int c) const { return rows_[r].get(c); }
    void set(int r, int c, bool v = true) { rows_[r].set(c, v); }

    bool operator==(const Gf2Matrix&) const = default;

  private:
    int ncols_ = 0;
    std::vector<BitVec> rows_;
};

/// GF(2) row rank by Gaussian elimination (first-nonzero pivoting).
int rank(const Gf2Matrix& m);

/// Inverse of a square full-rank matrix; throws SingularMatrix otherwise.
Gf2Matrix invert(const Gf2Matrix& m);

/// Standard GF(2) matrix product; throws DimensionMismatch.
Gf2Matrix mat_mul(const Gf2Matrix& l, const Gf2Matrix& r);

/// Row vector times matrix.
BitVec vec_mat_mul(const BitVec& x, const Gf2Matrix& m);

/// Row-reduce so the first nrows columns form the identity, using row
/// operations only.  Absent when those columns are not an information set.
std::optional<Gf2Matrix> systematic_form(const Gf2Matrix& g);

/// Reduced row echelon form with zero rows dropped.  Deterministic basis of
/// the row space.
Gf2Matrix rref_basis(const Gf2Matrix& m);

}  // namespace ciscodes
