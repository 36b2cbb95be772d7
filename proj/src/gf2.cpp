#include "ciscodes/gf2.hpp"

#include <bit>
#include <sstream>

namespace ciscodes {

BitVec BitVec::from_string(std::string_view s) {
    BitVec v(static_cast<int>(s.size()));
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '1')
            v.set(static_cast<int>(i));
        else if (s[i] != '0')
            throw ParseError("BitVec::from_string: invalid character");
    }
    return v;
}

BitVec BitVec::from_uint(uint64_t bits, int length) {
    BitVec v(length);
    if (length < 64 && (bits >> length) != 0)
        throw DimensionMismatch("BitVec::from_uint: bits beyond length");
    if (length > 0) v.w_[0] = bits;
    return v;
}

int BitVec::weight() const {
    int w = 0;
    for (uint64_t x : w_) w += std::popcount(x);
    return w;
}

bool BitVec::is_zero() const {
    for (uint64_t x : w_)
        if (x) return false;
    return true;
}

BitVec& BitVec::operator^=(const BitVec& o) {
    if (len_ != o.len_) throw DimensionMismatch("BitVec::operator^=: length mismatch");
    for (size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
    return *this;
}

bool BitVec::dot(const BitVec& o) const {
    if (len_ != o.len_) throw DimensionMismatch("BitVec::dot: length mismatch");
    uint64_t acc = 0;
    for (size_t i = 0; i < w_.size(); ++i) acc ^= w_[i] & o.w_[i];
    return std::popcount(acc) & 1;
}

bool BitVec::lex_less(const BitVec& o) const {
    int n = std::min(len_, o.len_);
    for (int i = 0; i < n; ++i) {
        bool a = get(i), b = o.get(i);
        if (a != b) return b;  // '0' < '1'
    }
    return len_ < o.len_;
}

uint64_t BitVec::to_uint64() const {
    if (len_ > 64) throw DimensionTooLarge("BitVec::to_uint64: length > 64");
    return w_.empty() ? 0 : w_[0];
}

std::string BitVec::to_string() const {
    std::string s(len_, '0');
    for (int i = 0; i < len_; ++i)
        if (get(i)) s[i] = '1';
    return s;
}

Gf2Matrix::Gf2Matrix(std::vector<BitVec> rows) : rows_(std::move(rows)) {
    if (!rows_.empty()) {
        ncols_ = rows_[0].length();
        for (const BitVec& r : rows_)
            if (r.length() != ncols_)
                throw DimensionMismatch("Gf2Matrix: rows of unequal length");
    }
}

Gf2Matrix Gf2Matrix::identity(int n) {
    Gf2Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.set(i, i);
    return m;
}

Gf2Matrix Gf2Matrix::parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    int r = 0, c = 0;
    if (!(in >> r >> c) || r <= 0 || c <= 0)
        throw ParseError("Gf2Matrix::parse: bad header");
    std::string line;
    std::getline(in, line);
    Gf2Matrix m(r, c);
    for (int i = 0; i < r; ++i) {
        if (!std::getline(in, line)) throw ParseError("Gf2Matrix::parse: missing row");
        if (static_cast<int>(line.size()) != c)
            throw ParseError("Gf2Matrix::parse: row length mismatch");
        m.rows_[i] = BitVec::from_string(line);
    }
    return m;
}

std::string Gf2Matrix::to_text() const {
    std::ostringstream out;
    out << nrows() << ' ' << ncols_ << '\n';
    for (const BitVec& r : rows_) out << r.to_string() << '\n';
    return out.str();
}

int rank(const Gf2Matrix& m) {
    std::vector<BitVec> rows = m.rows();
    int rk = 0;
    int nr = static_cast<int>(rows.size());
    for (int c = 0; c < m.ncols() && rk < nr; ++c) {
        int pivot = -1;
        for (int r = rk; r < nr; ++r)
            if (rows[r].get(c)) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(rows[rk], rows[pivot]);
        for (int r = rk + 1; r < nr; ++r)
            if (rows[r].get(c)) rows[r] ^= rows[rk];
        ++rk;
    }
    return rk;
}

Gf2Matrix invert(const Gf2Matrix& m) {
    int n = m.nrows();
    if (n != m.ncols()) throw DimensionMismatch("invert: matrix not square");
    std::vector<BitVec> a = m.rows();
    std::vector<BitVec> inv = Gf2Matrix::identity(n).rows();
    for (int c = 0; c < n; ++c) {
        int pivot = -1;
        for (int r = c; r < n; ++r)
            if (a[r].get(c)) {
                pivot = r;
                break;
            }
        if (pivot < 0) throw SingularMatrix("invert: singular matrix");
        std::swap(a[c], a[pivot]);
        std::swap(inv[c], inv[pivot]);
        for (int r = 0; r < n; ++r)
            if (r != c && a[r].get(c)) {
                a[r] ^= a[c];
                inv[r] ^= inv[c];
            }
    }
    return Gf2Matrix(std::move(inv));
}

Gf2Matrix mat_mul(const Gf2Matrix& l, const Gf2Matrix& r) {
    if (l.ncols() != r.nrows()) throw DimensionMismatch("mat_mul: inner dimensions differ");
    Gf2Matrix out(l.nrows(), r.ncols());
    for (int i = 0; i < l.nrows(); ++i) {
        BitVec acc(r.ncols());
        for (int j = 0; j < l.ncols(); ++j)
            if (l.get(i, j)) acc ^= r.row(j);
        out.row(i) = std::move(acc);
    }
    return out;
}

BitVec vec_mat_mul(const BitVec& x, const Gf2Matrix& m) {
    if (x.length() != m.nrows()) throw DimensionMismatch("vec_mat_mul: dimension mismatch");
    BitVec acc(m.ncols());
    for (int i = 0; i < m.nrows(); ++i)
        if (x.get(i)) acc ^= m.row(i);
    return acc;
}

std::optional<Gf2Matrix> systematic_form(const Gf2Matrix& g) {
    int k = g.nrows();
    if (g.ncols() < k) throw DimensionMismatch("systematic_form: ncols < nrows");
    std::vector<BitVec> rows = g.rows();
    for (int c = 0; c < k; ++c) {
        int pivot = -1;
        for (int r = c; r < k; ++r)
            if (rows[r].get(c)) {
                pivot = r;
                break;
            }
        if (pivot < 0) return std::nullopt;
        std::swap(rows[c], rows[pivot]);
        for (int r = 0; r < k; ++r)
            if (r != c && rows[r].get(c)) rows[r] ^= rows[c];
    }
    return Gf2Matrix(std::move(rows));
}

Gf2Matrix rref_basis(const Gf2Matrix& m) {
    std::vector<BitVec> rows = m.rows();
    int nr = static_cast<int>(rows.size());
    int rk = 0;
    for (int c = 0; c < m.ncols() && rk < nr; ++c) {
        int pivot = -1;
        for (int r = rk; r < nr; ++r)
            if (rows[r].get(c)) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(rows[rk], rows[pivot]);
        for (int r = 0; r < nr; ++r)
            if (r != rk && rows[r].get(c)) rows[r] ^= rows[rk];
        ++rk;
    }
    rows.resize(rk, BitVec(m.ncols()));
    return Gf2Matrix(std::move(rows));
}

}  // namespace ciscodes
