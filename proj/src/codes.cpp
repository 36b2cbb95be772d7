#include "ciscodes/codes.hpp"

#include <algorithm>
#include <bit>

namespace ciscodes {

namespace {

constexpr int kEnumerationBound = 28;

// Column j of the generator as a k-bit word (bit r = entry in row r).
std::vector<uint64_t> column_words(const Gf2Matrix& g) {
    std::vector<uint64_t> cols(g.ncols(), 0);
    for (int r = 0; r < g.nrows(); ++r)
        for (int c = 0; c < g.ncols(); ++c)
            if (g.get(r, c)) cols[c] |= uint64_t(1) << r;
    return cols;
}

// Rank of a set of k-bit column words by incremental elimination.
int rank_of(const std::vector<uint64_t>& cols, const std::vector<int>& idx) {
    uint64_t basis[64];
    int rk = 0;
    for (int i : idx) {
        uint64_t v = cols[i];
        for (int b = 0; b < rk; ++b) {
            uint64_t lead = basis[b] & -basis[b];
            if (v & lead) v ^= basis[b];
        }
        if (v) basis[rk++] = v;
    }
    return rk;
}

}  // namespace

LinearCode::LinearCode(Gf2Matrix gen) : gen_(std::move(gen)) {
    n_ = gen_.ncols();
    k_ = gen_.nrows();
    if (k_ <= 0 || n_ <= 0 || k_ > n_)
        throw DimensionMismatch("LinearCode: need 0 < k <= n");
    if (rank(gen_) != k_) throw RankDeficient("LinearCode: generator rows are dependent");
}

void LinearCode::for_each_codeword(const std::function<void(const BitVec&)>& fn) const {
    if (k_ > kEnumerationBound)
        throw DimensionTooLarge("for_each_codeword: k exceeds enumeration bound");
    BitVec cur(n_);
    fn(cur);
    uint64_t total = uint64_t(1) << k_;
    for (uint64_t m = 1; m < total; ++m) {
        cur ^= gen_.row(std::countr_zero(m));
        fn(cur);
    }
}

WeightDistribution weight_distribution(const LinearCode& c) {
    WeightDistribution wd;
    wd.counts.assign(c.n() + 1, 0);
    c.for_each_codeword([&](const BitVec& v) { ++wd.counts[v.weight()]; });
    return wd;
}

int minimum_weight(const LinearCode& c) {
    WeightDistribution wd = weight_distribution(c);
    for (int w = 1; w <= c.n(); ++w)
        if (wd.counts[w]) return w;
    return 0;  // unreachable for k >= 1
}

LinearCode dual_code(const LinearCode& c) {
    int n = c.n(), k = c.k();
    if (k >= n) throw PreconditionFailed("dual_code: dual of the full space is trivial");
    Gf2Matrix r = rref_basis(c.gen());
    // Pivot columns of the RREF.
    std::vector<int> pivot(n, -1);
    std::vector<bool> is_pivot(n, false);
    for (int i = 0, col = 0; i < k; ++i) {
        while (!r.get(i, col)) ++col;
        pivot[col] = i;
        is_pivot[col] = true;
    }
    std::vector<BitVec> basis;
    basis.reserve(n - k);
    for (int f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        BitVec v(n);
        v.set(f);
        for (int col = 0; col < n; ++col)
            if (is_pivot[col] && r.get(pivot[col], f)) v.set(col);
        basis.push_back(std::move(v));
    }
    return LinearCode(Gf2Matrix(std::move(basis)));
}

int dual_distance(const LinearCode& c) {
    if (c.k() == c.n()) return 0;
    return minimum_weight(dual_code(c));
}

bool is_self_dual(const LinearCode& c) {
    if (c.n() != 2 * c.k()) throw NotRateOneHalf("is_self_dual: n != 2k");
    // C self-orthogonal with dim n/2 implies C == dual(C).
    for (int i = 0; i < c.k(); ++i)
        for (int j = i; j < c.k(); ++j)
            if (c.gen().row(i).dot(c.gen().row(j))) return false;
    return true;
}

bool is_formally_self_dual(const LinearCode& c) {
    if (c.k() * 2 != c.n()) return false;
    return weight_distribution(c) == weight_distribution(dual_code(c));
}

LinearCode shorten_first(const LinearCode& c) {
    if (c.k() <= 1) throw PreconditionFailed("shorten_first: k-1 == 0");
    std::vector<BitVec> rows = c.gen().rows();
    int with_one = -1;
    for (int r = 0; r < c.k(); ++r)
        if (rows[r].get(0)) {
            with_one = r;
            break;
        }
    if (with_one < 0)
        throw PreconditionFailed("shorten_first: column 1 is identically zero");
    for (int r = 0; r < c.k(); ++r)
        if (r != with_one && rows[r].get(0)) rows[r] ^= rows[with_one];
    rows.erase(rows.begin() + with_one);
    return LinearCode(Gf2Matrix(std::move(rows)));
}

CisResult is_cis(const LinearCode& c) {
    int k = c.k(), n = c.n();
    if (n != 2 * k) throw NotRateOneHalf("is_cis: n != 2k");
    std::vector<uint64_t> cols = column_words(c.gen());

    std::vector<int> picked(k, 0);     // picked[0] fixed at column 0
    std::vector<int> comp;
    comp.reserve(k);
    std::vector<bool> in_set(n, false);

    auto check = [&](const std::vector<int>& sel) -> bool {
        if (rank_of(cols, sel) != k) return false;
        std::fill(in_set.begin(), in_set.end(), false);
        for (int i : sel) in_set[i] = true;
        comp.clear();
        for (int i = 0; i < n; ++i)
            if (!in_set[i]) comp.push_back(i);
        return rank_of(cols, comp) == k;
    };

    if (k == 1) {
        std::vector<int> sel{0};
        if (check(sel)) return {true, InfoSetCertificate{{1}}};
        return {false, std::nullopt};
    }

    // (k-1)-subsets of {1..2k-1} (0-based) in lexicographic order.
    std::vector<int> comb(k - 1);
    for (int i = 0; i < k - 1; ++i) comb[i] = i + 1;
    for (;;) {
        picked[0] = 0;
        std::copy(comb.begin(), comb.end(), picked.begin() + 1);
        if (check(picked)) {
            InfoSetCertificate cert;
            cert.columns.reserve(k);
            for (int i : picked) cert.columns.push_back(i + 1);
            return {true, std::move(cert)};
        }
        // next combination
        int i = k - 2;
        while (i >= 0 && comb[i] == n - 1 - (k - 2 - i)) --i;
        if (i < 0) break;
        ++comb[i];
        for (int j = i + 1; j < k - 1; ++j) comb[j] = comb[j - 1] + 1;
    }
    return {false, std::nullopt};
}

bool is_cis_bruteforce(const LinearCode& c) {
    int k = c.k(), n = c.n();
    if (n != 2 * k) throw NotRateOneHalf("is_cis_bruteforce: n != 2k");
    if (k > 8) throw DimensionTooLarge("is_cis_bruteforce: k > 8");
    std::vector<uint64_t> cols = column_words(c.gen());
    std::vector<int> sel, comp;
    for (uint32_t mask = 0; mask < (uint32_t(1) << n); ++mask) {
        if (std::popcount(mask) != k) continue;
        sel.clear();
        comp.clear();
        for (int i = 0; i < n; ++i)
            ((mask >> i) & 1 ? sel : comp).push_back(i);
        if (rank_of(cols, sel) == k && rank_of(cols, comp) == k) return true;
    }
    return false;
}

}  // namespace ciscodes
