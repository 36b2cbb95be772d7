#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "ciscodes/gf2.hpp"

namespace ciscodes {

/// Counts A_0..A_n of codewords per Hamming weight.
struct WeightDistribution {
    std::vector<uint64_t> counts;
    bool operator==(const WeightDistribution&) const = default;
};

/// A witness information set: k column indices, 1-based, sorted.
struct InfoSetCertificate {
    std::vector<int> columns;
};

/// A binary linear [n,k] code held as a full-rank generator matrix.
class LinearCode {
  public:
    explicit LinearCode(Gf2Matrix gen);

    int n() const { return n_; }
    int k() const { return k_; }
    const Gf2Matrix& gen() const { return gen_; }

    /// Visit every codeword exactly once (Gray-code order, zero word first).
    void for_each_codeword(const std::function<void(const BitVec&)>& fn) const;

  private:
    Gf2Matrix gen_;
    int n_ = 0, k_ = 0;
};

WeightDistribution weight_distribution(const LinearCode& c);
int minimum_weight(const LinearCode& c);

/// The [n, n-k] dual code; requires k < n.
LinearCode dual_code(const LinearCode& c);

/// Minimum weight of the dual; 0 for the degenerate full-space code.
int dual_distance(const LinearCode& c);

bool is_self_dual(const LinearCode& c);
bool is_formally_self_dual(const LinearCode& c);

/// Codewords of C that are zero in column 1, as an [n, k-1] code with the
/// column retained.
LinearCode shorten_first(const LinearCode& c);

struct CisResult {
    bool cis = false;
    std::optional<InfoSetCertificate> witness;
};

/// CIS determination: searches the C(2k-1, k-1) candidate information sets
/// containing column 1 and checks the complement alongside.
CisResult is_cis(const LinearCode& c);

/// Ground-truth oracle over every one of the C(2k, k) column splits (k <= 8).
bool is_cis_bruteforce(const LinearCode& c);

}  // namespace ciscodes
