#pragma once

#include <map>

#include "ciscodes/store.hpp"

namespace ciscodes {

/// Bordering data for growing GL(n-1) representatives to GL(n).
struct BorderingInputs {
    Gf2Matrix a_prev;  // invertible (n-1) x (n-1)
    BitVec x, y;       // length n-1
};

/// The bordered matrix [[z, x], [y^T, A']] with z = 1 + x A'^{-1} y^T;
/// invertible for every (x, y) (asserted).
Gf2Matrix gl_extend(const BorderingInputs& inp);

/// Equivalence classes of GL(n, F2) under row/column permutations, grown from
/// the classified GL(n-1) store (ignored for n == 1).
CanonStore classify_gl(int n, const CanonStore* prev, const GenerateOptions& opt = {});

/// The CIS code classes [I | A] over all GL(n) representatives A.
CanonStore classify_cis_from_gl(const CanonStore& gl, const GenerateOptions& opt = {});

struct ChainParams {
    int target_n = 0;
    int target_k = 0;
    int d_min = 1;
    bool even_only = false;
};

/// Subcode-chain classification: [n-k+1, 1, >= d_min] seeds, then k-1 stages
/// of zero-column append plus coset-vector adjoin, deduped by code key.
CanonStore chain_classify(const ChainParams& p, const GenerateOptions& opt = {});

/// One chain stage: every [n', k'] base code gets a zero column appended last
/// and every nonzero coset representative adjoined.
CanonStore chain_stage(const CanonStore& base, int d_min, bool even_only,
                       const GenerateOptions& opt = {});

/// Grow dimension at fixed length: C + <x> over nonzero coset representatives
/// x of C in F2^n, kept when the minimum weight stays >= d_min.
CanonStore extend_dimension(const CanonStore& base, int d_min, const GenerateOptions& opt = {});

/// All [2n, n, 2] CIS code classes from the complete CIS classification at
/// length 2n-2, via the weight-2 block construction.
CanonStore build_weight2_cis(const CanonStore& prev, const GenerateOptions& opt = {});

struct SurveyReport {
    uint64_t cis = 0;
    uint64_t non_cis = 0;
    std::map<int, uint64_t> non_cis_by_dual_distance;
};

/// Run the CIS determination on every code in the store.
SurveyReport optimal_cis_survey(const CanonStore& store);

struct ReportRow {
    int d = 0;
    uint64_t total = 0, self_dual = 0, only_fsd = 0, neither = 0, dual_d_ne1 = 0;
};

/// Per-minimum-weight breakdown: total, self-dual, FSD-but-not-SD, neither,
/// and the count with dual distance != 1.
std::vector<ReportRow> classification_report(const CanonStore& store);

}  // namespace ciscodes
