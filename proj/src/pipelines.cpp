#include "ciscodes/pipelines.hpp"

#include <algorithm>
#include <atomic>
#include <bit>

namespace ciscodes {

namespace {

constexpr int kMaxChainLength = 24;

Gf2Matrix bordered(const Gf2Matrix& a_prev, const Gf2Matrix& a_inv, const BitVec& x,
                   const BitVec& y) {
    int m = a_prev.nrows();
    BitVec c = vec_mat_mul(x, a_inv);
    bool z = !c.dot(y);  // 1 + c . y^T
    Gf2Matrix a(m + 1, m + 1);
    a.set(0, 0, z);
    for (int j = 0; j < m; ++j) a.set(0, j + 1, x.get(j));
    for (int i = 0; i < m; ++i) {
        a.set(i + 1, 0, y.get(i));
        for (int j = 0; j < m; ++j) a.set(i + 1, j + 1, a_prev.get(i, j));
    }
    return a;
}

// Codes in a store as uint64-encoded codeword lists (bit i = coordinate i),
// zero-padded to `length` coordinates.
struct CachedCode {
    std::vector<uint64_t> gen_rows;
    std::vector<uint64_t> codewords;  // all 2^k words
    int d = 0;
};

CachedCode cache_code(const ClassRecord& rec, int length) {
    CachedCode cc;
    cc.d = rec.d;
    for (int r = 0; r < rec.object.nrows(); ++r) cc.gen_rows.push_back(rec.object.row(r).to_uint64());
    int k = rec.object.nrows();
    cc.codewords.resize(size_t(1) << k, 0);
    for (uint64_t m = 1; m < cc.codewords.size(); ++m)
        cc.codewords[m] = cc.codewords[m & (m - 1)] ^ cc.gen_rows[std::countr_zero(m)];
    (void)length;
    return cc;
}

// Lexicographically smallest representative of every nonzero coset of the
// code (as a subspace of F2^length), ascending.
std::vector<uint32_t> coset_representatives(const CachedCode& cc, int length) {
    std::vector<bool> seen(size_t(1) << length, false);
    std::vector<uint32_t> reps;
    reps.reserve((size_t(1) << length) / cc.codewords.size() - 1);
    for (uint64_t v = 0; v < seen.size(); ++v) {
        if (seen[v]) continue;
        if (v != 0) reps.push_back(static_cast<uint32_t>(v));
        for (uint64_t cw : cc.codewords) seen[v ^ cw] = true;
    }
    return reps;
}

LinearCode code_from_words(const std::vector<uint64_t>& gen_rows, uint64_t extra, int length) {
    std::vector<BitVec> rows;
    rows.reserve(gen_rows.size() + 1);
    for (uint64_t r : gen_rows) rows.push_back(BitVec::from_uint(r, length));
    rows.push_back(BitVec::from_uint(extra, length));
    return LinearCode(Gf2Matrix(std::move(rows)));
}

// Shared core of chain_stage / extend_dimension; append_zero distinguishes
// the subcode-chain step from the fixed-length dimension step.
CanonStore grow_dimension(const CanonStore& base, int d_min, bool even_only, bool append_zero,
                          const GenerateOptions& opt) {
    std::vector<const ClassRecord*> recs = base.records();
    if (recs.empty()) return {};
    int n0 = recs[0]->n, k0 = recs[0]->k;
    for (const ClassRecord* r : recs)
        if (r->n != n0 || r->k != k0)
            throw PreconditionFailed("grow_dimension: base codes of mixed parameters");
    int length = append_zero ? n0 + 1 : n0;
    if (length > kMaxChainLength) throw DimensionTooLarge("grow_dimension: length too large");

    uint64_t reps_per_code = (uint64_t(1) << (length - k0)) - 1;
    uint64_t total = recs.size() * reps_per_code;

    // distinguishes successive grow_dimension calls (a later base store can
    // reuse a freed store's address, so the pointer alone is not a safe key)
    static std::atomic<uint64_t> generation_counter{0};
    uint64_t generation = ++generation_counter;

    auto make = [&, recs, length, k0, d_min, even_only,
                 generation](uint64_t i) -> std::optional<ClassRecord> {
        size_t code_idx = static_cast<size_t>(i / reps_per_code);
        size_t rep_idx = static_cast<size_t>(i % reps_per_code);
        // Per-thread cache: candidate indices arrive in ascending order, so
        // each thread prepares a code's coset data once.
        struct Cache {
            uint64_t generation = 0;
            size_t code_idx = SIZE_MAX;
            CachedCode cc;
            std::vector<uint32_t> reps;
        };
        thread_local Cache cache;
        if (cache.generation != generation || cache.code_idx != code_idx) {
            cache.generation = generation;
            cache.code_idx = code_idx;
            cache.cc = cache_code(*recs[code_idx], length);
            cache.reps = coset_representatives(cache.cc, length);
        }
        uint64_t x = cache.reps[rep_idx];
        if (even_only && (std::popcount(x) & 1)) return std::nullopt;
        int mw = std::min<int>(cache.cc.d, length);
        for (uint64_t cw : cache.cc.codewords) {
            int w = std::popcount(cw ^ x);
            if (w < mw) mw = w;
        }
        if (mw < d_min) return std::nullopt;
        LinearCode code = code_from_words(cache.cc.gen_rows, x, length);
        return code_record_from_key(code_key(code));
    };
    return generate_indexed(total, make, opt);
}

}  // namespace

Gf2Matrix gl_extend(const BorderingInputs& inp) {
    int m = inp.a_prev.nrows();
    if (inp.x.length() != m || inp.y.length() != m)
        throw DimensionMismatch("gl_extend: border vectors of wrong length");
    Gf2Matrix a = bordered(inp.a_prev, invert(inp.a_prev), inp.x, inp.y);
    if (rank(a) != m + 1) throw SingularMatrix("gl_extend: bordering lemma violated");
    return a;
}

CanonStore classify_gl(int n, const CanonStore* prev, const GenerateOptions& opt) {
    if (n < 1) throw PreconditionFailed("classify_gl: n < 1");
    if (n == 1) {
        CanonStore store;
        store.insert_if_new(matrix_record_from_key(matrix_key(Gf2Matrix::identity(1))));
        return store;
    }
    if (prev == nullptr) throw PreconditionFailed("classify_gl: missing GL(n-1) store");
    std::vector<Gf2Matrix> reps, invs;
    for (const auto& [_, rec] : *prev) {
        if (rec.object.nrows() != n - 1 || rec.object.ncols() != n - 1)
            throw PreconditionFailed("classify_gl: previous store is not GL(n-1)");
        reps.push_back(rec.object);
        invs.push_back(invert(rec.object));
    }
    uint64_t ext = uint64_t(1) << (n - 1);
    uint64_t per_rep = ext * ext;
    uint64_t total = reps.size() * per_rep;
    auto make = [&, n](uint64_t i) -> std::optional<ClassRecord> {
        size_t r = static_cast<size_t>(i / per_rep);
        uint64_t rem = i % per_rep;
        BitVec x = BitVec::from_uint(rem / ext, n - 1);
        BitVec y = BitVec::from_uint(rem % ext, n - 1);
        Gf2Matrix a = bordered(reps[r], invs[r], x, y);
        return matrix_record_from_key(matrix_key(a));
    };
    return generate_indexed(total, make, opt);
}

CanonStore classify_cis_from_gl(const CanonStore& gl, const GenerateOptions& opt) {
    std::vector<const ClassRecord*> recs = gl.records();
    auto make = [&recs](uint64_t i) -> std::optional<ClassRecord> {
        const Gf2Matrix& a = recs[i]->object;
        int n = a.nrows();
        Gf2Matrix gen(n, 2 * n);
        for (int r = 0; r < n; ++r) {
            gen.set(r, r);
            for (int c = 0; c < n; ++c)
                if (a.get(r, c)) gen.set(r, n + c);
        }
        ClassRecord rec = code_record_from_key(code_key(LinearCode(gen)));
        rec.flags |= record_flags::kCis;  // [I|A] with A invertible
        return rec;
    };
    return generate_indexed(recs.size(), make, opt);
}

CanonStore chain_stage(const CanonStore& base, int d_min, bool even_only,
                       const GenerateOptions& opt) {
    return grow_dimension(base, d_min, even_only, /*append_zero=*/true, opt);
}

CanonStore extend_dimension(const CanonStore& base, int d_min, const GenerateOptions& opt) {
    return grow_dimension(base, d_min, /*even_only=*/false, /*append_zero=*/false, opt);
}

CanonStore chain_classify(const ChainParams& p, const GenerateOptions& opt) {
    if (p.target_k < 1 || p.target_n < p.target_k)
        throw PreconditionFailed("chain_classify: bad target parameters");
    int n0 = p.target_n - p.target_k + 1;
    if (n0 > kMaxChainLength) throw DimensionTooLarge("chain_classify: length too large");
    CanonStore store;
    for (int w = std::max(1, p.d_min); w <= n0; ++w) {
        if (p.even_only && (w & 1)) continue;
        BitVec gen(n0);
        for (int i = 0; i < w; ++i) gen.set(i);
        LinearCode code{Gf2Matrix(std::vector<BitVec>{gen})};
        store.insert_if_new(code_record_from_key(code_key(code)));
    }
    GenerateOptions inner = opt;
    inner.shards = 1;
    inner.shard_index = 0;
    for (int k = 1; k < p.target_k; ++k) {
        // Sharding applies to the final stage only; earlier stages are
        // deterministic and recomputed identically by every shard.
        const GenerateOptions& stage_opt = (k == p.target_k - 1) ? opt : inner;
        store = chain_stage(store, p.d_min, p.even_only, stage_opt);
    }
    return store;
}

CanonStore build_weight2_cis(const CanonStore& prev, const GenerateOptions& opt) {
    std::vector<const ClassRecord*> recs = prev.records();
    if (recs.empty()) return {};
    int m = recs[0]->k;  // n - 1
    if (recs[0]->n != 2 * m) throw NotRateOneHalf("build_weight2_cis: base is not rate one-half");

    // Systematic CIS form [I | A] for every base code, via its witness.
    std::vector<Gf2Matrix> sys;
    sys.reserve(recs.size());
    for (const ClassRecord* rec : recs) {
        LinearCode code(rec->object);
        CisResult res = is_cis(code);
        if (!res.cis) throw PreconditionFailed("build_weight2_cis: base code is not CIS");
        std::vector<bool> chosen(2 * m, false);
        for (int col : res.witness->columns) chosen[col - 1] = true;
        std::vector<int> order;
        for (int c = 0; c < 2 * m; ++c)
            if (chosen[c]) order.push_back(c);
        for (int c = 0; c < 2 * m; ++c)
            if (!chosen[c]) order.push_back(c);
        Gf2Matrix permuted(m, 2 * m);
        for (int r = 0; r < m; ++r)
            for (int c = 0; c < 2 * m; ++c)
                if (rec->object.get(r, order[c])) permuted.set(r, c);
        auto form = systematic_form(permuted);
        if (!form) throw PreconditionFailed("build_weight2_cis: witness replay failed");
        sys.push_back(std::move(*form));
    }

    uint64_t per_code = uint64_t(1) << m;
    uint64_t total = recs.size() * per_code;
    int n = m + 1;
    auto make = [&sys, m, n, per_code](uint64_t i) -> std::optional<ClassRecord> {
        const Gf2Matrix& ia = sys[i / per_code];
        uint64_t ybits = i % per_code;
        Gf2Matrix gen(n, 2 * n);
        gen.set(0, 0);
        gen.set(0, n);
        for (int r = 0; r < m; ++r) {
            gen.set(r + 1, 1 + r);                      // identity block
            gen.set(r + 1, n, (ybits >> r) & 1);        // y column
            for (int c = 0; c < m; ++c)                 // A block
                if (ia.get(r, m + c)) gen.set(r + 1, n + 1 + c);
        }
        ClassRecord rec = code_record_from_key(code_key(LinearCode(gen)));
        rec.flags |= record_flags::kCis;  // both halves triangular by construction
        return rec;
    };
    return generate_indexed(total, make, opt);
}

SurveyReport optimal_cis_survey(const CanonStore& store) {
    SurveyReport report;
    for (const auto& [_, rec] : store) {
        LinearCode code(rec.object);
        if (is_cis(code).cis) {
            ++report.cis;
        } else {
            ++report.non_cis;
            ++report.non_cis_by_dual_distance[rec.dual_d];
        }
    }
    return report;
}

std::vector<ReportRow> classification_report(const CanonStore& store) {
    std::map<int, ReportRow> rows;
    for (const auto& [_, rec] : store) {
        ReportRow& row = rows[rec.d];
        row.d = rec.d;
        ++row.total;
        bool sd = rec.flags & record_flags::kSelfDual;
        bool fsd = rec.flags & record_flags::kFormallySelfDual;
        if (sd)
            ++row.self_dual;
        else if (fsd)
            ++row.only_fsd;
        else
            ++row.neither;
        if (rec.dual_d != 1) ++row.dual_d_ne1;
    }
    std::vector<ReportRow> out;
    for (auto& [_, row] : rows) out.push_back(row);
    return out;
}

}  // namespace ciscodes
