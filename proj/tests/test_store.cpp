#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <random>

#include "ciscodes/pipelines.hpp"
#include "ciscodes/store.hpp"
#include "oracles.hpp"

using namespace ciscodes;

namespace {

ClassRecord matrix_record(const Gf2Matrix& m) { return matrix_record_from_key(matrix_key(m)); }

ClassRecord code_record(std::initializer_list<const char*> rows) {
    std::vector<BitVec> v;
    for (const char* r : rows) v.push_back(BitVec::from_string(r));
    return code_record_from_key(code_key(LinearCode(Gf2Matrix(std::move(v)))));
}

struct TempFile {
    std::filesystem::path path;
    explicit TempFile(const char* name) : path(std::filesystem::temp_directory_path() / name) {}
    ~TempFile() { std::filesystem::remove(path); }
};

}  // namespace

TEST_CASE("insert_if_new: the four GL(1) borderings collapse to the 2 GL(2) classes") {
    // border the 1x1 identity with all (x, y) in F_2 x F_2
    CanonStore store;
    int inserted = 0;
    Gf2Matrix a1 = Gf2Matrix::identity(1);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            BitVec xv = BitVec::from_uint(static_cast<uint64_t>(x), 1);
            BitVec yv = BitVec::from_uint(static_cast<uint64_t>(y), 1);
            Gf2Matrix b = gl_extend({a1, xv, yv});
            if (store.insert_if_new(matrix_record(b), /*validate=*/true)) ++inserted;
        }
    CHECK(inserted == 2);
    CHECK(store.size() == 2);
}

TEST_CASE("record tags are recomputed from the canonical payload") {
    ClassRecord rep = code_record({"1010", "0101"});
    CHECK(rep.n == 4);
    CHECK(rep.k == 2);
    CHECK(rep.d == 2);
    CHECK(rep.dual_d == 2);
    CHECK((rep.flags & record_flags::kSelfDual) != 0);
    CHECK((rep.flags & record_flags::kEven) != 0);
    CHECK_FALSE(rep.is_matrix_record());

    ClassRecord mat = matrix_record(oracles::remark_matrix_a());
    CHECK(mat.n == 3);
    CHECK(mat.k == 3);
    CHECK(mat.d == 0);
    CHECK(mat.is_matrix_record());
}

TEST_CASE("record line format round-trips") {
    for (const ClassRecord& rec :
         {code_record({"110", "011"}), code_record({"1010", "0101"}),
          matrix_record(oracles::remark_matrix_b())}) {
        ClassRecord back = ClassRecord::parse_line(rec.to_line());
        CHECK(back.key == rec.key);
        CHECK(back.same_payload(rec));
        CHECK(back.n == rec.n);
        CHECK(back.k == rec.k);
        CHECK(back.d == rec.d);
        CHECK(back.dual_d == rec.dual_d);
        CHECK(back.flags == rec.flags);
    }
    CHECK_THROWS_AS(ClassRecord::parse_line("not a record"), ParseError);
}

TEST_CASE("validate rejects a tampered payload") {
    ClassRecord rec = code_record({"1010", "0101"});
    ClassRecord bad = rec;
    bad.object.set(0, 1, !bad.object.get(0, 1));
    CanonStore store;
    CHECK_THROWS_AS(store.insert_if_new(bad, /*validate=*/true), KeyPayloadMismatch);
    CHECK(store.insert_if_new(rec, /*validate=*/true));
    store.validate_all();
}

TEST_CASE("merge: disjoint and overlapping parts; conflicting payload throws") {
    ClassRecord a = code_record({"11"});
    ClassRecord b = code_record({"1010", "0101"});
    ClassRecord c = matrix_record(Gf2Matrix::identity(2));
    CanonStore s1, s2;
    s1.insert_if_new(a);
    s1.insert_if_new(b);
    s2.insert_if_new(b);
    s2.insert_if_new(c);
    CanonStore all = merge({&s1, &s2});
    CHECK(all.size() == 3);
    CHECK(all.contains(a.key));
    CHECK(all.contains(c.key));

    CanonStore s3;
    ClassRecord forged = b;
    forged.d += 1;
    s3.insert_if_new(forged);
    CHECK_THROWS_AS(merge({&s1, &s3}), ConflictingPayload);
}

TEST_CASE("save/load round-trip and byte-stable ordering") {
    CanonStore store;
    std::mt19937 rng(89);
    for (int trial = 0; trial < 20; ++trial)
        store.insert_if_new(
            code_record_from_key(code_key(LinearCode(oracles::random_full_rank(3, 6, rng)))));
    TempFile f("ciscodes_store_test.tsv");
    store.save(f.path);
    CanonStore back = CanonStore::load(f.path);
    CHECK(back.size() == store.size());
    CHECK(back.to_bytes() == store.to_bytes());
    back.validate_all();

    // summary sidecar: total line plus one line per distance
    TempFile s("ciscodes_store_test.summary");
    store.save_summary(s.path);
    CHECK(std::filesystem::file_size(s.path) > 0);
}

TEST_CASE("generate: degenerate extender dedupes the seeds") {
    std::vector<Gf2Matrix> seeds;
    std::mt19937 rng(97);
    auto perms = oracles::all_permutations(3);
    // many row/column permutations of the same two matrices
    for (int trial = 0; trial < 30; ++trial) {
        uint64_t base = trial % 2 ? oracles::encode_matrix(oracles::remark_matrix_a())
                                  : oracles::encode_matrix(oracles::remark_matrix_b());
        seeds.push_back(oracles::decode_matrix(
            oracles::permute_matrix(base, 3, oracles::random_permutation(3, rng),
                                    oracles::random_permutation(3, rng)),
            3));
    }
    CanonStore out = generate<Gf2Matrix>(
        seeds, [](const Gf2Matrix&) { return std::vector<Gf2Matrix>{}; },
        [](const Gf2Matrix&) { return true; },
        [](const Gf2Matrix& m) { return matrix_record_from_key(matrix_key(m)); });
    CHECK(out.size() == 2);
}

TEST_CASE("generate: GL(1) -> GL(2) step produces exactly the 2 classes") {
    std::vector<Gf2Matrix> seeds{Gf2Matrix::identity(1)};
    CanonStore out = generate<Gf2Matrix>(
        seeds,
        [](const Gf2Matrix& prev) {
            std::vector<Gf2Matrix> ext;
            for (int x = 0; x < 2; ++x)
                for (int y = 0; y < 2; ++y)
                    ext.push_back(gl_extend({prev, BitVec::from_uint(static_cast<uint64_t>(x), 1),
                                             BitVec::from_uint(static_cast<uint64_t>(y), 1)}));
            return ext;
        },
        [](const Gf2Matrix& m) { return m.nrows() == 2; },  // seeds are filtered out
        [](const Gf2Matrix& m) { return matrix_record_from_key(matrix_key(m)); });
    CHECK(out.size() == 2);
}

TEST_CASE("generate_indexed: sharding is a partition and the merge is byte-identical") {
    auto make = [](uint64_t i) -> std::optional<ClassRecord> {
        if (i % 5 == 4) return std::nullopt;  // holes in the stream are fine
        Gf2Matrix m = oracles::decode_matrix(oracles::gl_elements(3)[i % 168], 3);
        return matrix_record_from_key(matrix_key(m));
    };
    CanonStore whole = generate_indexed(400, make);
    CHECK(whole.size() == 7);

    std::vector<CanonStore> parts;
    for (int s = 0; s < 4; ++s) {
        GenerateOptions opt;
        opt.shards = 4;
        opt.shard_index = s;
        opt.threads = 2;
        parts.push_back(generate_indexed(400, make, opt));
    }
    std::vector<const CanonStore*> ptrs;
    for (const CanonStore& p : parts) ptrs.push_back(&p);
    CHECK(merge(ptrs).to_bytes() == whole.to_bytes());

    // rerun with a different thread count: byte-identical
    GenerateOptions opt;
    opt.threads = 3;
    CHECK(generate_indexed(400, make, opt).to_bytes() == whole.to_bytes());
}
