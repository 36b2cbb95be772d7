#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "ciscodes/canon.hpp"
#include "oracles.hpp"

using namespace ciscodes;

namespace {

LinearCode code_from(std::initializer_list<const char*> rows) {
    std::vector<BitVec> v;
    for (const char* r : rows) v.push_back(BitVec::from_string(r));
    return LinearCode(Gf2Matrix(std::move(v)));
}

ColoredBipartiteGraph relabel(const ColoredBipartiteGraph& g, const std::vector<int>& black_perm,
                              const std::vector<int>& red_perm) {
    ColoredBipartiteGraph out;
    out.n_black = g.n_black;
    out.n_red = g.n_red;
    out.adj.assign(g.n_black, BitVec(g.n_red));
    for (int i = 0; i < g.n_black; ++i)
        for (int j = 0; j < g.n_red; ++j)
            if (g.adj[i].get(j)) out.adj[black_perm[i]].set(red_perm[j]);
    return out;
}

// Independent oracle for the generating set S: accumulate whole weight
// layers from the minimum weight until the rank reaches k.
std::vector<std::vector<bool>> s_layers_oracle(const LinearCode& c) {
    std::set<std::vector<bool>> space = oracles::row_space(c.gen());
    std::vector<std::vector<bool>> words(space.begin(), space.end());
    std::vector<std::vector<bool>> out;
    for (int w = 1; w <= c.n(); ++w) {
        for (const auto& v : words)
            if (std::count(v.begin(), v.end(), true) == w) out.push_back(v);
        if (out.empty()) continue;
        std::vector<BitVec> rows;
        for (const auto& v : out) {
            BitVec bv(c.n());
            for (int i = 0; i < c.n(); ++i)
                if (v[i]) bv.set(i);
            rows.push_back(bv);
        }
        if (rank(Gf2Matrix(rows)) == c.k()) return out;
    }
    return out;
}

}  // namespace

TEST_CASE("code_to_graph: repetition codes") {
    ColoredBipartiteGraph g = code_to_graph(code_from({"11"}));
    CHECK(g.n_black == 1);
    CHECK(g.n_red == 2);
    CHECK(g.adj[0].weight() == 2);

    ColoredBipartiteGraph g2 = code_to_graph(code_from({"1100", "0011"}));
    CHECK(g2.n_black == 2);
    CHECK(g2.n_red == 4);
    CHECK(g2.adj[0].weight() + g2.adj[1].weight() == 4);
}

TEST_CASE("code_to_graph: S matches the layered oracle on [I|A]") {
    Gf2Matrix a = oracles::remark_matrix_a();
    Gf2Matrix gen(3, 6);
    for (int r = 0; r < 3; ++r) {
        gen.set(r, r);
        for (int c = 0; c < 3; ++c)
            if (a.get(r, c)) gen.set(r, 3 + c);
    }
    LinearCode code{gen};
    ColoredBipartiteGraph g = code_to_graph(code);
    auto s = s_layers_oracle(code);
    CHECK(g.n_black == static_cast<int>(s.size()));
    CHECK(rank(Gf2Matrix(g.adj)) == 3);
    // same multiset of rows
    std::multiset<std::string> got, expect;
    for (const BitVec& row : g.adj) got.insert(row.to_string());
    for (const auto& v : s) {
        std::string str(v.size(), '0');
        for (size_t i = 0; i < v.size(); ++i)
            if (v[i]) str[i] = '1';
        expect.insert(str);
    }
    CHECK(got == expect);
}

TEST_CASE("code_to_graph: black order is deterministic (weight then lex)") {
    std::mt19937 rng(61);
    for (int trial = 0; trial < 50; ++trial) {
        LinearCode c{oracles::random_full_rank(3, 7, rng)};
        ColoredBipartiteGraph g = code_to_graph(c);
        for (int i = 1; i < g.n_black; ++i) {
            int wa = g.adj[i - 1].weight(), wb = g.adj[i].weight();
            CHECK(wa <= wb);
            if (wa == wb) CHECK(g.adj[i - 1].lex_less(g.adj[i]));
        }
    }
}

TEST_CASE("matrix_to_graph examples") {
    ColoredBipartiteGraph id = matrix_to_graph(Gf2Matrix::identity(3));
    for (int i = 0; i < 3; ++i) CHECK(id.adj[i].weight() == 1);

    ColoredBipartiteGraph ga = matrix_to_graph(oracles::remark_matrix_a());
    std::multiset<int> da{ga.adj[0].weight(), ga.adj[1].weight(), ga.adj[2].weight()};
    CHECK(da == std::multiset<int>{3, 2, 1});

    ColoredBipartiteGraph gb = matrix_to_graph(oracles::remark_matrix_b());
    std::multiset<int> db{gb.adj[0].weight(), gb.adj[1].weight(), gb.adj[2].weight()};
    CHECK(db == std::multiset<int>{2, 2, 1});

    CHECK_THROWS_AS(matrix_to_graph(Gf2Matrix(2, 2)), SingularMatrix);
}

TEST_CASE("canonical_key: invariant under 100 random relabelings") {
    std::mt19937 rng(67);
    LinearCode c = code_from({"11110000", "00111100", "00001111", "01010101"});
    ColoredBipartiteGraph g = code_to_graph(c);
    CanonicalKey key = canonical_key(g);
    for (int trial = 0; trial < 100; ++trial) {
        auto bp = oracles::random_permutation(g.n_black, rng);
        auto rp = oracles::random_permutation(g.n_red, rng);
        CHECK(canonical_key(relabel(g, bp, rp)) == key);
    }
}

TEST_CASE("regression: remark matrices A and B") {
    Gf2Matrix a = oracles::remark_matrix_a();
    Gf2Matrix b = oracles::remark_matrix_b();
    CHECK(matrix_key(a) != matrix_key(b));

    auto ia = [](const Gf2Matrix& m) {
        Gf2Matrix gen(3, 6);
        for (int r = 0; r < 3; ++r) {
            gen.set(r, r);
            for (int c = 0; c < 3; ++c)
                if (m.get(r, c)) gen.set(r, 3 + c);
        }
        return LinearCode(gen);
    };
    CHECK(code_key(ia(a)) == code_key(ia(b)));
}

TEST_CASE("matrix_key: invariant under permutation pairs") {
    std::mt19937 rng(71);
    Gf2Matrix a = oracles::remark_matrix_a();
    CanonicalKey key = matrix_key(a);
    uint64_t code = oracles::encode_matrix(a);
    for (int trial = 0; trial < 100; ++trial) {
        auto rp = oracles::random_permutation(3, rng);
        auto cp = oracles::random_permutation(3, rng);
        Gf2Matrix p = oracles::decode_matrix(oracles::permute_matrix(code, 3, rp, cp), 3);
        CHECK(matrix_key(p) == key);
    }
}

TEST_CASE("GL(2) and GL(3) class counts against the brute-force orbit oracle") {
    for (int n = 2; n <= 3; ++n) {
        auto perms = oracles::all_permutations(n);
        std::set<std::string> keys;
        std::set<uint64_t> orbits;
        std::map<uint64_t, std::string> orbit_to_key;
        for (uint64_t code : oracles::gl_elements(n)) {
            Gf2Matrix m = oracles::decode_matrix(code, n);
            CanonicalKey key = matrix_key(m);
            keys.insert(key.bytes);
            uint64_t orbit = oracles::orbit_min(code, n, perms);
            orbits.insert(orbit);
            // key constant on each orbit, distinct across orbits
            auto [it, fresh] = orbit_to_key.emplace(orbit, key.bytes);
            if (!fresh) CHECK(it->second == key.bytes);
        }
        CHECK(keys.size() == orbits.size());
        CHECK(keys.size() == (n == 2 ? 2u : 7u));
        // distinct orbits map to distinct keys
        std::set<std::string> images;
        for (const auto& [_, k] : orbit_to_key) images.insert(k);
        CHECK(images.size() == orbits.size());
    }
}

TEST_CASE("code_key: column permutation invariance and [4,2] separation") {
    std::mt19937 rng(73);
    LinearCode c{oracles::random_full_rank(4, 9, rng)};
    CanonicalKey key = code_key(c);
    for (int trial = 0; trial < 50; ++trial) {
        Gf2Matrix permuted = oracles::permute_columns(c.gen(), oracles::random_permutation(9, rng));
        CHECK(code_key(LinearCode(permuted)) == key);
    }
    // the two inequivalent [4,2] CIS codes
    CHECK(code_key(code_from({"1010", "0101"})) != code_key(code_from({"1110", "0111"})));
}

TEST_CASE("completeness at small scale: equal code keys imply explicit equivalence") {
    std::mt19937 rng(79);
    std::vector<Gf2Matrix> gens;
    for (int trial = 0; trial < 12; ++trial) gens.push_back(oracles::random_full_rank(3, 6, rng));
    for (size_t i = 0; i < gens.size(); ++i)
        for (size_t j = i + 1; j < gens.size(); ++j) {
            bool same_key = code_key(LinearCode(gens[i])) == code_key(LinearCode(gens[j]));
            CHECK(same_key == oracles::codes_equivalent_bruteforce(gens[i], gens[j]));
        }
}

TEST_CASE("isolated red vertices (zero columns) are handled") {
    LinearCode c = code_from({"110000", "001100"});
    CanonicalKey key = code_key(c);
    std::mt19937 rng(83);
    for (int trial = 0; trial < 20; ++trial) {
        Gf2Matrix permuted = oracles::permute_columns(c.gen(), oracles::random_permutation(6, rng));
        CHECK(code_key(LinearCode(permuted)) == key);
    }
}

TEST_CASE("key header separates shapes; hex round-trips; adjacency decodes") {
    CanonicalKey k1 = code_key(code_from({"11"}));
    CanonicalKey k2 = code_key(code_from({"111"}));
    CHECK(k1 != k2);
    CHECK(CanonicalKey::from_hex(k1.hex()) == k1);

    Gf2Matrix a = oracles::remark_matrix_a();
    Gf2Matrix adj = key_adjacency(matrix_key(a));
    CHECK(adj.nrows() == 3);
    CHECK(adj.ncols() == 3);
    CHECK(matrix_key(adj) == matrix_key(a));  // canonical representative re-keys to itself
}
