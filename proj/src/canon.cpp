#include "ciscodes/canon.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <cstring>
#include <deque>
#include <numeric>

namespace ciscodes {

namespace {

constexpr int kMaxVertices = 4096;

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

// Individualization-refinement search for the minimal adjacency certificate.
// The partition is an ordered list of cells over positions 0..n-1; black
// vertices start in one cell before the red cell, and refinement only splits
// cells, so black positions always precede red positions.
class CanonSearch {
  public:
    explicit CanonSearch(const ColoredBipartiteGraph& g)
        : nb_(g.n_black),
          nr_(g.n_red),
          n_(nb_ + nr_),
          words_((n_ + 63) / 64),
          neigh_(size_t(n_) * words_, 0),
          vtx_(n_),
          pos_(n_),
          cell_start_(n_),
          cell_len_(n_, 0) {
        for (int i = 0; i < nb_; ++i) {
            const BitVec& row = g.adj[i];
            for (int j = 0; j < nr_; ++j)
                if (row.get(j)) {
                    link(i, nb_ + j);
                    link(nb_ + j, i);
                }
        }
    }

    std::vector<uint8_t> run() {
        std::iota(vtx_.begin(), vtx_.end(), 0);
        std::iota(pos_.begin(), pos_.end(), 0);
        std::deque<int> queue;
        set_cell(0, nb_);
        queue.push_back(0);
        if (nr_ > 0) {
            set_cell(nb_, nr_);
            queue.push_back(nb_);
        }
        search(std::move(queue));
        return std::move(best_cert_);
    }

  private:
    void link(int a, int b) { neigh_[size_t(a) * words_ + (b >> 6)] |= uint64_t(1) << (b & 63); }

    bool adj_bit(int a, int b) const {
        return (neigh_[size_t(a) * words_ + (b >> 6)] >> (b & 63)) & 1u;
    }

    void set_cell(int start, int len) {
        cell_len_[start] = len;
        for (int p = start; p < start + len; ++p) cell_start_[p] = start;
    }

    // Equitable refinement: split every cell by neighbor counts into queued
    // splitter cells until the worklist drains.  Fragments are ordered by
    // count ascending, vertices inside a fragment ascending.
    void refine(std::deque<int> queue) {
        std::vector<uint64_t> mask(words_);
        std::vector<std::pair<int, int>> keyed;
        keyed.reserve(n_);
        while (!queue.empty()) {
            int s = queue.front();
            queue.pop_front();
            int sl = cell_len_[s];
            std::fill(mask.begin(), mask.end(), 0);
            for (int p = s; p < s + sl; ++p) {
                int v = vtx_[p];
                mask[v >> 6] |= uint64_t(1) << (v & 63);
            }
            for (int cs = 0; cs < n_; cs += cell_len_[cs]) {
                int len = cell_len_[cs];
                if (len == 1) continue;
                keyed.clear();
                bool differ = false;
                int first = -1;
                for (int p = cs; p < cs + len; ++p) {
                    int v = vtx_[p];
                    const uint64_t* nb = &neigh_[size_t(v) * words_];
                    int cnt = 0;
                    for (int w = 0; w < words_; ++w) cnt += std::popcount(nb[w] & mask[w]);
                    if (first < 0)
                        first = cnt;
                    else if (cnt != first)
                        differ = true;
                    keyed.emplace_back(cnt, v);
                }
                if (!differ) continue;
                std::sort(keyed.begin(), keyed.end());
                int frag_start = cs;
                for (int idx = 0; idx < len; ++idx) {
                    int p = cs + idx;
                    vtx_[p] = keyed[idx].second;
                    pos_[keyed[idx].second] = p;
                    if (idx > 0 && keyed[idx].first != keyed[idx - 1].first) {
                        cell_len_[frag_start] = p - frag_start;
                        queue.push_back(frag_start);
                        frag_start = p;
                    }
                    cell_start_[p] = frag_start;
                }
                cell_len_[frag_start] = cs + len - frag_start;
                queue.push_back(frag_start);
            }
        }
    }

    // Split v's cell into [v][rest], preserving the rest order.
    std::deque<int> individualize(int v) {
        int s = cell_start_[pos_[v]];
        int len = cell_len_[s];
        int p = pos_[v];
        for (int q = p; q > s; --q) {
            vtx_[q] = vtx_[q - 1];
            pos_[vtx_[q]] = q;
        }
        vtx_[s] = v;
        pos_[v] = s;
        set_cell(s, 1);
        set_cell(s + 1, len - 1);
        return {s, s + 1};
    }

    std::vector<uint8_t> leaf_cert() const {
        std::vector<uint8_t> cert((size_t(nb_) * nr_ + 7) / 8, 0);
        size_t bit = 0;
        for (int i = 0; i < nb_; ++i) {
            int vi = vtx_[i];
            for (int j = 0; j < nr_; ++j, ++bit)
                if (adj_bit(vi, vtx_[nb_ + j])) cert[bit >> 3] |= uint8_t(0x80) >> (bit & 7);
        }
        return cert;
    }

    void handle_leaf() {
        std::vector<uint8_t> cert = leaf_cert();
        if (!have_best_ || cert < best_cert_) {
            best_cert_ = std::move(cert);
            best_vtx_ = vtx_;
            have_best_ = true;
        } else if (cert == best_cert_) {
            // Both labelings canonize to the same certificate, so mapping the
            // best leaf's vertex at each position to this leaf's vertex is an
            // automorphism.
            std::vector<int> g(n_);
            bool identity = true;
            for (int p = 0; p < n_; ++p) {
                g[best_vtx_[p]] = vtx_[p];
                if (best_vtx_[p] != vtx_[p]) identity = false;
            }
            if (!identity && gens_.size() < 64) gens_.push_back(std::move(g));
        }
    }

    // Orbits of the subgroup generated by automorphisms fixing `base_`
    // pointwise; vertices in one orbit lead to identical certificate sets.
    UnionFind base_fixing_orbits() const {
        UnionFind uf(n_);
        for (const std::vector<int>& g : gens_) {
            bool fixes = true;
            for (int b : base_)
                if (g[b] != b) {
                    fixes = false;
                    break;
                }
            if (!fixes) continue;
            for (int v = 0; v < n_; ++v) uf.unite(v, g[v]);
        }
        return uf;
    }

    void search(std::deque<int> queue) {
        refine(std::move(queue));

        int target = -1, target_len = INT_MAX;
        for (int cs = 0; cs < n_; cs += cell_len_[cs])
            if (cell_len_[cs] > 1 && cell_len_[cs] < target_len) {
                target_len = cell_len_[cs];
                target = cs;
            }
        if (target < 0) {
            handle_leaf();
            return;
        }

        std::vector<int> cand(vtx_.begin() + target, vtx_.begin() + target + target_len);
        std::sort(cand.begin(), cand.end());

        std::vector<int> saved_vtx = vtx_, saved_pos = pos_;
        std::vector<int> saved_cs = cell_start_, saved_cl = cell_len_;

        std::vector<int> tried;
        size_t gens_at_build = SIZE_MAX;
        UnionFind uf(0);
        for (int v : cand) {
            if (!tried.empty()) {
                if (gens_at_build != gens_.size()) {
                    uf = base_fixing_orbits();
                    gens_at_build = gens_.size();
                }
                bool pruned = false;
                for (int w : tried)
                    if (uf.find(v) == uf.find(w)) {
                        pruned = true;
                        break;
                    }
                if (pruned) continue;
            }
            base_.push_back(v);
            search(individualize(v));
            base_.pop_back();
            vtx_ = saved_vtx;
            pos_ = saved_pos;
            cell_start_ = saved_cs;
            cell_len_ = saved_cl;
            tried.push_back(v);
        }
    }

    int nb_, nr_, n_, words_;
    std::vector<uint64_t> neigh_;
    std::vector<int> vtx_, pos_, cell_start_, cell_len_;

    std::vector<int> base_;
    std::vector<std::vector<int>> gens_;
    std::vector<uint8_t> best_cert_;
    std::vector<int> best_vtx_;
    bool have_best_ = false;
};

char hex_digit(int v) { return v < 10 ? char('0' + v) : char('a' + v - 10); }

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    throw ParseError("CanonicalKey::from_hex: invalid digit");
}

}  // namespace

std::string CanonicalKey::hex() const {
    std::string out;
    out.reserve(bytes.size() * 2);
    for (unsigned char b : bytes) {
        out.push_back(hex_digit(b >> 4));
        out.push_back(hex_digit(b & 15));
    }
    return out;
}

CanonicalKey CanonicalKey::from_hex(std::string_view s) {
    if (s.size() % 2 != 0) throw ParseError("CanonicalKey::from_hex: odd length");
    CanonicalKey k;
    k.bytes.reserve(s.size() / 2);
    for (size_t i = 0; i < s.size(); i += 2)
        k.bytes.push_back(char((hex_value(s[i]) << 4) | hex_value(s[i + 1])));
    return k;
}

ColoredBipartiteGraph code_to_graph(const LinearCode& c) {
    std::vector<BitVec> words;
    c.for_each_codeword([&](const BitVec& v) {
        if (!v.is_zero()) words.push_back(v);
    });
    std::sort(words.begin(), words.end(), [](const BitVec& a, const BitVec& b) {
        int wa = a.weight(), wb = b.weight();
        if (wa != wb) return wa < wb;
        return a.lex_less(b);
    });
    // Smallest weight threshold t whose layer-union spans C.
    size_t take = 0;
    {
        std::vector<BitVec> rows;
        size_t i = 0;
        while (i < words.size()) {
            int t = words[i].weight();
            while (i < words.size() && words[i].weight() == t) rows.push_back(words[i++]);
            if (rank(Gf2Matrix(rows)) == c.k()) {
                take = i;
                break;
            }
        }
    }
    ColoredBipartiteGraph g;
    g.n_black = static_cast<int>(take);
    g.n_red = c.n();
    g.adj.assign(words.begin(), words.begin() + take);
    return g;
}

ColoredBipartiteGraph matrix_to_graph(const Gf2Matrix& a) {
    int n = a.nrows();
    if (n != a.ncols()) throw SingularMatrix("matrix_to_graph: matrix not square");
    if (rank(a) != n) throw SingularMatrix("matrix_to_graph: matrix not invertible");
    ColoredBipartiteGraph g;
    g.n_black = n;
    g.n_red = n;
    g.adj = a.rows();
    return g;
}

CanonicalKey canonical_key(const ColoredBipartiteGraph& g) {
    if (g.n_black <= 0 || g.n_red <= 0)
        throw DimensionMismatch("canonical_key: empty partite set");
    if (g.n_black + g.n_red > kMaxVertices)
        throw DimensionTooLarge("canonical_key: too many vertices");
    CanonSearch search(g);
    std::vector<uint8_t> cert = search.run();
    CanonicalKey key;
    key.bytes.reserve(4 + cert.size());
    key.bytes.push_back(char(g.n_black >> 8));
    key.bytes.push_back(char(g.n_black & 0xff));
    key.bytes.push_back(char(g.n_red >> 8));
    key.bytes.push_back(char(g.n_red & 0xff));
    key.bytes.append(reinterpret_cast<const char*>(cert.data()), cert.size());
    return key;
}

CanonicalKey code_key(const LinearCode& c) { return canonical_key(code_to_graph(c)); }

CanonicalKey matrix_key(const Gf2Matrix& a) { return canonical_key(matrix_to_graph(a)); }

Gf2Matrix key_adjacency(const CanonicalKey& key) {
    if (key.bytes.size() < 4) throw ParseError("key_adjacency: truncated key");
    const unsigned char* b = reinterpret_cast<const unsigned char*>(key.bytes.data());
    int nb = (b[0] << 8) | b[1];
    int nr = (b[2] << 8) | b[3];
    if (key.bytes.size() != 4 + (size_t(nb) * nr + 7) / 8)
        throw ParseError("key_adjacency: size mismatch");
    Gf2Matrix m(nb, nr);
    size_t bit = 0;
    for (int i = 0; i < nb; ++i)
        for (int j = 0; j < nr; ++j, ++bit)
            if ((b[4 + (bit >> 3)] >> (7 - (bit & 7))) & 1) m.set(i, j);
    return m;
}

}  // namespace ciscodes
