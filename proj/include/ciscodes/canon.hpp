#pragma once

#include <compare>
#include <string>

#include "ciscodes/codes.hpp"
#include "ciscodes/gf2.hpp"

namespace ciscodes {

/// Bipartite graph with black vertices (rows / codewords) and red vertices
/// (coordinates).  Edges only run between the two classes.
struct ColoredBipartiteGraph {
    int n_black = 0;
    int n_red = 0;
    std::vector<BitVec> adj;  // n_black rows of length n_red
};

/// Equality-comparable canonical key: 4-byte (n_black, n_red) header followed
/// by the adjacency bit-matrix under the canonical labeling.
struct CanonicalKey {
    std::string bytes;
    auto operator<=>(const CanonicalKey&) const = default;

    std::string hex() const;
    static CanonicalKey from_hex(std::string_view s);
};

/// Graph on the generating set S of C: all nonzero codewords of weight <= t,
/// for the smallest t such that they span C, starting from the minimum
/// weight.  Black vertices ordered by (weight, lexicographic value).
ColoredBipartiteGraph code_to_graph(const LinearCode& c);

/// Rows of an invertible matrix against its columns; throws SingularMatrix.
ColoredBipartiteGraph matrix_to_graph(const Gf2Matrix& a);

/// Individualization-refinement canonical form: the lexicographically minimal
/// adjacency certificate over the explored leaves, with automorphism pruning.
/// Identical for color-preserving isomorphic graphs.
CanonicalKey canonical_key(const ColoredBipartiteGraph& g);

CanonicalKey code_key(const LinearCode& c);
CanonicalKey matrix_key(const Gf2Matrix& a);

/// Decode the canonical adjacency matrix (n_black x n_red) stored in a key.
Gf2Matrix key_adjacency(const CanonicalKey& key);

}  // namespace ciscodes
