#pragma once

#include <cstddef>
#include <vector>

#include "rwmso/structure.hpp"

namespace rwmso {

// A branch-decomposition (T, mu) of the cut-rank function: an unrooted subcubic
// tree and a bijection from vertices onto its leaves.
struct BranchDecomposition {
    std::vector<std::vector<std::size_t>> tree; // adjacency lists
    std::vector<std::size_t> leaf_of;           // vertex -> tree node
};

// rank over GF(2) of the adjacency submatrix A[Y, V \ Y].
auto cut_rank(const Structure& g, const ElementSet& y) -> std::size_t;

// Throws if the decomposition is not a subcubic tree with leaf_of a bijection
// onto its leaves.
void validate_decomposition(const Structure& g, const BranchDecomposition& d);

// Maximum cut rank over the edges of the decomposition tree.
auto decomposition_width(const Structure& g, const BranchDecomposition& d) -> std::size_t;

struct RankwidthResult {
    std::size_t width = 0;
    BranchDecomposition witness;
};

inline constexpr std::size_t kMaxExactRankwidthVertices = 8;

// Exact rankwidth by exhaustive search over all leaf-labeled cubic trees.
// Graphs with at most one vertex have width 0; more than 8 vertices throws
// ScaleGuardError.
auto exact_rankwidth(const Structure& g) -> RankwidthResult;

} // namespace rwmso
