#pragma once

#include <optional>
#include <vector>

#include "pig/sparse_matrix.hpp"

namespace pig {

// Simple undirected graph on vertices 0..n-1 as sorted adjacency lists.
using Adjacency = std::vector<std::vector<int>>;

// Throws InvalidInput unless lists are sorted, symmetric, self-loop free.
void validate_adjacency(const Adjacency& adj);

// Maximum-cardinality search; returns an elimination order (position 0 is
// eliminated first). For chordal graphs this is a perfect elimination order.
std::vector<int> max_cardinality_order(const Adjacency& adj);

// True iff each vertex's later neighbors form a clique under `elim`.
bool is_perfect_elimination(const Adjacency& adj, const std::vector<int>& elim);

// Clique matrix: rows = vertices, one column per maximal clique (at most n
// columns, O(n+m) ones); nullopt when the graph is not chordal.
std::optional<BinaryMatrix> chordal_cliques(const Adjacency& adj);

// Consecutive-ones ordered clique matrix; nullopt when the graph is not an
// interval graph (not chordal, or cliques not orderable).
std::optional<BinaryMatrix> interval_clique_order(const Adjacency& adj);

}  // namespace pig
