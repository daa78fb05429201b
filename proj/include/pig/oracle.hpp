#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "pig/recognition.hpp"

namespace pig {

// Seed-deterministic positive-instance generator. Class counts are intents:
// the layout gadgets make stretched non-probes genuinely non-simplicial.
struct GeneratorParams {
    int probes_min = 1, probes_max = 8;  // probe count drawn uniformly from this range
    int n1 = 0;                          // non-probes stretching across one boundary
    int n2 = 0;                          // non-probes living strictly between cliques
    int ns = 0;                          // simplicial non-probes
    int columns = 0;                     // total columns; 0 = derive from the probe budget
    double density = 0.3;                // growth chance for free probe intervals
    std::uint64_t seed = 0;
};

// Builds a random normal model column by column (every column keeps a private
// single-column probe, which forces taut endpoints, distinct unmergeable
// neighbors, and maximal-clique columns), then reads the graph off it.
// verify_model and is_normal_model hold by construction. Infeasible parameter
// combinations throw RefusedParams.
std::pair<ProbeIntervalModel, PartitionedGraph> random_normal_model(const GeneratorParams& params);

// Exhaustive search for any interval assignment over at most max_cols columns
// (capped at 2n; negative = n, which suffices for the verdict) that realizes
// exactly the edges of g. Returns the model with the fewest columns found, or
// nullopt. Throws RefusedTooLarge above 8 vertices.
std::optional<BinaryMatrix> brute_force_recognize(const PartitionedGraph& g, int max_cols = -1);

// All normal models of g with at most `bound` columns (negative = n, which is
// exhaustive), deduplicated up to column reversal, fewest columns first. A
// nonzero `limit` stops the search once that many distinct models are found,
// which is enough to separate unique from non-unique cheaply. Throws
// RefusedTooLarge above 8 vertices.
std::vector<BinaryMatrix> brute_force_normal_models(const PartitionedGraph& g, int bound = -1,
                                                    std::size_t limit = 0);

// Deletes column c from a consecutive-ones ordered matrix while preserving
// the consecutive orderings of the surviving columns: for every row ending
// properly at c and every row starting properly there, their union is added
// as a fresh constraint row. Throws InvalidInput when c lacks a proper right
// or proper left endpoint.
BinaryMatrix column_delete_with_constraints(const BinaryMatrix& m, ColId c);

}  // namespace pig
