#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pig/chordal.hpp"

namespace pig {

// Vertices 0..n-1 split into probes and non-probes; non-probes form an
// independent set, so every edge touches a probe.
struct PartitionedGraph {
    std::vector<std::string> names;  // by vertex id
    std::vector<bool> is_probe;      // by vertex id
    Adjacency adj;                   // sorted neighbor lists
    long long m = 0;

    int n() const { return static_cast<int>(adj.size()); }
    bool adjacent(int u, int v) const;
    std::vector<int> probes() const;
    std::vector<int> nonprobes() const;
    std::vector<std::pair<int, int>> edges() const;  // u < v, sorted
};

// Builds and validates a graph. Throws MalformedInput on out-of-range ids,
// self-loops, or duplicate edges; NonIndependentNonProbes on an edge between
// two non-probes. Empty names get defaults ("p3"/"x7" by vertex id).
PartitionedGraph make_graph(std::vector<bool> is_probe,
                            const std::vector<std::pair<int, int>>& edges,
                            std::vector<std::string> names = {});

// Induced subgraph; vertices renumbered 0..k-1 in the order given.
PartitionedGraph induced_subgraph(const PartitionedGraph& g, const std::vector<int>& vertices);

// Vertex sets of connected components, each sorted, ordered by smallest member.
std::vector<std::vector<int>> connected_components(const Adjacency& adj);

}  // namespace pig
