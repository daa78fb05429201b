#include "pig/graph.hpp"

#include <algorithm>
#include <string>

#include "pig/errors.hpp"

namespace pig {

bool PartitionedGraph::adjacent(int u, int v) const {
    const auto& a = adj[u];
    return std::binary_search(a.begin(), a.end(), v);
}

std::vector<int> PartitionedGraph::probes() const {
    std::vector<int> out;
    for (int v = 0; v < n(); v++)
        if (is_probe[v]) out.push_back(v);
    return out;
}

std::vector<int> PartitionedGraph::nonprobes() const {
    std::vector<int> out;
    for (int v = 0; v < n(); v++)
        if (!is_probe[v]) out.push_back(v);
    return out;
}

std::vector<std::pair<int, int>> PartitionedGraph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < n(); u++)
        for (int v : adj[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

PartitionedGraph make_graph(std::vector<bool> is_probe,
                            const std::vector<std::pair<int, int>>& edges,
                            std::vector<std::string> names) {
    const int n = static_cast<int>(is_probe.size());
    PartitionedGraph g;
    g.is_probe = std::move(is_probe);
    g.adj.assign(n, {});
    if (names.empty()) {
        int np = 0, nn = 0;
        for (int v = 0; v < n; v++)
            names.push_back((g.is_probe[v] ? "p" : "x") + std::to_string(g.is_probe[v] ? np++ : nn++));
    }
    if (static_cast<int>(names.size()) != n) throw MalformedInput("name count does not match vertex count");
    g.names = std::move(names);
    for (auto [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n) throw MalformedInput("edge endpoint out of range");
        if (u == v) throw MalformedInput("self-loop on vertex " + g.names[u]);
        if (!g.is_probe[u] && !g.is_probe[v])
            throw NonIndependentNonProbes("edge joins non-probes " + g.names[u] + " and " + g.names[v]);
        g.adj[u].push_back(v);
        g.adj[v].push_back(u);
    }
    for (int v = 0; v < n; v++) {
        auto& a = g.adj[v];
        std::sort(a.begin(), a.end());
        if (std::adjacent_find(a.begin(), a.end()) != a.end())
            throw MalformedInput("duplicate edge at vertex " + g.names[v]);
    }
    g.m = static_cast<long long>(edges.size());
    return g;
}

PartitionedGraph induced_subgraph(const PartitionedGraph& g, const std::vector<int>& vertices) {
    std::vector<int> local(g.n(), -1);
    for (int i = 0; i < static_cast<int>(vertices.size()); i++) local[vertices[i]] = i;
    PartitionedGraph out;
    out.adj.assign(vertices.size(), {});
    for (int i = 0; i < static_cast<int>(vertices.size()); i++) {
        int v = vertices[i];
        out.names.push_back(g.names[v]);
        out.is_probe.push_back(g.is_probe[v]);
        for (int w : g.adj[v])
            if (local[w] >= 0) out.adj[i].push_back(local[w]);
        std::sort(out.adj[i].begin(), out.adj[i].end());
        out.m += static_cast<long long>(out.adj[i].size());
    }
    out.m /= 2;
    return out;
}

std::vector<std::vector<int>> connected_components(const Adjacency& adj) {
    const int n = static_cast<int>(adj.size());
    std::vector<int> comp(n, -1), stack;
    std::vector<std::vector<int>> out;
    for (int s = 0; s < n; s++) {
        if (comp[s] >= 0) continue;
        int id = static_cast<int>(out.size());
        out.push_back({});
        comp[s] = id;
        stack.push_back(s);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            out[id].push_back(v);
            for (int w : adj[v])
                if (comp[w] < 0) {
                    comp[w] = id;
                    stack.push_back(w);
                }
        }
        std::sort(out[id].begin(), out[id].end());
    }
    return out;
}

}  // namespace pig
