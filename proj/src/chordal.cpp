#include "pig/chordal.hpp"

#include <algorithm>

#include "pig/errors.hpp"
#include "pig/pq_tree.hpp"

namespace pig {

void validate_adjacency(const Adjacency& adj) {
    const int n = static_cast<int>(adj.size());
    for (int v = 0; v < n; v++) {
        const auto& nb = adj[v];
        if (!std::is_sorted(nb.begin(), nb.end())) throw InvalidInput("adjacency not sorted");
        if (std::adjacent_find(nb.begin(), nb.end()) != nb.end())
            throw InvalidInput("duplicate edge");
        for (int u : nb) {
            if (u < 0 || u >= n) throw InvalidInput("neighbor out of range");
            if (u == v) throw InvalidInput("self loop");
            if (!std::binary_search(adj[u].begin(), adj[u].end(), v))
                throw InvalidInput("adjacency not symmetric");
        }
    }
}

std::vector<int> max_cardinality_order(const Adjacency& adj) {
    const int n = static_cast<int>(adj.size());
    std::vector<int> weight(n, 0);
    std::vector<char> visited(n, 0);
    std::vector<std::vector<int>> bucket(n + 1);
    for (int v = 0; v < n; v++) bucket[0].push_back(v);
    int maxw = 0;
    std::vector<int> visit_order;
    visit_order.reserve(n);
    for (int step = 0; step < n; step++) {
        int v = -1;
        while (v < 0) {
            while (bucket[maxw].empty()) maxw--;  // lazy deletion keeps stale entries
            int cand = bucket[maxw].back();
            bucket[maxw].pop_back();
            if (!visited[cand] && weight[cand] == maxw) v = cand;
        }
        visited[v] = 1;
        visit_order.push_back(v);
        for (int u : adj[v])
            if (!visited[u]) {
                weight[u]++;
                bucket[weight[u]].push_back(u);
                maxw = std::max(maxw, weight[u]);
            }
    }
    std::reverse(visit_order.begin(), visit_order.end());
    return visit_order;  // last visited is eliminated first
}

namespace {

struct EliminationView {
    std::vector<int> pos;                  // vertex -> elimination position
    std::vector<std::vector<int>> madj;    // later neighbors, by vertex
    std::vector<int> parent;               // earliest later neighbor, -1 if none
};

EliminationView later_neighbors(const Adjacency& adj, const std::vector<int>& elim) {
    const int n = static_cast<int>(adj.size());
    EliminationView ev;
    ev.pos.assign(n, -1);
    for (int i = 0; i < n; i++) {
        int v = elim[i];
        if (v < 0 || v >= n || ev.pos[v] >= 0) throw InvalidInput("bad elimination order");
        ev.pos[v] = i;
    }
    ev.madj.resize(n);
    ev.parent.assign(n, -1);
    for (int v = 0; v < n; v++) {
        for (int u : adj[v])
            if (ev.pos[u] > ev.pos[v]) {
                ev.madj[v].push_back(u);
                if (ev.parent[v] < 0 || ev.pos[u] < ev.pos[ev.parent[v]]) ev.parent[v] = u;
            }
    }
    return ev;
}

}  // namespace

bool is_perfect_elimination(const Adjacency& adj, const std::vector<int>& elim) {
    validate_adjacency(adj);
    const int n = static_cast<int>(adj.size());
    if (static_cast<int>(elim.size()) != n) throw InvalidInput("bad elimination order");
    EliminationView ev = later_neighbors(adj, elim);
    // defer the test madj(v)-{p} subset-of adj(p) to p, then batch-verify
    std::vector<std::vector<int>> deferred(n);
    for (int v = 0; v < n; v++) {
        int p = ev.parent[v];
        for (int u : ev.madj[v])
            if (u != p) deferred[p].push_back(u);
    }
    std::vector<int> mark(n, -1);
    for (int p = 0; p < n; p++) {
        if (deferred[p].empty()) continue;
        for (int u : adj[p]) mark[u] = p;
        for (int u : deferred[p])
            if (mark[u] != p) return false;
    }
    return true;
}

std::optional<BinaryMatrix> chordal_cliques(const Adjacency& adj) {
    validate_adjacency(adj);
    const int n = static_cast<int>(adj.size());
    std::vector<int> elim = max_cardinality_order(adj);
    if (!is_perfect_elimination(adj, elim)) return std::nullopt;
    EliminationView ev = later_neighbors(adj, elim);
    // candidate v + madj(v) is maximal unless a child u has it as a strict prefix
    std::vector<char> dominated(n, 0);
    for (int u = 0; u < n; u++) {
        int p = ev.parent[u];
        if (p >= 0 && ev.madj[u].size() == ev.madj[p].size() + 1) dominated[p] = 1;
    }
    std::vector<std::pair<RowId, std::vector<ColId>>> row_sets(n);
    for (int v = 0; v < n; v++) row_sets[v].first = v;
    std::vector<ColId> col_order;
    for (int i = 0; i < n; i++) {
        int v = elim[i];
        if (dominated[v]) continue;
        ColId k = static_cast<ColId>(col_order.size());
        col_order.push_back(k);
        row_sets[v].second.push_back(k);
        for (int u : ev.madj[v]) row_sets[u].second.push_back(k);
    }
    for (auto& [r, cells] : row_sets) std::sort(cells.begin(), cells.end());
    return BinaryMatrix::from_row_sets(row_sets, col_order);
}

std::optional<BinaryMatrix> interval_clique_order(const Adjacency& adj) {
    std::optional<BinaryMatrix> mk = chordal_cliques(adj);
    if (!mk) return std::nullopt;
    std::optional<PQTree> t = PQTree::build(*mk);
    if (!t) return std::nullopt;
    mk->reorder_columns(t->frontier());
    return mk;
}

}  // namespace pig
