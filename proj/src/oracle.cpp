#include "pig/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <random>
#include <set>
#include <string>

#include "pig/errors.hpp"
#include "pig/graph.hpp"

namespace pig {

namespace {

// Layout of the generated model, left to right:
//   [gadget zone][plain zone]
// Every clique column owns a private single-column probe. That alone makes
// the model normal: the private probe witnesses both endpoints of any
// interval touching the column, blocks vertex-set containment between
// neighbors, and makes the column's probe set a maximal clique. Gadget gaps
// are kept clean so their residents stay genuinely stretched:
//   one-boundary gadget:  K g | next   bridge [K,g], resident [g, next]
//   two-boundary gadget:  K g g | next bridges [K,g1] [g2,next], resident [g1,g2]
struct Layout {
    int total_cols = 0;
    int plain_start = 0;
    std::vector<std::pair<int, int>> probe_iv;     // by probe id
    std::vector<std::pair<int, int>> nonprobe_iv;  // by non-probe index
    std::vector<char> col_is_gap;                  // by position
};

Layout build_layout(const GeneratorParams& p, std::mt19937_64& rng) {
    const int fixed_probes = (p.n1 + p.n2) + (p.n1 + 2 * p.n2);  // leads + bridges
    const int gadget_cols = 2 * p.n1 + 3 * p.n2;

    std::uint64_t span = static_cast<std::uint64_t>(p.probes_max - p.probes_min) + 1;
    int probes = p.probes_min + static_cast<int>(rng() % span);

    int plain;
    if (p.columns > 0) {
        plain = p.columns - gadget_cols;
        if (plain < 1) throw RefusedParams("column count does not cover the gadget layout");
        if (probes < fixed_probes + plain) throw RefusedParams("probe budget below the layout");
    } else {
        int avail = probes - fixed_probes;
        if (avail < 1) throw RefusedParams("probe budget below the layout");
        plain = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(avail));
    }

    Layout lay;
    lay.total_cols = gadget_cols + plain;
    lay.plain_start = gadget_cols;
    lay.col_is_gap.assign(lay.total_cols, 0);

    const std::uint64_t grow = static_cast<std::uint64_t>(p.density * 1000000.0);
    int pos = 0;
    auto lead = [&]() {  // clique column with its private probe
        lay.probe_iv.push_back({pos, pos});
        pos++;
    };
    for (int i = 0; i < p.n2; i++) {
        lead();
        lay.probe_iv.push_back({pos - 1, pos});      // left bridge
        lay.probe_iv.push_back({pos + 1, pos + 2});  // right bridge into the next lead
        lay.nonprobe_iv.push_back({pos, pos + 1});
        lay.col_is_gap[pos] = lay.col_is_gap[pos + 1] = 1;
        pos += 2;
    }
    for (int i = 0; i < p.n1; i++) {
        lead();
        lay.probe_iv.push_back({pos - 1, pos});  // bridge
        lay.nonprobe_iv.push_back({pos, pos + 1});
        lay.col_is_gap[pos] = 1;
        pos++;
    }
    for (int i = 0; i < plain; i++) lead();

    // free probes roam the plain zone only, so the gadget gaps stay clean
    int freebies = probes - fixed_probes - plain;
    for (int i = 0; i < freebies; i++) {
        int l = lay.plain_start + static_cast<int>(rng() % static_cast<std::uint64_t>(plain));
        int r = l;
        while (r + 1 < lay.total_cols && rng() % 1000000 < grow) r++;
        lay.probe_iv.push_back({l, r});
    }
    for (int i = 0; i < p.ns; i++) {
        int c = static_cast<int>(rng() % static_cast<std::uint64_t>(lay.total_cols));
        lay.nonprobe_iv.push_back({c, c});
    }
    return lay;
}

std::string column_key(const BinaryMatrix& m, bool reversed) {
    std::string key;
    int nc = m.n_cols();
    for (int j = 0; j < nc; j++) {
        ColId c = m.cols[reversed ? nc - 1 - j : j];
        key += '|';
        for (RowId r : m.col(c)) {
            key += std::to_string(r);
            key += ',';
        }
    }
    return key;
}

int brute_cap(const PartitionedGraph& g, int requested, const char* who) {
    int n = g.n();
    if (n == 0) throw InvalidInput("graph has no vertices");
    if (n > 8) throw RefusedTooLarge(std::string(who) + " handles at most 8 vertices");
    int cap = requested < 0 ? n : std::min(requested, 2 * n);
    if (cap < 1) throw InvalidInput("column budget must be positive");
    return cap;
}

}  // namespace

std::pair<ProbeIntervalModel, PartitionedGraph> random_normal_model(const GeneratorParams& params) {
    if (params.probes_min < 1 || params.probes_max < params.probes_min)
        throw RefusedParams("probe count range is empty");
    if (params.n1 < 0 || params.n2 < 0 || params.ns < 0)
        throw RefusedParams("negative non-probe count");
    if (params.density < 0.0 || params.density > 1.0)
        throw RefusedParams("density outside [0, 1]");

    std::mt19937_64 rng(params.seed);
    Layout lay = build_layout(params, rng);

    const int probes = static_cast<int>(lay.probe_iv.size());
    const int n = probes + static_cast<int>(lay.nonprobe_iv.size());
    std::vector<bool> is_probe(n, false);
    std::vector<std::pair<int, int>> iv(n);
    for (int i = 0; i < probes; i++) {
        is_probe[i] = true;
        iv[i] = lay.probe_iv[i];
    }
    for (std::size_t i = 0; i < lay.nonprobe_iv.size(); i++) iv[probes + i] = lay.nonprobe_iv[i];

    std::vector<std::vector<int>> members(lay.total_cols);
    for (int v = 0; v < n; v++)
        for (int j = iv[v].first; j <= iv[v].second; j++) members[j].push_back(v);

    std::vector<std::pair<int, int>> edges;
    for (const auto& col : members)
        for (std::size_t a = 0; a < col.size(); a++)
            for (std::size_t b = a + 1; b < col.size(); b++)
                if (is_probe[col[a]] || is_probe[col[b]]) edges.push_back({col[a], col[b]});
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    PartitionedGraph g = make_graph(is_probe, edges);

    std::vector<std::pair<RowId, std::vector<ColId>>> rows;
    std::vector<ColId> cols(lay.total_cols);
    for (int j = 0; j < lay.total_cols; j++) cols[j] = j;
    for (int v = 0; v < n; v++) {
        std::vector<ColId> cells;
        for (int j = iv[v].first; j <= iv[v].second; j++) cells.push_back(j);
        rows.push_back({v, std::move(cells)});
    }
    ProbeIntervalModel model;
    model.matrix = BinaryMatrix::from_row_sets(rows, cols);
    model.col_class.assign(lay.total_cols, ColumnClass::Clique);
    for (int j = 0; j < lay.total_cols; j++)
        if (lay.col_is_gap[j]) model.col_class[j] = ColumnClass::SemiClique;
    return {std::move(model), std::move(g)};
}

namespace {

// Enumerates models as column vertex sets, left to right. When two adjacent
// columns are nested, dropping the smaller one keeps every row an interval
// and changes no column-sharing pair, so models with nested neighbors are
// redundant and those branches die immediately. That same reduction means
// every surviving column brings a new starting vertex, which bounds useful
// models at n columns. In normal-only mode, adjacent columns with equal probe
// sets are skipped too: the normality filter always rejects them.
struct ColumnSearch {
    const PartitionedGraph& g;
    int n, cap;
    bool normal_only;
    std::size_t limit;
    std::vector<unsigned> adj, bad;  // bad[v]: forbidden column mates
    unsigned probes_mask = 0;
    std::vector<unsigned> rem;  // adjacency not yet realized by a shared column
    int unmet = 0;              // directed count of unrealized edges
    int l[8], r[8];
    std::set<std::string> seen;
    std::vector<std::pair<int, BinaryMatrix>> found;  // (n_cols, model)
    bool stop = false;

    ColumnSearch(const PartitionedGraph& graph, int cap_, bool normal_only_, std::size_t limit_)
        : g(graph),
          n(graph.n()),
          cap(cap_),
          normal_only(normal_only_),
          limit(limit_),
          adj(n, 0),
          bad(n, 0),
          rem(n, 0) {
        for (int v = 0; v < n; v++) l[v] = r[v] = -1;
        for (int v = 0; v < n; v++) {
            for (int u : g.adj[v]) adj[v] |= 1u << u;
            if (g.is_probe[v]) probes_mask |= 1u << v;
        }
        unsigned all = n ? (1u << n) - 1 : 0;
        for (int v = 0; v < n; v++) {
            unsigned non = all & ~adj[v] & ~(1u << v);
            bad[v] = g.is_probe[v] ? non : non & probes_mask;
            rem[v] = adj[v];
            unmet += static_cast<int>(g.adj[v].size());
        }
    }

    void emit(int depth) {
        std::vector<std::pair<RowId, std::vector<ColId>>> rows;
        for (int v = 0; v < n; v++) {
            std::vector<ColId> cells;
            for (int j = l[v]; j <= r[v]; j++) cells.push_back(j);
            rows.push_back({v, std::move(cells)});
        }
        std::vector<ColId> order;
        for (int j = 0; j < depth; j++) order.push_back(j);
        BinaryMatrix m = BinaryMatrix::from_row_sets(rows, order);
        if (normal_only) {
            if (!is_normal_model(g, m)) return;
            std::string key = std::min(column_key(m, false), column_key(m, true));
            if (!seen.insert(key).second) return;
        }
        found.push_back({depth, std::move(m)});
        if (limit && found.size() >= limit) stop = true;
    }

    void dfs(unsigned prev, unsigned open, unsigned unstarted, int depth) {
        if (depth > 0 && unstarted == 0 && unmet == 0) emit(depth);
        if (stop || depth == cap) return;
        for (unsigned keep = open;; keep = (keep - 1) & open) {
            for (unsigned fresh = unstarted;; fresh = (fresh - 1) & unstarted) {
                unsigned s = keep | fresh;
                if (s != 0 && admissible(prev, s, fresh, depth)) {
                    unsigned saved[8];
                    int saved_unmet = unmet;
                    for (unsigned t = s; t;) {
                        int v = std::countr_zero(t);
                        t &= t - 1;
                        saved[v] = rem[v];
                        if (l[v] < 0) l[v] = depth;
                        r[v] = depth;
                        unsigned hit = rem[v] & s;
                        unmet -= std::popcount(hit);
                        rem[v] &= ~s;
                    }
                    dfs(s, s, unstarted & ~fresh, depth + 1);
                    for (unsigned t = s; t;) {
                        int v = std::countr_zero(t);
                        t &= t - 1;
                        rem[v] = saved[v];
                        if (l[v] == depth) {
                            l[v] = -1;
                            r[v] = -1;
                        } else {
                            r[v] = depth - 1;
                        }
                    }
                    unmet = saved_unmet;
                    if (stop) return;
                }
                if (fresh == 0) break;
            }
            if (keep == 0) break;
        }
    }

    bool admissible(unsigned prev, unsigned s, unsigned fresh, int depth) const {
        for (unsigned t = fresh; t;) {
            int v = std::countr_zero(t);
            t &= t - 1;
            if (s & bad[v]) return false;
        }
        if (depth == 0) return true;
        if ((prev & s) == prev || (prev & s) == s) return false;  // nesting
        return !normal_only || (prev & probes_mask) != (s & probes_mask);
    }
};

}  // namespace

std::optional<BinaryMatrix> brute_force_recognize(const PartitionedGraph& g, int max_cols) {
    int cap = brute_cap(g, max_cols, "brute-force recognition");
    auto run = [&](int budget) -> std::optional<BinaryMatrix> {
        ColumnSearch s(g, budget, false, 1);
        s.dfs(0, 0, s.n ? (1u << s.n) - 1 : 0, 0);
        if (s.found.empty()) return std::nullopt;
        return std::move(s.found.front().second);
    };
    // existence is monotone in the column budget (nested-free models fit in
    // any larger budget unchanged), so one search at the cap settles the
    // verdict and an ascending sweep finds a fewest-column witness
    auto at_cap = run(cap);
    if (!at_cap) return std::nullopt;
    for (int budget = 1; budget < cap; budget++)
        if (auto m = run(budget)) return m;
    return at_cap;
}

std::vector<BinaryMatrix> brute_force_normal_models(const PartitionedGraph& g, int bound,
                                                    std::size_t limit) {
    int cap = brute_cap(g, bound, "normal-model enumeration");
    std::vector<BinaryMatrix> out;
    ColumnSearch s(g, cap, true, limit);
    s.dfs(0, 0, s.n ? (1u << s.n) - 1 : 0, 0);
    // walk order is depth first; report smallest models first, ties in
    // discovery order
    std::stable_sort(s.found.begin(), s.found.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [cols, m] : s.found) out.push_back(std::move(m));
    return out;
}

BinaryMatrix column_delete_with_constraints(const BinaryMatrix& m, ColId c) {
    if (!m.has_col(c)) throw InvalidInput("no such column");
    if (!m.is_c1_ordered()) throw InvalidInput("matrix is not consecutively ordered");
    const int cpos = m.col_pos[c];
    std::vector<RowId> enders, starters;
    for (RowId r : m.rows) {
        auto span = m.row_span(r);
        if (span.last == cpos && span.first < cpos) enders.push_back(r);
        if (span.first == cpos && span.last > cpos) starters.push_back(r);
    }
    if (enders.empty() || starters.empty())
        throw InvalidInput("column lacks a proper right or proper left endpoint");

    BinaryMatrix out = m;
    RowId next = *std::max_element(m.rows.begin(), m.rows.end()) + 1;
    for (RowId l : enders)
        for (RowId r : starters) out.add_row(next++, sorted_union(m.row(l), m.row(r)));

    std::vector<ColId> keep;
    for (ColId col : out.cols)
        if (col != c) keep.push_back(col);
    return out.submatrix(nullptr, &keep);
}

}  // namespace pig
