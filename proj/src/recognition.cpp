#include "pig/recognition.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <unordered_map>
#include <utility>

#include "pig/chordal.hpp"
#include "pig/errors.hpp"
#include "pig/radix.hpp"

namespace pig {

const char* to_string(RejectStage s) {
    switch (s) {
        case RejectStage::NotChordal: return "not-chordal";
        case RejectStage::NotIntervalGP: return "not-interval-GP";
        case RejectStage::MkPlusNotC1P: return "MK-plus-not-C1P";
        case RejectStage::BindingStructure: return "binding-structure";
        case RejectStage::ConstraintsNotC1P: return "constraints-not-C1P";
        case RejectStage::ChainStructure: return "chain-structure";
        case RejectStage::C1PMNoSolution: return "c1pm-no-solution";
    }
    return "?";
}

const char* to_string(ColumnClass c) {
    switch (c) {
        case ColumnClass::Clique: return "clique";
        case ColumnClass::SemiClique: return "semi-clique";
        case ColumnClass::Simplicial: return "simplicial";
    }
    return "?";
}

namespace {

std::vector<ColId> canonical_frontier(PQTree& t) {
    int cap = t.leaves().empty() ? 0 : t.leaves().back() + 1;
    t.reorder_by_leaf_labels(std::vector<int>(cap, -1));
    return t.frontier();
}

// Row position spans under the current column order, indexed by RowId.
struct Spans {
    std::vector<int> lo, hi;  // -1 for absent or empty rows
    explicit Spans(const BinaryMatrix& m) {
        lo.assign(m.row_pos.size(), -1);
        hi.assign(m.row_pos.size(), -1);
        for (RowId r : m.rows) {
            auto s = m.row_span(r);
            lo[r] = s.first;
            hi[r] = s.last;
        }
    }
    bool disjoint(int a, int b) const { return hi[a] < lo[b] || hi[b] < lo[a]; }
};

// Walks one bound-neighbor list keeping the running minimum under set
// containment (ties by rank); members disjoint from it go to `rest` when
// given, otherwise they mean a third chain. nullopt = improper overlap.
std::optional<int> chain_scan(const std::vector<int>& list, const Spans& sp,
                              const std::vector<int>& rank, std::vector<int>* rest) {
    int w = list[0];
    for (std::size_t i = 1; i < list.size(); i++) {
        int u = list[i];
        if (sp.disjoint(u, w)) {
            if (!rest) return std::nullopt;
            rest->push_back(u);
        } else if (sp.lo[u] == sp.lo[w] && sp.hi[u] == sp.hi[w]) {
            if (rank[u] < rank[w]) w = u;
        } else if (sp.lo[w] <= sp.lo[u] && sp.hi[u] <= sp.hi[w]) {
            w = u;  // strictly inside the running minimum
        } else if (sp.lo[u] <= sp.lo[w] && sp.hi[w] <= sp.hi[u]) {
            // contains the running minimum: deeper in the same chain
        } else {
            return std::nullopt;
        }
    }
    return w;
}

std::optional<std::array<int, 2>> chain_minima(const std::vector<int>& list, const Spans& sp,
                                               const std::vector<int>& rank) {
    std::vector<int> rest;
    auto w1 = chain_scan(list, sp, rank, &rest);
    if (!w1) return std::nullopt;
    if (rest.empty()) return std::array<int, 2>{*w1, -1};
    auto w2 = chain_scan(rest, sp, rank, nullptr);
    if (!w2) return std::nullopt;
    return std::array<int, 2>{*w1, *w2};
}

// Extremal neighbors of a stretched non-probe: m1 ends first (ties: starts
// last, then smaller rank), m2 starts last (ties: ends first, then smaller
// rank).
std::pair<int, int> extremal_neighbors(const std::vector<int>& nbrs, const Spans& sp,
                                       const std::vector<int>& rank) {
    int m1 = -1, m2 = -1;
    for (int q : nbrs) {
        if (m1 < 0 || sp.hi[q] < sp.hi[m1] ||
            (sp.hi[q] == sp.hi[m1] &&
             (sp.lo[q] > sp.lo[m1] || (sp.lo[q] == sp.lo[m1] && rank[q] < rank[m1]))))
            m1 = q;
        if (m2 < 0 || sp.lo[q] > sp.lo[m2] ||
            (sp.lo[q] == sp.lo[m2] &&
             (sp.hi[q] < sp.hi[m2] || (sp.hi[q] == sp.hi[m2] && rank[q] < rank[m2]))))
            m2 = q;
    }
    return {m1, m2};
}

std::vector<int> probe_members(const PartitionedGraph& g, const std::vector<int>& vs) {
    std::vector<int> out;
    for (int v : vs)
        if (g.is_probe[v]) out.push_back(v);
    return out;
}

}  // namespace

std::variant<BinaryMatrix, Reject> interval_cliques(const PartitionedGraph& g) {
    std::vector<int> ps = g.probes();
    std::vector<int> pidx(g.n(), -1);
    for (int i = 0; i < static_cast<int>(ps.size()); i++) pidx[ps[i]] = i;
    Adjacency padj(ps.size());
    for (int i = 0; i < static_cast<int>(ps.size()); i++)
        for (int w : g.adj[ps[i]])
            if (pidx[w] >= 0) padj[i].push_back(pidx[w]);
    auto mk = chordal_cliques(padj);
    if (!mk) return Reject{RejectStage::NotChordal, "probe subgraph is not chordal"};
    auto tree = PQTree::build(*mk);
    if (!tree)
        return Reject{RejectStage::NotIntervalGP,
                      "probe subgraph cliques admit no consecutive order"};
    mk->reorder_columns(canonical_frontier(*tree));
    std::vector<std::pair<RowId, std::vector<ColId>>> rsets;
    for (int i = 0; i < static_cast<int>(ps.size()); i++) rsets.push_back({ps[i], mk->row(i)});
    return BinaryMatrix::from_row_sets(rsets, mk->cols);
}

NonProbeClassification classify_nonprobes(const PartitionedGraph& g, const BinaryMatrix& m_k) {
    int n = g.n();
    int k = m_k.n_cols();
    NonProbeClassification out;
    out.cls.assign(n, NonProbeClass::NS);
    out.Q.assign(n, {});
    out.rank.assign(n, -1);
    for (int v = 0; v < n; v++)
        if (g.is_probe[v] && m_k.has_row(v)) out.Q[v] = m_k.row(v);

    Spans sp(m_k);
    struct Ev {
        int x, pos, side;  // side 0 = interval start, 1 = interval end
    };
    std::vector<Ev> evs;
    std::vector<int> nps = g.nonprobes();
    for (int x : nps)
        for (int p : g.adj[x]) {
            evs.push_back({x, sp.lo[p], 0});
            evs.push_back({x, sp.hi[p], 1});
        }
    counting_sort_by(evs, 2, [](const Ev& e) { return e.side; });
    counting_sort_by(evs, std::max(k, 1), [](const Ev& e) { return e.pos; });
    counting_sort_by(evs, std::max(n, 1), [](const Ev& e) { return e.x; });

    std::vector<int> csize(k);
    for (int j = 0; j < k; j++) csize[j] = static_cast<int>(m_k.col(m_k.cols[j]).size());

    std::size_t i = 0;
    while (i < evs.size()) {
        int x = evs[i].x;
        int counter = 0, peak = 0;
        std::vector<int> q;
        while (i < evs.size() && evs[i].x == x) {
            if (evs[i].side == 0) {
                counter++;
                peak = std::max(peak, counter);
                i++;
            } else {
                int pos = evs[i].pos;
                if (counter == csize[pos]) q.push_back(m_k.cols[pos]);
                while (i < evs.size() && evs[i].x == x && evs[i].side == 1 && evs[i].pos == pos) {
                    counter--;
                    i++;
                }
            }
        }
        std::sort(q.begin(), q.end());
        out.Q[x] = std::move(q);
        bool simplicial = peak == static_cast<int>(g.adj[x].size());
        out.cls[x] = simplicial          ? NonProbeClass::NS
                     : out.Q[x].empty()  ? NonProbeClass::N2
                                         : NonProbeClass::N1;
    }
    for (int x : nps) {
        switch (out.cls[x]) {
            case NonProbeClass::N1: out.n1.push_back(x); break;
            case NonProbeClass::N2: out.n2.push_back(x); break;
            case NonProbeClass::NS: out.ns.push_back(x); break;
        }
    }
    int r = 0;
    for (int v = 0; v < n; v++)
        if (g.is_probe[v]) out.rank[v] = r++;
    for (int v = 0; v < n; v++)
        if (!g.is_probe[v] && out.cls[v] != NonProbeClass::NS) out.rank[v] = r++;
    for (int x : out.ns) out.rank[x] = r++;
    return out;
}

std::variant<BinaryMatrix, Reject> build_mk_plus(const PartitionedGraph& g,
                                                 const BinaryMatrix& m_k,
                                                 const NonProbeClassification& cls) {
    (void)g;
    std::vector<std::pair<RowId, std::vector<ColId>>> rsets;
    for (RowId r : m_k.rows) rsets.push_back({r, m_k.row(r)});
    for (int x : cls.n1) rsets.push_back({x, cls.Q[x]});
    for (int x : cls.n2) rsets.push_back({x, {}});
    BinaryMatrix m = BinaryMatrix::from_row_sets(rsets, m_k.cols);
    auto tree = PQTree::build(m);
    if (!tree)
        return Reject{RejectStage::MkPlusNotC1P,
                      "non-probe clique sets break the consecutive clique order"};
    m.reorder_columns(canonical_frontier(*tree));
    return m;
}

std::variant<BindingPairs, Reject> representative_pairs(const PartitionedGraph& g,
                                                        const BinaryMatrix& m_k_plus,
                                                        const NonProbeClassification& cls) {
    int n = g.n();
    Spans sp(m_k_plus);
    BindingPairs out;

    std::vector<std::vector<int>> unf(n);
    for (int x : cls.n1)
        for (int p : g.adj[x])
            if (sp.disjoint(x, p)) {
                unf[x].push_back(p);
                unf[p].push_back(x);
                out.all_bound.push_back({std::min(x, p), std::max(x, p)});
            }

    std::vector<std::vector<int>> part(n);
    for (int z : cls.n2) {
        auto [m1, m2] = extremal_neighbors(g.adj[z], sp, cls.rank);
        if (m1 < 0 || m1 == m2 || sp.hi[m1] >= sp.lo[m2])
            return Reject{RejectStage::BindingStructure,
                          "a stretched non-probe's neighborhood has no two-sided split"};
        part[m1].push_back(m2);
        part[m2].push_back(m1);
        out.all_bound.push_back({std::min(m1, m2), std::max(m1, m2)});
    }
    for (auto& l : part) {
        std::sort(l.begin(), l.end());
        l.erase(std::unique(l.begin(), l.end()), l.end());
    }
    std::sort(out.all_bound.begin(), out.all_bound.end());
    out.all_bound.erase(std::unique(out.all_bound.begin(), out.all_bound.end()),
                        out.all_bound.end());

    auto minima_table = [&](const std::vector<std::vector<int>>& lists, const char* what)
        -> std::variant<std::vector<std::array<int, 2>>, Reject> {
        std::vector<std::array<int, 2>> mins(n, {-1, -1});
        for (int v = 0; v < n; v++) {
            if (lists[v].empty()) continue;
            auto m = chain_minima(lists[v], sp, cls.rank);
            if (!m) return Reject{RejectStage::BindingStructure, what};
            mins[v] = *m;
        }
        return mins;
    };
    auto collect = [&](const std::vector<std::array<int, 2>>& mins, ConstraintPair::Kind kind) {
        for (int v = 0; v < n; v++)
            for (int w : mins[v]) {
                if (w <= v) continue;  // also skips -1
                if (mins[w][0] == v || mins[w][1] == v)
                    out.representatives.push_back(
                        {kind, v, w, sorted_union(cls.Q[v], cls.Q[w])});
            }
    };

    auto mnp = minima_table(unf, "unfulfilled neighborhoods do not nest into two chains");
    if (auto* rej = std::get_if<Reject>(&mnp)) return *rej;
    collect(std::get<0>(mnp), ConstraintPair::Kind::NpP);
    auto mpp = minima_table(part, "bound partner cliques do not nest into two chains");
    if (auto* rej = std::get_if<Reject>(&mpp)) return *rej;
    collect(std::get<0>(mpp), ConstraintPair::Kind::PP);
    return out;
}

std::variant<std::pair<BinaryMatrix, BinaryMatrix>, Reject> order_with_constraints(
    const PartitionedGraph& g, const BinaryMatrix& m_k_plus, const BindingPairs& pairs) {
    BinaryMatrix prime = m_k_plus;
    int next = g.n();
    for (const ConstraintPair& cp : pairs.representatives) prime.add_row(next++, cp.row);
    auto tree = PQTree::build(prime);
    if (!tree)
        return Reject{RejectStage::ConstraintsNotC1P,
                      "binding constraints are incompatible with the clique order"};
    prime.reorder_columns(canonical_frontier(*tree));
    std::vector<RowId> keep = m_k_plus.rows;
    BinaryMatrix star = prime.submatrix(&keep, nullptr);
    return std::pair{std::move(prime), std::move(star)};
}

std::variant<SemiCliqueInsertion, Reject> insert_semicliques(const PartitionedGraph& g,
                                                             const BinaryMatrix& m_k_star,
                                                             const NonProbeClassification& cls) {
    int n = g.n();
    int k = m_k_star.n_cols();
    Spans sp(m_k_star);

    // One demand per (vertex, side): the neighbors the new column must hold.
    struct Demand {
        int vertex, gap, side;  // side 0 = against the left column, 1 = right
        std::vector<int> set;
    };
    std::vector<Demand> demands;
    auto covering_neighbors = [&](int x, int pos) {
        std::vector<int> s;
        for (int p : g.adj[x])
            if (sp.lo[p] <= pos && pos <= sp.hi[p]) s.push_back(p);
        return s;
    };

    std::vector<std::vector<int>> x_at(k), y_at(k), z_at(k);
    std::vector<int> zgap(n, -1);
    for (int x : cls.n1) {
        bool left = false, right = false;
        for (int p : g.adj[x]) {
            if (!sp.disjoint(x, p)) continue;
            if (sp.hi[p] + 1 == sp.lo[x])
                left = true;
            else if (sp.hi[x] + 1 == sp.lo[p])
                right = true;
            else
                return Reject{RejectStage::ChainStructure,
                              "unfulfilled adjacency not across adjacent columns"};
        }
        if (left) {
            int gap = sp.lo[x] - 1;
            demands.push_back({x, gap, 0, covering_neighbors(x, gap)});
            y_at[gap].push_back(x);
        }
        if (right) {
            int gap = sp.hi[x];
            demands.push_back({x, gap, 1, covering_neighbors(x, gap + 1)});
            x_at[gap].push_back(x);
        }
    }
    for (int z : cls.n2) {
        auto [m1, m2] = extremal_neighbors(g.adj[z], sp, cls.rank);
        if (m1 < 0 || m1 == m2 || sp.hi[m1] + 1 != sp.lo[m2])
            return Reject{RejectStage::ChainStructure,
                          "stretched non-probe neighbors do not straddle one boundary"};
        int gap = sp.hi[m1];
        for (int q : g.adj[z])
            if (sp.hi[q] != gap && sp.lo[q] != gap + 1 &&
                !(sp.lo[q] <= gap && gap + 1 <= sp.hi[q]))
                return Reject{RejectStage::ChainStructure,
                              "stretched non-probe has a neighbor clear of its boundary"};
        demands.push_back({z, gap, 0, covering_neighbors(z, gap)});
        demands.push_back({z, gap, 1, covering_neighbors(z, gap + 1)});
        z_at[gap].push_back(z);
        zgap[z] = gap;
    }

    std::vector<std::vector<int>> dem_at[2];
    dem_at[0].assign(std::max(k, 1), {});
    dem_at[1].assign(std::max(k, 1), {});
    for (int i = 0; i < static_cast<int>(demands.size()); i++)
        dem_at[demands[i].side][demands[i].gap].push_back(i);
    std::vector<int> gap_list;
    for (int gp = 0; gp + 1 < k; gp++)
        if (!dem_at[0][gp].empty() || !dem_at[1][gp].empty()) gap_list.push_back(gp);

    std::vector<std::vector<std::vector<int>>> groups;
    for (int gp : gap_list)
        for (int side = 0; side < 2; side++) {
            groups.emplace_back();
            for (int di : dem_at[side][gp]) groups.back().push_back(demands[di].set);
        }
    auto sorted = group_radix_sort(groups, std::max(n, 1), RadixOrder::BySize, true, true);

    SemiCliqueInsertion out;
    ColId next_col = 0;
    for (ColId c : m_k_star.cols) next_col = std::max(next_col, c + 1);

    // col placement per gap, then per-row extra cells
    std::vector<std::vector<ColId>> extra(n);
    struct Match {
        int l = -1, r = -1;  // positions within the gap's new columns
    };
    std::vector<Match> zmatch(n);
    std::vector<std::vector<ColId>> probe_extra(n);
    std::unordered_map<long long, int> pos_by_size[2];  // (gap<<20|size) -> position

    for (int gi = 0; gi < static_cast<int>(gap_list.size()); gi++) {
        int gp = gap_list[gi];
        const RadixResult& resL = sorted[2 * gi];
        const RadixResult& resR = sorted[2 * gi + 1];
        if (!resL.is_chain || !resR.is_chain)
            return Reject{RejectStage::ChainStructure,
                          "gap demands do not form a containment chain"};
        std::vector<int> w = sorted_intersect(m_k_star.col(m_k_star.cols[gp]),
                                              m_k_star.col(m_k_star.cols[gp + 1]));
        std::vector<int> wp = probe_members(g, w);
        auto side_ok = [&](const RadixResult& res, int boundary_pos) -> bool {
            if (res.lists.empty()) return true;
            std::vector<int> head =
                probe_members(g, m_k_star.col(m_k_star.cols[boundary_pos]));
            if (res.lists.back().size() >= head.size()) return false;
            const std::vector<int>& smallest = res.lists.front();
            if (!sorted_subset(wp, smallest)) return false;
            return smallest.size() > wp.size();
        };
        if (!side_ok(resL, gp) || !side_ok(resR, gp + 1))
            return Reject{RejectStage::ChainStructure,
                          "gap demands collide with the boundary columns"};

        GapFill gf;
        gf.gap = gp;
        gf.W = w;
        gf.X = x_at[gp];
        gf.Y = y_at[gp];
        gf.Z = z_at[gp];
        gf.descending.assign(resL.lists.rbegin(), resL.lists.rend());
        gf.ascending = resR.lists;
        for (int j = 0; j < static_cast<int>(gf.descending.size()) +
                                static_cast<int>(gf.ascending.size());
             j++)
            gf.new_cols.push_back(next_col++);
        int nl = static_cast<int>(gf.descending.size());
        for (int j = 0; j < nl; j++) {
            pos_by_size[0][(static_cast<long long>(gp) << 20) |
                           static_cast<long long>(gf.descending[j].size())] = j;
            for (int p : gf.descending[j]) probe_extra[p].push_back(gf.new_cols[j]);
        }
        for (int j = 0; j < static_cast<int>(gf.ascending.size()); j++) {
            pos_by_size[1][(static_cast<long long>(gp) << 20) |
                           static_cast<long long>(gf.ascending[j].size())] = nl + j;
            for (int p : gf.ascending[j]) probe_extra[p].push_back(gf.new_cols[nl + j]);
        }
        for (int v : w)
            if (!g.is_probe[v])
                extra[v].insert(extra[v].end(), gf.new_cols.begin(), gf.new_cols.end());
        out.gaps.push_back(std::move(gf));
    }
    std::unordered_map<int, int> gapwork;  // gap -> index in out.gaps
    for (int i = 0; i < static_cast<int>(out.gaps.size()); i++) gapwork[out.gaps[i].gap] = i;

    for (const Demand& d : demands) {
        const GapFill& gf = out.gaps[gapwork[d.gap]];
        int pos = pos_by_size[d.side].at((static_cast<long long>(d.gap) << 20) |
                                         static_cast<long long>(d.set.size()));
        if (cls.cls[d.vertex] == NonProbeClass::N2) {
            (d.side == 0 ? zmatch[d.vertex].l : zmatch[d.vertex].r) = pos;
        } else if (d.side == 0) {
            extra[d.vertex].insert(extra[d.vertex].end(), gf.new_cols.begin() + pos,
                                   gf.new_cols.end());
        } else {
            extra[d.vertex].insert(extra[d.vertex].end(), gf.new_cols.begin(),
                                   gf.new_cols.begin() + pos + 1);
        }
    }
    for (int z : cls.n2) {
        const GapFill& gf = out.gaps[gapwork[zgap[z]]];
        extra[z].assign(gf.new_cols.begin() + zmatch[z].l, gf.new_cols.begin() + zmatch[z].r + 1);
    }

    std::vector<ColId> order;
    for (int j = 0; j < k; j++) {
        order.push_back(m_k_star.cols[j]);
        auto it = gapwork.find(j);
        if (it != gapwork.end())
            for (ColId c : out.gaps[it->second].new_cols) order.push_back(c);
    }
    std::vector<std::pair<RowId, std::vector<ColId>>> rsets;
    for (RowId r : m_k_star.rows) {
        std::vector<ColId> cells = m_k_star.row(r);
        if (r < n && g.is_probe[r])
            cells.insert(cells.end(), probe_extra[r].begin(), probe_extra[r].end());
        else
            cells.insert(cells.end(), extra[r].begin(), extra[r].end());
        rsets.push_back({r, std::move(cells)});
    }
    out.m_n = BinaryMatrix::from_row_sets(rsets, order);

    // The stretched matrix must represent the graph without its simplicial
    // non-probes: consecutive rows, every edge realized, counts exact.
    if (!out.m_n.is_c1_ordered())
        return Reject{RejectStage::ChainStructure, "stretched rows lost consecutiveness"};
    Spans fs(out.m_n);
    std::vector<char> is_ns(n, 0);
    for (int x : cls.ns) is_ns[x] = 1;
    for (auto [u, v] : g.edges()) {
        if (is_ns[u] || is_ns[v]) continue;
        if (fs.disjoint(u, v))
            return Reject{RejectStage::ChainStructure,
                          "stretched matrix misses an adjacency"};
    }
    int C = out.m_n.n_cols();
    std::vector<int> sa(C + 1, 0), ea(C + 1, 0), sp2(C + 1, 0), ep2(C + 1, 0);
    for (RowId r : out.m_n.rows) {
        sa[fs.lo[r]]++;
        ea[fs.hi[r]]++;
        if (g.is_probe[r]) {
            sp2[fs.lo[r]]++;
            ep2[fs.hi[r]]++;
        }
    }
    for (int t = 1; t <= C; t++) {
        sa[t] += sa[t - 1];
        ea[t] += ea[t - 1];
        sp2[t] += sp2[t - 1];
        ep2[t] += ep2[t - 1];
    }
    for (RowId r : out.m_n.rows) {
        int want = 0;
        for (int u : g.adj[r])
            if (!is_ns[u]) want++;
        int got = g.is_probe[r] ? sa[fs.hi[r]] - (fs.lo[r] > 0 ? ea[fs.lo[r] - 1] : 0) - 1
                                : sp2[fs.hi[r]] - (fs.lo[r] > 0 ? ep2[fs.lo[r] - 1] : 0);
        if (got != want)
            return Reject{RejectStage::ChainStructure,
                          "stretched matrix does not represent the graph on "
                          "non-simplicial vertices"};
    }
    return out;
}

SimplicialColumns build_mp(const PartitionedGraph& g, const BinaryMatrix& m_n,
                           const NonProbeClassification& cls) {
    SimplicialColumns out;
    std::map<std::vector<int>, ColId> by_probe_set;
    for (ColId c : m_n.cols) by_probe_set.emplace(probe_members(g, m_n.col(c)), c);
    ColId next = 0;
    for (ColId c : m_n.cols) next = std::max(next, c + 1);
    std::vector<ColId> order = m_n.cols;
    std::vector<std::vector<ColId>> fresh(g.n());
    for (int x : cls.ns) {
        const std::vector<int>& key = g.adj[x];
        auto it = by_probe_set.find(key);
        if (it != by_probe_set.end()) {
            out.placement.push_back({x, it->second});
        } else {
            ColId c = next++;
            by_probe_set.emplace(key, c);
            order.push_back(c);
            out.new_sets.push_back(key);
            for (int p : key) fresh[p].push_back(c);
            out.placement.push_back({x, c});
        }
    }
    std::vector<std::pair<RowId, std::vector<ColId>>> rsets;
    for (RowId r : m_n.rows) {
        if (!g.is_probe[r]) continue;
        std::vector<ColId> cells = m_n.row(r);
        cells.insert(cells.end(), fresh[r].begin(), fresh[r].end());
        rsets.push_back({r, std::move(cells)});
    }
    out.m_p = BinaryMatrix::from_row_sets(rsets, order);
    return out;
}

std::variant<RecognitionResult, Reject> assemble_model(const PartitionedGraph& g,
                                                       const SimplicialColumns& mp,
                                                       const BinaryMatrix& m_n,
                                                       const NonProbeClassification& cls,
                                                       ComponentTrace&& partial) {
    (void)cls;
    C1PMInstance inst{mp.m_p, m_n, mp.m_p.rows, m_n.cols};
    auto sol = solve(inst);
    if (!sol)
        return Reject{RejectStage::C1PMNoSolution,
                      "probe rows and the column tree admit no common ordering"};
    const std::vector<ColId>& pi = sol->pi;
    std::vector<std::pair<RowId, std::vector<ColId>>> rsets;
    for (RowId r : m_n.rows) {
        auto s = sol->spans[sol->span_of[r]];
        std::vector<ColId> cells;
        for (int t = s.first; t >= 0 && t <= s.last; t++) cells.push_back(pi[t]);
        rsets.push_back({r, std::move(cells)});
    }
    for (auto [x, c] : mp.placement) rsets.push_back({x, {c}});
    BinaryMatrix mg = BinaryMatrix::from_row_sets(rsets, pi);

    ColId maxc = 0;
    for (ColId c : pi) maxc = std::max(maxc, c);
    std::vector<ColumnClass> col_class(maxc + 1, ColumnClass::Simplicial);
    for (ColId c : partial.m_k_star.cols) col_class[c] = ColumnClass::Clique;
    for (const GapFill& gf : partial.gaps)
        for (ColId c : gf.new_cols) col_class[c] = ColumnClass::SemiClique;

    if (!verify_model(g, mg) || !is_normal_model(g, mg))
        return Reject{RejectStage::C1PMNoSolution, "assembled matrix fails final verification"};

    partial.c1pm = std::move(sol);
    partial.col_class = col_class;
    partial.n_cols = mg.n_cols();
    RecognitionResult res;
    res.model = ProbeIntervalModel{std::move(mg), std::move(col_class)};
    res.trace.components.push_back(std::move(partial));
    return res;
}

namespace {

std::variant<std::pair<ProbeIntervalModel, ComponentTrace>, Reject> run_component(
    const PartitionedGraph& g, const std::vector<int>& comp) {
    ComponentTrace tr;
    tr.vertices = comp;
    if (comp.size() == 1) {
        bool probe = g.is_probe[comp[0]];
        tr.degenerate = true;
        tr.n_cols = 1;
        tr.cls.cls.assign(1, NonProbeClass::NS);
        tr.cls.Q.assign(1, {});
        tr.cls.rank.assign(1, 0);
        if (!probe) {
            tr.cls.ns.push_back(0);
            tr.ns_column.push_back({0, 0});
        }
        tr.col_class = {probe ? ColumnClass::Clique : ColumnClass::Simplicial};
        ProbeIntervalModel model{BinaryMatrix::from_row_sets({{0, {0}}}, {0}), tr.col_class};
        return std::pair{std::move(model), std::move(tr)};
    }
    PartitionedGraph sub = induced_subgraph(g, comp);
    auto mk = interval_cliques(sub);
    if (auto* rej = std::get_if<Reject>(&mk)) return *rej;
    tr.m_k = std::move(std::get<0>(mk));
    tr.cls = classify_nonprobes(sub, tr.m_k);
    auto mkp = build_mk_plus(sub, tr.m_k, tr.cls);
    if (auto* rej = std::get_if<Reject>(&mkp)) return *rej;
    tr.m_k_plus = std::move(std::get<0>(mkp));
    auto rp = representative_pairs(sub, tr.m_k_plus, tr.cls);
    if (auto* rej = std::get_if<Reject>(&rp)) return *rej;
    tr.pairs = std::move(std::get<0>(rp));
    auto oc = order_with_constraints(sub, tr.m_k_plus, tr.pairs);
    if (auto* rej = std::get_if<Reject>(&oc)) return *rej;
    tr.m_k_prime = std::move(std::get<0>(oc).first);
    tr.m_k_star = std::move(std::get<0>(oc).second);
    auto ins = insert_semicliques(sub, tr.m_k_star, tr.cls);
    if (auto* rej = std::get_if<Reject>(&ins)) return *rej;
    tr.m_n = std::move(std::get<0>(ins).m_n);
    tr.gaps = std::move(std::get<0>(ins).gaps);
    SimplicialColumns mp = build_mp(sub, tr.m_n, tr.cls);
    tr.m_p = mp.m_p;
    tr.s_sets = mp.new_sets;
    tr.ns_column = mp.placement;
    BinaryMatrix m_n = tr.m_n;
    NonProbeClassification cls = tr.cls;
    auto fin = assemble_model(sub, mp, m_n, cls, std::move(tr));
    if (auto* rej = std::get_if<Reject>(&fin)) return *rej;
    auto& res = std::get<0>(fin);
    return std::pair{std::move(res.model), std::move(res.trace.components[0])};
}

}  // namespace

RecognizeOutcome recognize(const PartitionedGraph& g, bool parallel) {
    auto comps = connected_components(g.adj);
    int nc = static_cast<int>(comps.size());
    using CompOutcome = std::variant<std::pair<ProbeIntervalModel, ComponentTrace>, Reject>;
    std::vector<std::optional<CompOutcome>> results(nc);
#if defined(PIG_HAVE_OPENMP)
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < nc; i++) results[i] = run_component(g, comps[i]);
    }
#else
    (void)parallel;
#endif
    for (int i = 0; i < nc; i++) {
        if (!results[i]) results[i] = run_component(g, comps[i]);
        if (std::holds_alternative<Reject>(*results[i])) return std::get<Reject>(*results[i]);
    }

    // Concatenate component models in input order; adjacent probe-free
    // columns (isolated non-probes) merge so the whole stays minimal.
    struct GCol {
        std::vector<int> verts, probes;
        ColumnClass cls;
    };
    std::vector<GCol> gcols;
    RecognitionTrace trace;
    for (int i = 0; i < nc; i++) {
        auto& [model, tr] = std::get<0>(*results[i]);
        for (ColId c : model.matrix.cols) {
            GCol gc;
            for (RowId r : model.matrix.col(c)) gc.verts.push_back(comps[i][r]);
            gc.probes = probe_members(g, gc.verts);
            gc.cls = model.col_class[c];
            if (!gcols.empty() && gcols.back().probes == gc.probes)
                gcols.back().verts.insert(gcols.back().verts.end(), gc.verts.begin(),
                                          gc.verts.end());
            else
                gcols.push_back(std::move(gc));
        }
        trace.components.push_back(std::move(tr));
    }
    std::vector<std::vector<ColId>> cells(g.n());
    std::vector<ColumnClass> col_class;
    std::vector<ColId> order;
    for (int j = 0; j < static_cast<int>(gcols.size()); j++) {
        for (int v : gcols[j].verts) cells[v].push_back(j);
        col_class.push_back(gcols[j].cls);
        order.push_back(j);
    }
    std::vector<std::pair<RowId, std::vector<ColId>>> rsets;
    for (int v = 0; v < g.n(); v++) rsets.push_back({v, cells[v]});
    ProbeIntervalModel model{BinaryMatrix::from_row_sets(rsets, order), std::move(col_class)};
    if (!verify_model(g, model.matrix) || !is_normal_model(g, model.matrix))
        return Reject{RejectStage::C1PMNoSolution, "assembled matrix fails final verification"};
    return RecognitionResult{std::move(model), std::move(trace)};
}

bool verify_model(const PartitionedGraph& g, const BinaryMatrix& m) {
    int n = g.n();
    if (m.n_rows() != n) throw InvalidInput("model rows do not match the vertex count");
    for (int v = 0; v < n; v++)
        if (!m.has_row(v)) throw InvalidInput("model is missing a vertex row");
    if (!m.is_c1_ordered()) return false;
    Spans sp(m);
    for (auto [u, v] : g.edges())
        if (sp.lo[u] < 0 || sp.lo[v] < 0 || sp.disjoint(u, v)) return false;
    int C = m.n_cols();
    std::vector<int> sa(C + 1, 0), ea(C + 1, 0), spr(C + 1, 0), epr(C + 1, 0);
    for (int v = 0; v < n; v++) {
        if (sp.lo[v] < 0) continue;
        sa[sp.lo[v]]++;
        ea[sp.hi[v]]++;
        if (g.is_probe[v]) {
            spr[sp.lo[v]]++;
            epr[sp.hi[v]]++;
        }
    }
    for (int t = 1; t <= C; t++) {
        sa[t] += sa[t - 1];
        ea[t] += ea[t - 1];
        spr[t] += spr[t - 1];
        epr[t] += epr[t - 1];
    }
    for (int v = 0; v < n; v++) {
        int deg = static_cast<int>(g.adj[v].size());
        if (sp.lo[v] < 0) {
            if (deg != 0) return false;
            continue;
        }
        int got = g.is_probe[v] ? sa[sp.hi[v]] - (sp.lo[v] > 0 ? ea[sp.lo[v] - 1] : 0) - 1
                                : spr[sp.hi[v]] - (sp.lo[v] > 0 ? epr[sp.lo[v] - 1] : 0);
        if (got != deg) return false;
    }
    return true;
}

bool is_normal_model(const PartitionedGraph& g, const BinaryMatrix& m) {
    int C = m.n_cols();
    Spans sp(m);
    std::vector<char> any_start(C, 0), any_end(C, 0), probe_start(C, 0), probe_end(C, 0);
    for (RowId r : m.rows) {
        if (sp.lo[r] < 0) continue;
        any_start[sp.lo[r]] = any_end[sp.hi[r]] = 1;
        if (r < g.n() && g.is_probe[r]) probe_start[sp.lo[r]] = probe_end[sp.hi[r]] = 1;
    }
    for (RowId r : m.rows) {
        if (sp.lo[r] < 0 || sp.lo[r] == sp.hi[r]) continue;
        bool probe = r < g.n() && g.is_probe[r];
        if (!(probe ? any_end[sp.lo[r]] : probe_end[sp.lo[r]])) return false;
        if (!(probe ? any_start[sp.hi[r]] : probe_start[sp.hi[r]])) return false;
    }
    for (int j = 0; j + 1 < C; j++) {
        const auto& a = m.col(m.cols[j]);
        const auto& b = m.col(m.cols[j + 1]);
        if (sorted_subset(a, b) || sorted_subset(b, a)) return false;
        std::vector<int> pa, pb;
        for (int v : a)
            if (v < g.n() && g.is_probe[v]) pa.push_back(v);
        for (int v : b)
            if (v < g.n() && g.is_probe[v]) pb.push_back(v);
        if (pa == pb) return false;
    }
    return true;
}

}  // namespace pig
