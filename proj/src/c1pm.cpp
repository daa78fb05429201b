#include "pig/c1pm.hpp"

#include <algorithm>
#include <utility>

#include "pig/errors.hpp"

namespace pig {

namespace {

std::vector<int> sorted_copy(const std::vector<int>& v) {
    std::vector<int> s = v;
    std::sort(s.begin(), s.end());
    return s;
}

int table_size(const std::vector<ColId>& cols) {
    int sz = 0;
    for (ColId c : cols) sz = std::max(sz, c + 1);
    return sz;
}

bool single_internal_q(const PQTree& t) {
    return t.internal_node_count() == 1 && t.root() && t.root()->kind == PQKind::Q;
}

std::vector<int> tau_labels(const C1PMSolution& sol, int sz) {
    std::vector<int> lab(sz, -1);
    for (int i = 0; i < static_cast<int>(sol.tau.size()); i++) lab[sol.tau[i]] = i;
    return lab;
}

}  // namespace

void validate_instance(const C1PMInstance& inst) {
    if (sorted_copy(inst.R) != sorted_copy(inst.M_R.rows))
        throw InvalidInput("c1pm: R does not match the rows of M_R");
    if (sorted_copy(inst.C) != sorted_copy(inst.M_C.cols))
        throw InvalidInput("c1pm: C does not match the columns of M_C");
    for (ColId c : inst.C)
        if (!inst.M_R.has_col(c)) throw InvalidInput("c1pm: C has a column missing from M_R");
    for (RowId r : inst.R)
        if (!inst.M_C.has_row(r)) throw InvalidInput("c1pm: R has a row missing from M_C");
    std::vector<ColId> cs = sorted_copy(inst.C);
    for (RowId r : inst.R)
        if (sorted_intersect(inst.M_R.row_cells[r], cs) != inst.M_C.row_cells[r])
            throw InvalidInput("c1pm: M_R and M_C disagree on a known row");
}

std::optional<C1PMSolution> solve(const C1PMInstance& inst) {
    validate_instance(inst);

    std::optional<PQTree> t1 = PQTree::build(inst.M_C);
    if (!t1) return std::nullopt;
    std::optional<PQTree> t2 = PQTree::build(inst.M_R);
    if (!t2) return std::nullopt;

    C1PMSolution sol;
    sol.T1 = std::move(*t1);
    sol.T2 = std::move(*t2);
    if (inst.C.empty()) {
        sol.T3 = PQTree::universal({});
        sol.T4 = PQTree::universal({});
    } else {
        sol.T3 = sol.T2.restricted(inst.C);
        std::optional<PQTree> t4 = PQTree::intersect(sol.T1, sol.T3);
        if (!t4) return std::nullopt;
        sol.T4 = std::move(*t4);
    }

    // tau: canonical ordering of T4 (P children by leaf id, Q kept as stored)
    int colsz = table_size(inst.M_R.cols);
    sol.T4.reorder_by_leaf_labels(std::vector<int>(colsz, -1));
    sol.tau = sol.T4.frontier();

    // steer T2: number its C leaves by tau and sort/orient accordingly
    std::vector<int> lab(colsz, -1);
    for (int i = 0; i < static_cast<int>(sol.tau.size()); i++) lab[sol.tau[i]] = i;
    sol.T2.reorder_by_leaf_labels(lab);
    sol.pi = sol.T2.frontier();

    std::vector<int> pos(colsz, -1);
    for (int i = 0; i < static_cast<int>(sol.pi.size()); i++) pos[sol.pi[i]] = i;

    std::vector<char> in_r(inst.M_C.row_pos.size(), 0);
    for (RowId r : inst.R)
        if (r < static_cast<int>(in_r.size())) in_r[r] = 1;

    sol.row_ids = inst.M_C.rows;
    sol.spans.reserve(sol.row_ids.size());
    sol.span_of.assign(inst.M_C.row_pos.size(), -1);
    for (int idx = 0; idx < static_cast<int>(sol.row_ids.size()); idx++) {
        RowId r = sol.row_ids[idx];
        sol.span_of[r] = idx;
        const std::vector<ColId>& cells = in_r[r] ? inst.M_R.row_cells[r] : inst.M_C.row_cells[r];
        BinaryMatrix::Span sp;
        for (ColId c : cells) {
            int p = pos[c];
            if (sp.first < 0 || p < sp.first) sp.first = p;
            if (p > sp.last) sp.last = p;
        }
        sol.spans.push_back(sp);
    }
    return sol;
}

bool taut_lookup(const C1PMSolution& sol, RowId row, int position) {
    if (row < 0 || row >= static_cast<int>(sol.span_of.size()) || sol.span_of[row] < 0)
        throw InvalidInput("taut_lookup: unknown row");
    if (position < 0 || position >= static_cast<int>(sol.pi.size()))
        throw InvalidInput("taut_lookup: position out of range");
    const BinaryMatrix::Span& sp = sol.spans[sol.span_of[row]];
    return sp.first >= 0 && sp.first <= position && position <= sp.last;
}

bool is_unique(const C1PMInstance& inst, const C1PMSolution& sol) {
    if (inst.M_R.n_cols() <= 2) return true;
    if (single_internal_q(sol.T2)) return true;
    if (inst.M_C.n_cols() >= 3 && !single_internal_q(sol.T4)) return false;
    PQTree::LabelStats stats = sol.T2.label_stats(tau_labels(sol, table_size(inst.M_R.cols)));
    if (stats.p_with_unlabeled_child) return false;
    if (stats.q_with_lt2_labeled) return false;
    return true;
}

}  // namespace pig
