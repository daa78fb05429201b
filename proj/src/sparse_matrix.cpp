#include "pig/sparse_matrix.hpp"

#include "pig/errors.hpp"

namespace pig {

namespace {
const std::vector<int> kEmpty;

void grow_to(std::vector<int>& v, int id) {
    if (id >= static_cast<int>(v.size())) v.resize(id + 1, -1);
}
template <class T>
void grow_cells(std::vector<std::vector<T>>& v, int id) {
    if (id >= static_cast<int>(v.size())) v.resize(id + 1);
}
}  // namespace

const std::vector<ColId>& BinaryMatrix::row(RowId r) const {
    if (!has_row(r)) throw InvalidInput("no such row");
    return row_cells[r];
}

const std::vector<RowId>& BinaryMatrix::col(ColId c) const {
    if (!has_col(c)) throw InvalidInput("no such column");
    return col_cells[c];
}

bool BinaryMatrix::at(RowId r, ColId c) const {
    if (!has_row(r) || !has_col(c)) throw InvalidInput("cell out of matrix");
    const auto& cells = row_cells[r];
    return std::binary_search(cells.begin(), cells.end(), c);
}

BinaryMatrix::Span BinaryMatrix::row_span(RowId r) const {
    const auto& cells = row(r);
    Span s;
    for (ColId c : cells) {
        int p = col_pos[c];
        if (s.first < 0 || p < s.first) s.first = p;
        if (p > s.last) s.last = p;
    }
    return s;
}

bool BinaryMatrix::row_consecutive(RowId r) const {
    const auto& cells = row(r);
    if (cells.empty()) return true;
    Span s = row_span(r);
    return s.last - s.first + 1 == static_cast<int>(cells.size());
}

bool BinaryMatrix::is_c1_ordered() const {
    for (RowId r : rows)
        if (!row_consecutive(r)) return false;
    return true;
}

BinaryMatrix BinaryMatrix::from_row_sets(
    const std::vector<std::pair<RowId, std::vector<ColId>>>& row_sets,
    const std::vector<ColId>& column_order) {
    BinaryMatrix m;
    for (ColId c : column_order) {
        if (c < 0) throw InvalidInput("negative column id");
        grow_to(m.col_pos, c);
        if (m.col_pos[c] >= 0) throw InvalidInput("duplicate column in order");
        m.col_pos[c] = static_cast<int>(m.cols.size());
        m.cols.push_back(c);
    }
    grow_cells(m.col_cells, m.col_pos.empty() ? -1 : static_cast<int>(m.col_pos.size()) - 1);
    for (const auto& [r, cells] : row_sets) m.add_row(r, cells);
    return m;
}

void BinaryMatrix::add_row(RowId r, std::vector<ColId> cells) {
    if (r < 0) throw InvalidInput("negative row id");
    grow_to(row_pos, r);
    if (row_pos[r] >= 0) throw InvalidInput("duplicate row id");
    std::sort(cells.begin(), cells.end());
    for (std::size_t i = 0; i < cells.size(); i++) {
        if (!has_col(cells[i])) throw InvalidInput("row cell not among columns");
        if (i > 0 && cells[i] == cells[i - 1]) throw InvalidInput("duplicate cell in row");
    }
    row_pos[r] = static_cast<int>(rows.size());
    rows.push_back(r);
    grow_cells(row_cells, r);
    ones += cells.size();
    for (ColId c : cells) col_cells[c].push_back(r);
    row_cells[r] = std::move(cells);
    // col_cells stay ascending because ids are added in increasing insertion
    // order only when callers use increasing row ids; enforce generally:
    for (ColId c : row_cells[r]) {
        auto& v = col_cells[c];
        if (v.size() >= 2 && v[v.size() - 2] > v.back()) {
            RowId x = v.back();
            v.pop_back();
            v.insert(std::upper_bound(v.begin(), v.end(), x), x);
        }
    }
}

BinaryMatrix BinaryMatrix::submatrix(const std::vector<RowId>* keep_rows,
                                     const std::vector<ColId>* keep_cols) const {
    std::vector<char> rk, ck;
    if (keep_rows) {
        rk.assign(row_pos.size(), 0);
        for (RowId r : *keep_rows) {
            if (!has_row(r)) throw InvalidInput("submatrix: unknown row");
            rk[r] = 1;
        }
    }
    if (keep_cols) {
        ck.assign(col_pos.size(), 0);
        for (ColId c : *keep_cols) {
            if (!has_col(c)) throw InvalidInput("submatrix: unknown column");
            ck[c] = 1;
        }
    }
    std::vector<ColId> order;
    for (ColId c : cols)
        if (!keep_cols || ck[c]) order.push_back(c);
    std::vector<std::pair<RowId, std::vector<ColId>>> rs;
    for (RowId r : rows) {
        if (keep_rows && !rk[r]) continue;
        std::vector<ColId> cells;
        for (ColId c : row_cells[r])
            if (!keep_cols || ck[c]) cells.push_back(c);
        rs.push_back({r, std::move(cells)});
    }
    return from_row_sets(rs, order);
}

void BinaryMatrix::reorder_columns(const std::vector<ColId>& new_order) {
    if (new_order.size() != cols.size()) throw InvalidInput("reorder: wrong column count");
    std::vector<char> seen(col_pos.size(), 0);
    for (ColId c : new_order) {
        if (!has_col(c) || seen[c]) throw InvalidInput("reorder: not a permutation of columns");
        seen[c] = 1;
    }
    cols = new_order;
    for (std::size_t p = 0; p < cols.size(); p++) col_pos[cols[p]] = static_cast<int>(p);
}

bool BinaryMatrix::operator==(const BinaryMatrix& o) const {
    if (rows != o.rows || cols != o.cols) return false;
    for (RowId r : rows)
        if (row_cells[r] != o.row_cells[r]) return false;
    return true;
}

std::vector<int> sorted_intersect(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::vector<int> sorted_union(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool sorted_subset(const std::vector<int>& sub, const std::vector<int>& sup) {
    return std::includes(sup.begin(), sup.end(), sub.begin(), sub.end());
}

bool sorted_disjoint(const std::vector<int>& a, const std::vector<int>& b) {
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j)
            ++i;
        else if (*j < *i)
            ++j;
        else
            return false;
    }
    return true;
}

}  // namespace pig
