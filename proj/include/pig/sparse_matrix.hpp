#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

namespace pig {

// Stable identities: a row or column keeps its id across submatrix taking and
// column reordering. Ids are small non-negative ints chosen by the creator.
using RowId = int;
using ColId = int;

struct BinaryMatrix {
    std::vector<RowId> rows;  // row order (insertion)
    std::vector<ColId> cols;  // current column order
    std::vector<int> row_pos; // RowId -> index in rows, -1 if absent
    std::vector<int> col_pos; // ColId -> position in cols, -1 if absent
    std::vector<std::vector<ColId>> row_cells;  // by RowId, ascending ColId
    std::vector<std::vector<RowId>> col_cells;  // by ColId, ascending RowId
    std::size_t ones = 0;

    int n_rows() const { return static_cast<int>(rows.size()); }
    int n_cols() const { return static_cast<int>(cols.size()); }
    bool has_row(RowId r) const {
        return r >= 0 && r < static_cast<int>(row_pos.size()) && row_pos[r] >= 0;
    }
    bool has_col(ColId c) const {
        return c >= 0 && c < static_cast<int>(col_pos.size()) && col_pos[c] >= 0;
    }
    const std::vector<ColId>& row(RowId r) const;
    const std::vector<RowId>& col(ColId c) const;
    bool at(RowId r, ColId c) const;

    // Position span of a row's 1s under the current column order.
    struct Span {
        int first = -1, last = -1;  // positions, inclusive; (-1,-1) for empty rows
    };
    Span row_span(RowId r) const;
    bool row_consecutive(RowId r) const;
    bool is_c1_ordered() const;

    // rows: (id, 1-positions) pairs; throws InvalidInput on duplicate ids,
    // duplicate columns, or cells not drawn from column_order.
    static BinaryMatrix from_row_sets(const std::vector<std::pair<RowId, std::vector<ColId>>>& row_sets,
                                      const std::vector<ColId>& column_order);

    // Independent copy restricted to the given rows/columns (null = keep all),
    // preserving ids and the relative order of survivors.
    BinaryMatrix submatrix(const std::vector<RowId>* keep_rows,
                           const std::vector<ColId>* keep_cols) const;

    void reorder_columns(const std::vector<ColId>& new_order);
    void add_row(RowId r, std::vector<ColId> cells);

    bool operator==(const BinaryMatrix& o) const;
};

// Merge helpers over ascending id vectors.
std::vector<int> sorted_intersect(const std::vector<int>& a, const std::vector<int>& b);
std::vector<int> sorted_union(const std::vector<int>& a, const std::vector<int>& b);
bool sorted_subset(const std::vector<int>& sub, const std::vector<int>& sup);
bool sorted_disjoint(const std::vector<int>& a, const std::vector<int>& b);

}  // namespace pig
