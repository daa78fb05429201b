#pragma once

#include <optional>
#include <vector>

#include "pig/pq_tree.hpp"
#include "pig/sparse_matrix.hpp"

namespace pig {

// A partial binary matrix (entries 0/1/unknown) given by its fully-known
// pieces: M_R holds the rows without unknowns (over all columns), M_C holds
// the columns without unknowns (over all rows).
struct C1PMInstance {
    BinaryMatrix M_R;
    BinaryMatrix M_C;
    std::vector<RowId> R;  // row ids of M_R
    std::vector<ColId> C;  // column ids of M_C
};

// Throws InvalidInput unless: R = rows(M_R), C = cols(M_C), C is a subset of
// cols(M_R), R is a subset of rows(M_C), and M_C agrees with M_R on R x C.
void validate_instance(const C1PMInstance& inst);

struct C1PMSolution {
    std::vector<ColId> pi;   // ordering of all of M_R's columns
    std::vector<ColId> tau;  // the ordering of C that steered pi
    // Taut blocks: inclusive position ranges under pi; (-1,-1) = empty row.
    // A row in R spans its M_R 1s, any other row spans its M_C 1s (unknowns
    // caught between two 1s are promoted to 1).
    std::vector<RowId> row_ids;                // rows of M_C, in stored order
    std::vector<BinaryMatrix::Span> spans;     // parallel to row_ids
    std::vector<int> span_of;                  // RowId -> index, -1 if absent
    PQTree T1;  // orderings keeping M_C consecutive
    PQTree T2;  // orderings keeping M_R consecutive
    PQTree T3;  // T2 restricted to C
    PQTree T4;  // intersection of T1 and T3
};

// Finds a column ordering pi such that M_R is consecutive-ones ordered under
// pi and M_C is consecutive-ones ordered under pi restricted to C; nullopt
// when none exists. Deterministic: tau is the canonical ordering of T4 and
// ties in T2 are broken by leaf ids.
std::optional<C1PMSolution> solve(const C1PMInstance& inst);

// Bit of the taut matrix at (row, position under sol.pi); O(1).
bool taut_lookup(const C1PMSolution& sol, RowId row, int position);

// True when sol.pi is the only solution up to full reversal.
bool is_unique(const C1PMInstance& inst, const C1PMSolution& sol);

}  // namespace pig
