#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pig/c1pm.hpp"
#include "pig/graph.hpp"
#include "pig/pq_tree.hpp"
#include "pig/sparse_matrix.hpp"

namespace pig {

// Non-probe classes: N1 has at least one clique of G[P] inside its
// neighborhood, N2 has none, NS is simplicial (complete neighborhood).
enum class NonProbeClass : std::uint8_t { N1, N2, NS };

struct NonProbeClassification {
    std::vector<NonProbeClass> cls;     // by vertex id; meaningful for non-probes
    std::vector<std::vector<ColId>> Q;  // by vertex id: for a non-probe the cliques
                                        // inside N(v), for a probe the cliques holding v
    std::vector<int> rank;              // by vertex id: probes, then N1+N2, then NS,
                                        // input order within each block
    std::vector<int> n1, n2, ns;        // non-probe ids per class, input order
};

enum class RejectStage : std::uint8_t {
    NotChordal,
    NotIntervalGP,
    MkPlusNotC1P,
    BindingStructure,
    ConstraintsNotC1P,
    ChainStructure,
    C1PMNoSolution,
};
const char* to_string(RejectStage s);

struct Reject {
    RejectStage stage;
    std::string detail;
};

enum class ColumnClass : std::uint8_t { Clique, SemiClique, Simplicial };
const char* to_string(ColumnClass c);

// Consecutive-ones ordered matrix with one row per vertex plus a class per
// column. Accepted outputs are normal: taut, minimal, at most n columns.
struct ProbeIntervalModel {
    BinaryMatrix matrix;
    std::vector<ColumnClass> col_class;  // by ColId
};

// One consecutiveness requirement Q(u) + Q(v) between two vertices whose
// clique sets are disjoint but which must meet in the final model.
struct ConstraintPair {
    enum class Kind : std::uint8_t { NpP, PP };
    Kind kind;
    int u = -1, v = -1;       // u < v
    std::vector<ColId> row;   // Q(u) + Q(v), ascending
};

struct BindingPairs {
    std::vector<ConstraintPair> representatives;
    // Every bound pair, representative or not (u < v). All of them end up
    // consecutive once the representative rows are enforced.
    std::vector<std::pair<int, int>> all_bound;
};

// Per gap between consecutive retained columns: who stretches into it and the
// probe-set chains of the inserted columns.
struct GapFill {
    int gap = -1;                              // between column positions gap, gap+1
    std::vector<int> W, X, Y, Z;               // vertex ids
    std::vector<std::vector<int>> descending;  // probe sets adjoining the left column
    std::vector<std::vector<int>> ascending;   // probe sets adjoining the right column
    std::vector<ColId> new_cols;               // inserted column ids, left to right
};

struct SemiCliqueInsertion {
    BinaryMatrix m_n;
    std::vector<GapFill> gaps;
};

struct SimplicialColumns {
    BinaryMatrix m_p;
    std::vector<std::vector<int>> new_sets;        // fresh simplicial neighborhoods, in order added
    std::vector<std::pair<int, ColId>> placement;  // simplicial non-probe -> its column
};

// Everything one connected component's pipeline produced, kept for the
// uniqueness decision and for tests. Vertex ids are component-local (index
// into `vertices`).
struct ComponentTrace {
    std::vector<int> vertices;  // global ids, ascending
    bool degenerate = false;    // single-vertex component, pipeline skipped
    NonProbeClassification cls;
    BinaryMatrix m_k, m_k_plus, m_k_prime, m_k_star, m_n, m_p;
    BindingPairs pairs;
    std::vector<GapFill> gaps;
    std::vector<std::vector<int>> s_sets;          // probe sets of fresh simplicial columns
    std::vector<std::pair<int, ColId>> ns_column;  // simplicial non-probe -> column of m_p
    std::optional<C1PMSolution> c1pm;
    std::vector<ColumnClass> col_class;  // by component ColId
    int n_cols = 0;                      // columns of this component's model
};

struct RecognitionTrace {
    std::vector<ComponentTrace> components;
};

struct RecognitionResult {
    ProbeIntervalModel model;
    RecognitionTrace trace;
};

using RecognizeOutcome = std::variant<RecognitionResult, Reject>;

// --- pipeline stages (connected graphs, exposed for tests) ---

// Clique matrix of G[P] in a consecutive-ones order, rows keyed by vertex id.
// Rejects with NotChordal / NotIntervalGP.
std::variant<BinaryMatrix, Reject> interval_cliques(const PartitionedGraph& g);

// Endpoint sweep over each non-probe's neighbor intervals in m_k; fills Q,
// classes and ranks.
NonProbeClassification classify_nonprobes(const PartitionedGraph& g, const BinaryMatrix& m_k);

// m_k plus one row per N1/N2 vertex holding Q(x) (empty for N2), brought into
// a consecutive-ones order. Rejects with MkPlusNotC1P.
std::variant<BinaryMatrix, Reject> build_mk_plus(const PartitionedGraph& g, const BinaryMatrix& m_k,
                                                 const NonProbeClassification& cls);

// Representative bound pairs: for each vertex the unfulfilled neighbors must
// split into at most two containment chains; mutually minimal ends pair up.
// Rejects with BindingStructure.
std::variant<BindingPairs, Reject> representative_pairs(const PartitionedGraph& g,
                                                        const BinaryMatrix& m_k_plus,
                                                        const NonProbeClassification& cls);

// Adds one row per representative pair, reorders, then drops those rows.
// first = ordered matrix with constraint rows, second = same order without
// them. Rejects with ConstraintsNotC1P.
std::variant<std::pair<BinaryMatrix, BinaryMatrix>, Reject> order_with_constraints(
    const PartitionedGraph& g, const BinaryMatrix& m_k_plus, const BindingPairs& pairs);

// Inserts the uniquely determined columns into each gap of m_k_star and fills
// the stretching rows; checks the resulting matrix represents G minus its
// simplicial non-probes. Rejects with ChainStructure.
std::variant<SemiCliqueInsertion, Reject> insert_semicliques(const PartitionedGraph& g,
                                                             const BinaryMatrix& m_k_star,
                                                             const NonProbeClassification& cls);

// Probe rows of m_n plus one fresh column per simplicial neighborhood not
// already present as a column probe set; records every placement.
SimplicialColumns build_mp(const PartitionedGraph& g, const BinaryMatrix& m_n,
                           const NonProbeClassification& cls);

// Solves the partial-matrix ordering problem (m_p known rows, m_n known
// columns), materializes the taut matrix, houses the simplicial non-probes
// and classifies columns. Rejects with C1PMNoSolution.
std::variant<RecognitionResult, Reject> assemble_model(const PartitionedGraph& g,
                                                       const SimplicialColumns& mp,
                                                       const BinaryMatrix& m_n,
                                                       const NonProbeClassification& cls,
                                                       ComponentTrace&& partial);

// --- whole-graph entry points ---

// Runs the pipeline per connected component and concatenates the component
// models in input order (adjacent probe-free columns merge so the result
// stays minimal). With parallel=true components run under OpenMP when built
// with it; results are identical to the serial run.
RecognizeOutcome recognize(const PartitionedGraph& g, bool parallel = false);

// True iff m is consecutive-ones ordered and represents exactly the edges of
// g: rows share a column with a probe among them iff adjacent. Throws
// InvalidInput when rows and vertices disagree.
bool verify_model(const PartitionedGraph& g, const BinaryMatrix& m);

// True iff every endpoint is taut (some row ends where an interval starts,
// with a probe witness for non-probe endpoints) and no two consecutive
// columns can merge. Callers ensure verify_model holds first.
bool is_normal_model(const PartitionedGraph& g, const BinaryMatrix& m);

}  // namespace pig
