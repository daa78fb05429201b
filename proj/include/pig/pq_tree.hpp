#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "pig/sparse_matrix.hpp"

namespace pig {

// P children permute freely, Q children are fixed up to reversal, Both marks
// two-child internal nodes (which behave as either), Leaf carries a column.
enum class PQKind : std::uint8_t { Leaf, P, Q, Both };

struct PQNode {
    PQKind kind = PQKind::Leaf;
    ColId leaf_col = -1;
    PQNode* parent = nullptr;
    PQNode* first = nullptr;
    PQNode* last = nullptr;
    PQNode* prev = nullptr;
    PQNode* next = nullptr;
    int nkids = 0;

    // per-reduction scratch, valid only while stamp matches the tree's
    std::uint32_t stamp = 0;
    std::uint8_t label = 0;
    bool full_at_tail = false;
    int region = -1;
    std::uint32_t mkids_stamp = 0;
    std::vector<PQNode*> mkids;
};

// Encodes the set Pi(T) of leaf orderings. Value type: copyable, comparable
// for equivalence (same Pi).
class PQTree {
  public:
    PQTree() = default;
    PQTree(const PQTree& o) { *this = o; }
    PQTree& operator=(const PQTree& o);
    PQTree(PQTree&&) = default;
    PQTree& operator=(PQTree&&) = default;

    // Tree of all consecutive-ones orderings of m; nullopt when none exists.
    static std::optional<PQTree> build(const BinaryMatrix& m);
    // Unconstrained tree over the given columns.
    static PQTree universal(const std::vector<ColId>& leaf_cols);

    int n_leaves() const { return static_cast<int>(leaf_cols_.size()); }
    const std::vector<ColId>& leaves() const { return leaf_cols_; }  // ascending
    bool has_leaf(ColId c) const {
        return c >= 0 && c < static_cast<int>(leaf_of_.size()) && leaf_of_[c];
    }
    std::vector<ColId> frontier() const;
    const PQNode* root() const { return root_; }
    PQKind leaf_parent_kind(ColId c) const;
    int internal_node_count() const;

    // Constrain the leaves of s to be consecutive; false = impossible (the
    // tree is left unusable).
    bool reduce(const std::vector<ColId>& s);

    bool is_valid_ordering(const std::vector<ColId>& pi) const;
    PQTree restricted(const std::vector<ColId>& keep) const;
    BinaryMatrix canonical_matrix() const;
    static std::optional<PQTree> intersect(const PQTree& a, const PQTree& b);
    std::vector<std::vector<ColId>> enumerate_orderings(int leaf_bound = 8) const;

    std::string canonical_string() const;
    static bool equivalent(const PQTree& a, const PQTree& b);

    // Reorder children in place given leaf labels (-1 = unlabeled): P/Both
    // children ascend by min labeled descendant, unlabeled ones after in
    // min-leaf-id order; Q nodes flip when their labeled ends descend.
    void reorder_by_leaf_labels(const std::vector<int>& label_of_col);
    struct LabelStats {
        bool p_with_unlabeled_child = false;
        bool q_with_lt2_labeled = false;
    };
    LabelStats label_stats(const std::vector<int>& label_of_col) const;

    void validate_structure() const;  // throws std::logic_error on corruption

  private:
    std::deque<PQNode> arena_;
    PQNode* root_ = nullptr;
    std::vector<PQNode*> leaf_of_;
    std::vector<ColId> leaf_cols_;
    std::uint32_t stamp_ = 0;

    PQNode* new_node(PQKind k);
    PQNode* make_leaf(ColId c);
    void replace_in_tree(PQNode* oldn, PQNode* newn);
    PQNode* find_pertinent_root(const std::vector<ColId>& s);
    bool apply_templates(PQNode* pert_root);
    std::pair<PQNode*, std::uint8_t> apply_one(PQNode* x,
                                               std::vector<std::pair<PQNode*, std::uint8_t>>& rs,
                                               bool is_root);
    std::pair<PQNode*, std::uint8_t> apply_p(PQNode* x, std::vector<PQNode*>& fulls, int f, int p,
                                             PQNode* z1, PQNode* z2, int e, bool is_root);
    std::pair<PQNode*, std::uint8_t> apply_q(PQNode* x, int f, int p, PQNode* z1, PQNode* z2,
                                             bool is_root);
    PQNode* bundle(std::vector<PQNode*>& fulls);
    void splice_partial(PQNode* x, PQNode* z, bool full_toward_head);
    void absorb_partial(PQNode* z1, PQNode* z2);
    bool is_full(const PQNode* n) const { return n && n->stamp == stamp_ && n->label == 1; }
};

}  // namespace pig
