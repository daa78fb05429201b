#include "pig/pq_tree.hpp"

#include <algorithm>
#include <stdexcept>

#include "pig/errors.hpp"

namespace pig {

namespace {

constexpr std::uint8_t kEmpty = 0, kFull = 1, kPartial = 2;

void detach_child(PQNode* c) {
    PQNode* p = c->parent;
    if (c->prev)
        c->prev->next = c->next;
    else if (p)
        p->first = c->next;
    if (c->next)
        c->next->prev = c->prev;
    else if (p)
        p->last = c->prev;
    if (p) p->nkids--;
    c->parent = nullptr;
    c->prev = nullptr;
    c->next = nullptr;
}

void append_child(PQNode* p, PQNode* c) {
    c->parent = p;
    c->prev = p->last;
    c->next = nullptr;
    if (p->last)
        p->last->next = c;
    else
        p->first = c;
    p->last = c;
    p->nkids++;
}

void prepend_child(PQNode* p, PQNode* c) {
    c->parent = p;
    c->next = p->first;
    c->prev = nullptr;
    if (p->first)
        p->first->prev = c;
    else
        p->last = c;
    p->first = c;
    p->nkids++;
}

// Reverse the sibling chain h..t in place; h and t are swapped by the caller.
void reverse_chain(PQNode*& h, PQNode*& t) {
    PQNode* cur = h;
    while (cur) {
        PQNode* nx = cur->next;
        cur->next = cur->prev;
        cur->prev = nx;
        cur = nx;
    }
    std::swap(h, t);
}

void attach_at_end(PQNode* z, PQNode* c, bool at_tail) {
    if (at_tail)
        append_child(z, c);
    else
        prepend_child(z, c);
}

}  // namespace

PQTree& PQTree::operator=(const PQTree& o) {
    if (this == &o) return *this;
    arena_.clear();
    root_ = nullptr;
    leaf_of_.assign(o.leaf_of_.size(), nullptr);
    leaf_cols_ = o.leaf_cols_;
    stamp_ = 0;
    if (!o.root_) return *this;
    // preorder clone
    std::vector<std::pair<const PQNode*, PQNode*>> st;  // (old, new parent)
    st.push_back({o.root_, nullptr});
    while (!st.empty()) {
        auto [on, np] = st.back();
        st.pop_back();
        PQNode* nn = new_node(on->kind);
        nn->leaf_col = on->leaf_col;
        if (np)
            append_child(np, nn);
        else
            root_ = nn;
        if (on->kind == PQKind::Leaf) leaf_of_[on->leaf_col] = nn;
        // push children reversed so the first child is cloned first
        std::vector<const PQNode*> kids;
        for (const PQNode* c = on->first; c; c = c->next) kids.push_back(c);
        for (auto it = kids.rbegin(); it != kids.rend(); ++it) st.push_back({*it, nn});
    }
    return *this;
}

PQNode* PQTree::new_node(PQKind k) {
    arena_.emplace_back();
    PQNode* n = &arena_.back();
    n->kind = k;
    return n;
}

PQNode* PQTree::make_leaf(ColId c) {
    PQNode* n = new_node(PQKind::Leaf);
    n->leaf_col = c;
    if (c >= static_cast<int>(leaf_of_.size())) leaf_of_.resize(c + 1, nullptr);
    if (leaf_of_[c]) throw InvalidInput("duplicate leaf column");
    leaf_of_[c] = n;
    leaf_cols_.push_back(c);
    return n;
}

PQTree PQTree::universal(const std::vector<ColId>& leaf_cols) {
    PQTree t;
    for (ColId c : leaf_cols)
        if (c < 0) throw InvalidInput("negative column id");
    if (leaf_cols.empty()) return t;
    if (leaf_cols.size() == 1) {
        t.root_ = t.make_leaf(leaf_cols[0]);
    } else {
        t.root_ = t.new_node(leaf_cols.size() == 2 ? PQKind::Both : PQKind::P);
        for (ColId c : leaf_cols) append_child(t.root_, t.make_leaf(c));
    }
    std::sort(t.leaf_cols_.begin(), t.leaf_cols_.end());
    return t;
}

std::optional<PQTree> PQTree::build(const BinaryMatrix& m) {
    PQTree t = universal(m.cols);
    for (RowId r : m.rows)
        if (!t.reduce(m.row_cells[r])) return std::nullopt;
    return t;
}

void PQTree::replace_in_tree(PQNode* oldn, PQNode* newn) {
    if (oldn == root_) {
        root_ = newn;
        newn->parent = nullptr;
        newn->prev = newn->next = nullptr;
        return;
    }
    PQNode* p = oldn->parent;
    newn->parent = p;
    newn->prev = oldn->prev;
    newn->next = oldn->next;
    if (oldn->prev)
        oldn->prev->next = newn;
    else
        p->first = newn;
    if (oldn->next)
        oldn->next->prev = newn;
    else
        p->last = newn;
    oldn->parent = nullptr;
    oldn->prev = oldn->next = nullptr;
}

PQNode* PQTree::find_pertinent_root(const std::vector<ColId>& s) {
    // Round-robin upward climb: every pertinent leaf advances one parent step
    // per turn; regions merge when a head enters an already-stamped node. The
    // fair interleaving bounds the overshoot above the LCA by the pertinent
    // subtree size. Each climb step registers the child in parent->mkids, so
    // afterwards the pertinent subtree is reachable top-down.
    std::deque<PQNode*> q;
    const int k = static_cast<int>(s.size());
    std::vector<int> uf(k);
    std::vector<PQNode*> top(k);
    for (int i = 0; i < k; i++) {
        if (!has_leaf(s[i])) throw InvalidInput("reduce: unknown column");
        PQNode* leaf = leaf_of_[s[i]];
        if (leaf->stamp == stamp_) throw InvalidInput("reduce: duplicate column");
        leaf->stamp = stamp_;
        leaf->label = kEmpty;
        leaf->region = i;
        uf[i] = i;
        top[i] = leaf;
        q.push_back(leaf);
    }
    auto find = [&](int x) {
        while (uf[x] != x) {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        return x;
    };
    int active = k;
    while (active > 1) {
        if (q.empty()) throw std::logic_error("pq climb: queue exhausted");
        PQNode* v = q.front();
        q.pop_front();
        PQNode* p = v->parent;
        if (!p) continue;  // ran off the tree root; at most one head does
        if (p->mkids_stamp != stamp_) {
            p->mkids_stamp = stamp_;
            p->mkids.clear();
        }
        p->mkids.push_back(v);
        int rv = find(v->region);
        if (p->stamp == stamp_) {
            int rp = find(p->region);
            if (rp != rv) {
                uf[rv] = rp;
                active--;
            }
        } else {
            p->stamp = stamp_;
            p->label = kEmpty;
            p->region = rv;
            top[rv] = p;
            q.push_back(p);
        }
    }
    // descend from the highest stamped node to the first branching one
    PQNode* t = top[find(0)];
    while (true) {
        int mc = (t->mkids_stamp == stamp_) ? static_cast<int>(t->mkids.size()) : 0;
        if (mc >= 2) return t;
        if (mc != 1) throw std::logic_error("pq climb: lost pertinent root");
        t = t->mkids[0];
    }
}

bool PQTree::reduce(const std::vector<ColId>& s) {
    if (static_cast<int>(s.size()) <= 1) {
        for (ColId c : s)
            if (!has_leaf(c)) throw InvalidInput("reduce: unknown column");
        return true;
    }
    stamp_++;
    PQNode* pr = find_pertinent_root(s);
    return apply_templates(pr);
}

bool PQTree::apply_templates(PQNode* pert_root) {
    struct Frame {
        PQNode* node;
        std::vector<PQNode*> kids;
        std::vector<std::pair<PQNode*, std::uint8_t>> results;
        std::size_t next = 0;
    };
    std::vector<Frame> st;
    auto push_frame = [&](PQNode* n) {
        Frame f;
        f.node = n;
        if (n->mkids_stamp == stamp_) f.kids = n->mkids;
        st.push_back(std::move(f));
    };
    push_frame(pert_root);
    while (!st.empty()) {
        Frame& f = st.back();
        if (f.next < f.kids.size()) {
            push_frame(f.kids[f.next++]);
            continue;
        }
        auto res = apply_one(f.node, f.results, f.node == pert_root);
        if (!res.first) return false;
        st.pop_back();
        if (!st.empty()) st.back().results.push_back(res);
    }
    return true;
}

std::pair<PQNode*, std::uint8_t> PQTree::apply_one(
    PQNode* x, std::vector<std::pair<PQNode*, std::uint8_t>>& rs, bool is_root) {
    if (x->kind == PQKind::Leaf) {
        x->label = kFull;
        return {x, kFull};
    }
    int f = 0, p = 0;
    PQNode *z1 = nullptr, *z2 = nullptr;
    std::vector<PQNode*> fulls;
    for (auto& [n, lab] : rs) {
        if (lab == kFull) {
            f++;
            fulls.push_back(n);
        } else {
            p++;
            if (!z1)
                z1 = n;
            else if (!z2)
                z2 = n;
            else
                return {nullptr, 0};
        }
    }
    int e = x->nkids - f - p;
    if (p == 0 && e == 0) {  // every child full
        x->label = kFull;
        return {x, kFull};
    }
    if (x->kind == PQKind::Q) return apply_q(x, f, p, z1, z2, is_root);
    return apply_p(x, fulls, f, p, z1, z2, e, is_root);
}

PQNode* PQTree::bundle(std::vector<PQNode*>& fulls) {
    PQNode* b = new_node(fulls.size() == 2 ? PQKind::Both : PQKind::P);
    for (PQNode* c : fulls) append_child(b, c);
    b->stamp = stamp_;
    b->label = kFull;
    return b;
}

std::pair<PQNode*, std::uint8_t> PQTree::apply_p(PQNode* x, std::vector<PQNode*>& fulls, int f,
                                                 int p, PQNode* z1, PQNode* z2, int e,
                                                 bool is_root) {
    auto detach_fulls = [&]() -> PQNode* {
        if (f == 0) return nullptr;
        for (PQNode* c : fulls) detach_child(c);
        return f == 1 ? fulls[0] : bundle(fulls);
    };
    auto promote_partial = [&](PQNode* z) { z->kind = z->nkids >= 3 ? PQKind::Q : PQKind::Both; };
    auto demote_two = [&](PQNode* n) {
        if (n->kind == PQKind::P && n->nkids == 2) n->kind = PQKind::Both;
    };

    if (p == 0) {
        if (is_root) {
            if (f >= 2) {
                PQNode* b = detach_fulls();
                append_child(x, b);
            }
            demote_two(x);
            return {x, kEmpty};
        }
        // non-root, some empties, some fulls: become a partial [empties, fulls]
        PQNode* full_part = detach_fulls();
        PQNode* zn;
        if (e == 1) {
            zn = x;  // reuse x, its single remaining child is the empty side
            append_child(x, full_part);
            x->kind = PQKind::Both;
        } else {
            zn = new_node(PQKind::Both);
            replace_in_tree(x, zn);
            x->kind = e == 2 ? PQKind::Both : PQKind::P;
            append_child(zn, x);
            append_child(zn, full_part);
        }
        zn->stamp = stamp_;
        zn->label = kPartial;
        zn->full_at_tail = true;
        return {zn, kPartial};
    }
    if (p == 1) {
        if (is_root) {
            PQNode* fp = detach_fulls();
            if (fp) {
                attach_at_end(z1, fp, z1->full_at_tail);
                promote_partial(z1);
            }
            if (x->nkids == 1) {
                detach_child(z1);
                replace_in_tree(x, z1);
                return {z1, kEmpty};
            }
            demote_two(x);
            return {x, kEmpty};
        }
        PQNode* fp = detach_fulls();
        detach_child(z1);
        PQNode* ep = nullptr;
        if (e == 1) {
            ep = x->first;
            detach_child(ep);
            replace_in_tree(x, z1);
        } else if (e >= 2) {
            replace_in_tree(x, z1);
            ep = x;
            x->kind = e == 2 ? PQKind::Both : PQKind::P;
        } else {
            replace_in_tree(x, z1);
        }
        if (ep) attach_at_end(z1, ep, !z1->full_at_tail);
        if (fp) attach_at_end(z1, fp, z1->full_at_tail);
        promote_partial(z1);
        z1->stamp = stamp_;
        z1->label = kPartial;
        return {z1, kPartial};
    }
    if (p == 2 && is_root) {
        PQNode* fp = detach_fulls();
        if (fp) attach_at_end(z1, fp, z1->full_at_tail);
        detach_child(z2);
        absorb_partial(z1, z2);
        promote_partial(z1);
        if (x->nkids == 1) {
            detach_child(z1);
            replace_in_tree(x, z1);
            return {z1, kEmpty};
        }
        demote_two(x);
        return {x, kEmpty};
    }
    return {nullptr, 0};
}

std::pair<PQNode*, std::uint8_t> PQTree::apply_q(PQNode* x, int f, int p, PQNode* z1, PQNode* z2,
                                                 bool is_root) {
    if (p > 2 || (p == 2 && !is_root)) return {nullptr, 0};
    PQNode *bs = nullptr, *be = nullptr;
    if (f > 0) {
        // the full children must form one contiguous block bs..be
        int heads = 0;
        for (PQNode* c = x->first; c; c = c->next) {
            if (is_full(c) && !is_full(c->prev)) {
                heads++;
                bs = c;
            }
        }
        if (heads != 1) return {nullptr, 0};
        be = bs;
        for (int i = 1; i < f; i++) be = be->next;  // contiguity follows from heads == 1
    }
    if (!is_root) {
        bool full_toward_head;
        if (f == 0) {
            if (!z1) return {nullptr, 0};
            if (z1->prev == nullptr)
                full_toward_head = true;
            else if (z1->next == nullptr)
                full_toward_head = false;
            else
                return {nullptr, 0};
            splice_partial(x, z1, full_toward_head);
        } else {
            if (bs->prev == nullptr)
                full_toward_head = true;
            else if (be->next == nullptr)
                full_toward_head = false;
            else
                return {nullptr, 0};
            if (z1) {
                if (full_toward_head && z1 != be->next) return {nullptr, 0};
                if (!full_toward_head && z1 != bs->prev) return {nullptr, 0};
                splice_partial(x, z1, full_toward_head);
            }
        }
        x->label = kPartial;
        x->full_at_tail = !full_toward_head;
        return {x, kPartial};
    }
    // root: pattern E* [Z1] F* [Z2] E*
    if (f > 0) {
        PQNode* before = bs->prev;
        PQNode* after = be->next;
        for (PQNode* z : {z1, z2}) {
            if (!z) continue;
            if (z == before) {
                splice_partial(x, z, false);
            } else if (z == after) {
                splice_partial(x, z, true);
            } else {
                return {nullptr, 0};
            }
        }
    } else if (p == 2) {
        if (z1->next == z2) {
            splice_partial(x, z1, false);
            splice_partial(x, z2, true);
        } else if (z2->next == z1) {
            splice_partial(x, z2, false);
            splice_partial(x, z1, true);
        } else {
            return {nullptr, 0};
        }
    } else if (p == 1) {
        splice_partial(x, z1, !z1->full_at_tail);  // keep stored orientation
    }
    return {x, kEmpty};
}

// Replace child z of x by z's own children, oriented so z's full side faces
// the head of x's list when full_toward_head.
void PQTree::splice_partial(PQNode* x, PQNode* z, bool full_toward_head) {
    PQNode* h = z->first;
    PQNode* t = z->last;
    int cnt = z->nkids;
    bool stored_full_at_tail = z->full_at_tail;
    bool want_full_at_head = full_toward_head;
    bool rev = (stored_full_at_tail == want_full_at_head);
    if (rev) reverse_chain(h, t);
    for (PQNode* c = h; c; c = c->next) c->parent = x;
    PQNode* a = z->prev;
    PQNode* b = z->next;
    if (a)
        a->next = h;
    else
        x->first = h;
    h->prev = a;
    if (b)
        b->prev = t;
    else
        x->last = t;
    t->next = b;
    x->nkids += cnt - 1;
    z->parent = nullptr;
    z->prev = z->next = nullptr;
    z->first = z->last = nullptr;
    z->nkids = 0;
}

// Append z2's children (z2 already detached) onto z1's full end, z2's full
// side facing inward.
void PQTree::absorb_partial(PQNode* z1, PQNode* z2) {
    PQNode* h = z2->first;
    PQNode* t = z2->last;
    int cnt = z2->nkids;
    if (cnt == 0) return;
    bool rev = z1->full_at_tail ? z2->full_at_tail : !z2->full_at_tail;
    if (rev) reverse_chain(h, t);
    for (PQNode* c = h; c; c = c->next) c->parent = z1;
    if (z1->full_at_tail) {
        z1->last->next = h;
        h->prev = z1->last;
        z1->last = t;
    } else {
        t->next = z1->first;
        z1->first->prev = t;
        z1->first = h;
    }
    z1->nkids += cnt;
    z2->first = z2->last = nullptr;
    z2->nkids = 0;
}

std::vector<ColId> PQTree::frontier() const {
    std::vector<ColId> out;
    if (!root_) return out;
    std::vector<const PQNode*> st{root_};
    while (!st.empty()) {
        const PQNode* n = st.back();
        st.pop_back();
        if (n->kind == PQKind::Leaf) {
            out.push_back(n->leaf_col);
            continue;
        }
        std::vector<const PQNode*> kids;
        for (const PQNode* c = n->first; c; c = c->next) kids.push_back(c);
        for (auto it = kids.rbegin(); it != kids.rend(); ++it) st.push_back(*it);
    }
    return out;
}

PQKind PQTree::leaf_parent_kind(ColId c) const {
    if (!has_leaf(c)) throw InvalidInput("no such leaf");
    const PQNode* p = leaf_of_[c]->parent;
    return p ? p->kind : PQKind::Leaf;
}

int PQTree::internal_node_count() const {
    int cnt = 0;
    if (!root_) return 0;
    std::vector<const PQNode*> st{root_};
    while (!st.empty()) {
        const PQNode* n = st.back();
        st.pop_back();
        if (n->kind != PQKind::Leaf) cnt++;
        for (const PQNode* c = n->first; c; c = c->next) st.push_back(c);
    }
    return cnt;
}

namespace {

// Iterative postorder visitor: calls fn(node, children) bottom-up and carries
// a per-node result of type T.
template <class T, class Fn>
T postorder_eval(const PQNode* root, Fn fn) {
    struct Frame {
        const PQNode* node;
        const PQNode* next_child;
        std::vector<T> results;
    };
    std::vector<Frame> st;
    st.push_back({root, root->first, {}});
    T final_res{};
    while (!st.empty()) {
        Frame& f = st.back();
        if (f.next_child) {
            const PQNode* c = f.next_child;
            f.next_child = c->next;
            st.push_back({c, c->first, {}});
            continue;
        }
        T res = fn(f.node, f.results);
        st.pop_back();
        if (st.empty())
            final_res = std::move(res);
        else
            st.back().results.push_back(std::move(res));
    }
    return final_res;
}

}  // namespace

bool PQTree::is_valid_ordering(const std::vector<ColId>& pi) const {
    if (static_cast<int>(pi.size()) != n_leaves()) throw InvalidInput("ordering size mismatch");
    std::vector<int> pos(leaf_of_.size(), -1);
    for (std::size_t i = 0; i < pi.size(); i++) {
        if (!has_leaf(pi[i]) || pos[pi[i]] >= 0) throw InvalidInput("ordering not a leaf permutation");
        pos[pi[i]] = static_cast<int>(i);
    }
    if (!root_) return true;
    struct MM {
        int mn, mx, cnt;
        bool ok;
    };
    MM r = postorder_eval<MM>(root_, [&](const PQNode* n, std::vector<MM>& kids) -> MM {
        if (n->kind == PQKind::Leaf) return {pos[n->leaf_col], pos[n->leaf_col], 1, true};
        MM out{kids[0].mn, kids[0].mx, 0, true};
        for (auto& k : kids) {
            if (!k.ok) out.ok = false;
            out.mn = std::min(out.mn, k.mn);
            out.mx = std::max(out.mx, k.mx);
            out.cnt += k.cnt;
        }
        if (out.mx - out.mn + 1 != out.cnt) out.ok = false;
        if (n->kind == PQKind::Q && out.ok) {
            bool inc = true, dec = true;
            for (std::size_t i = 1; i < kids.size(); i++) {
                if (kids[i].mn < kids[i - 1].mn) inc = false;
                if (kids[i].mn > kids[i - 1].mn) dec = false;
            }
            if (!inc && !dec) out.ok = false;
        }
        return out;
    });
    return r.ok;
}

PQTree PQTree::restricted(const std::vector<ColId>& keep) const {
    if (keep.empty()) throw InvalidInput("restrict: empty leaf set");
    std::vector<char> in(leaf_of_.size(), 0);
    for (ColId c : keep) {
        if (!has_leaf(c)) throw InvalidInput("restrict: unknown leaf");
        if (in[c]) throw InvalidInput("restrict: duplicate leaf");
        in[c] = 1;
    }
    PQTree out;
    // bottom-up: each node maps to null (pruned), a single surviving child, or
    // a fresh node over the surviving children
    PQNode* new_root =
        postorder_eval<PQNode*>(root_, [&](const PQNode* n, std::vector<PQNode*>& kids) -> PQNode* {
            if (n->kind == PQKind::Leaf) return in[n->leaf_col] ? out.make_leaf(n->leaf_col) : nullptr;
            std::vector<PQNode*> alive;
            for (PQNode* k : kids)
                if (k) alive.push_back(k);
            if (alive.empty()) return nullptr;
            if (alive.size() == 1) return alive[0];
            PQKind kd = alive.size() == 2 ? PQKind::Both : n->kind;
            PQNode* nn = out.new_node(kd);
            for (PQNode* k : alive) append_child(nn, k);
            return nn;
        });
    out.root_ = new_root;
    std::sort(out.leaf_cols_.begin(), out.leaf_cols_.end());
    return out;
}

BinaryMatrix PQTree::canonical_matrix() const {
    std::vector<ColId> fr = frontier();
    std::vector<std::pair<int, int>> ranges;  // frontier index ranges, inclusive
    if (root_ && root_->kind != PQKind::Leaf) {
        int cursor = 0;
        struct RG {
            int lo, hi;
        };
        postorder_eval<RG>(root_, [&](const PQNode* n, std::vector<RG>& kids) -> RG {
            if (n->kind == PQKind::Leaf) {
                int i = cursor++;
                return {i, i};
            }
            RG out{kids.front().lo, kids.back().hi};
            bool root_node = n == root_;
            if (n->kind == PQKind::P) {
                if (!root_node) ranges.push_back({out.lo, out.hi});
            } else {  // Q or Both contribute consecutive child pair unions
                for (std::size_t i = 0; i + 1 < kids.size(); i++)
                    ranges.push_back({kids[i].lo, kids[i + 1].hi});
            }
            return out;
        });
    }
    std::sort(ranges.begin(), ranges.end());
    ranges.erase(std::unique(ranges.begin(), ranges.end()), ranges.end());
    std::vector<std::pair<RowId, std::vector<ColId>>> rows;
    for (std::size_t i = 0; i < ranges.size(); i++) {
        std::vector<ColId> cells(fr.begin() + ranges[i].first, fr.begin() + ranges[i].second + 1);
        rows.push_back({static_cast<RowId>(i), std::move(cells)});
    }
    return BinaryMatrix::from_row_sets(rows, fr);
}

std::optional<PQTree> PQTree::intersect(const PQTree& a, const PQTree& b) {
    if (a.leaves() != b.leaves()) throw InvalidInput("intersect: leaf sets differ");
    BinaryMatrix ma = a.canonical_matrix();
    BinaryMatrix mb = b.canonical_matrix();
    std::vector<std::pair<RowId, std::vector<ColId>>> rows;
    RowId next = 0;
    for (RowId r : ma.rows) rows.push_back({next++, ma.row_cells[r]});
    for (RowId r : mb.rows) rows.push_back({next++, mb.row_cells[r]});
    BinaryMatrix joint = BinaryMatrix::from_row_sets(rows, ma.cols);
    return build(joint);
}

std::vector<std::vector<ColId>> PQTree::enumerate_orderings(int leaf_bound) const {
    if (n_leaves() > leaf_bound) throw RefusedTooLarge("too many leaves to enumerate");
    if (!root_) return {{}};
    using Ords = std::vector<std::vector<ColId>>;
    return postorder_eval<Ords>(root_, [&](const PQNode* n, std::vector<Ords>& kids) -> Ords {
        if (n->kind == PQKind::Leaf) return {{n->leaf_col}};
        // cartesian product of child choices under a fixed child order
        auto product = [&](const std::vector<int>& order) {
            Ords acc{{}};
            for (int idx : order) {
                Ords nxt;
                for (const auto& pref : acc)
                    for (const auto& opt : kids[idx]) {
                        std::vector<ColId> row = pref;
                        row.insert(row.end(), opt.begin(), opt.end());
                        nxt.push_back(std::move(row));
                    }
                acc = std::move(nxt);
            }
            return acc;
        };
        std::vector<int> order(kids.size());
        for (std::size_t i = 0; i < kids.size(); i++) order[i] = static_cast<int>(i);
        Ords out;
        if (n->kind == PQKind::Q) {
            Ords fwd = product(order);
            std::reverse(order.begin(), order.end());
            Ords rev = product(order);
            out = std::move(fwd);
            out.insert(out.end(), rev.begin(), rev.end());
        } else {  // P or Both: all child permutations
            do {
                Ords part = product(order);
                out.insert(out.end(), part.begin(), part.end());
            } while (std::next_permutation(order.begin(), order.end()));
        }
        return out;
    });
}

std::string PQTree::canonical_string() const {
    if (!root_) return "()";
    struct SK {
        std::string s;
        ColId min_leaf;
    };
    SK r = postorder_eval<SK>(root_, [&](const PQNode* n, std::vector<SK>& kids) -> SK {
        if (n->kind == PQKind::Leaf) return {std::to_string(n->leaf_col), n->leaf_col};
        ColId mn = kids[0].min_leaf;
        for (auto& k : kids) mn = std::min(mn, k.min_leaf);
        if (n->kind == PQKind::Q) {
            std::vector<ColId> fwdkeys, revkeys;
            for (auto& k : kids) fwdkeys.push_back(k.min_leaf);
            revkeys.assign(fwdkeys.rbegin(), fwdkeys.rend());
            if (revkeys < fwdkeys) std::reverse(kids.begin(), kids.end());
            std::string s = "Q(";
            for (std::size_t i = 0; i < kids.size(); i++) {
                if (i) s += ",";
                s += kids[i].s;
            }
            s += ")";
            return {std::move(s), mn};
        }
        std::sort(kids.begin(), kids.end(),
                  [](const SK& a, const SK& b) { return a.min_leaf < b.min_leaf; });
        std::string s = "P(";
        for (std::size_t i = 0; i < kids.size(); i++) {
            if (i) s += ",";
            s += kids[i].s;
        }
        s += ")";
        return {std::move(s), mn};
    });
    return r.s;
}

bool PQTree::equivalent(const PQTree& a, const PQTree& b) {
    if (a.leaves() != b.leaves()) return false;
    return a.canonical_string() == b.canonical_string();
}

void PQTree::reorder_by_leaf_labels(const std::vector<int>& label_of_col) {
    if (!root_) return;
    for (ColId c : leaf_cols_)
        if (c >= static_cast<int>(label_of_col.size())) throw InvalidInput("label table too small");
    struct LB {
        PQNode* node;
        int lab;      // min label among labeled descendants, -1 if none
        ColId mnleaf; // min leaf id, for deterministic unlabeled placement
    };
    postorder_eval<LB>(root_, [&](const PQNode* n, std::vector<LB>& kids) -> LB {
        PQNode* mut = const_cast<PQNode*>(n);
        if (n->kind == PQKind::Leaf) return {mut, label_of_col[n->leaf_col], n->leaf_col};
        int lab = -1;
        ColId mn = kids[0].mnleaf;
        for (auto& k : kids) {
            if (k.lab >= 0) lab = lab < 0 ? k.lab : std::min(lab, k.lab);
            mn = std::min(mn, k.mnleaf);
        }
        if (n->kind == PQKind::Q) {
            int first_lab = -1, last_lab = -1;
            for (auto& k : kids) {
                if (k.lab >= 0) {
                    if (first_lab < 0) first_lab = k.lab;
                    last_lab = k.lab;
                }
            }
            if (first_lab >= 0 && last_lab >= 0 && first_lab > last_lab) {
                // physical reversal
                std::vector<PQNode*> ks;
                for (PQNode* c = mut->first; c; c = c->next) ks.push_back(c);
                mut->first = mut->last = nullptr;
                mut->nkids = 0;
                for (auto it = ks.rbegin(); it != ks.rend(); ++it) {
                    (*it)->prev = (*it)->next = nullptr;
                    (*it)->parent = nullptr;
                    append_child(mut, *it);
                }
            }
        } else {  // P or Both: stable sort labeled ascending, then unlabeled by min leaf
            std::vector<LB> order = kids;
            std::stable_sort(order.begin(), order.end(), [](const LB& a, const LB& b) {
                bool la = a.lab >= 0, lb = b.lab >= 0;
                if (la != lb) return la;
                if (la && lb && a.lab != b.lab) return a.lab < b.lab;
                if (!la && !lb) return a.mnleaf < b.mnleaf;
                return false;
            });
            mut->first = mut->last = nullptr;
            mut->nkids = 0;
            for (auto& k : order) {
                k.node->prev = k.node->next = nullptr;
                k.node->parent = nullptr;
                append_child(mut, k.node);
            }
        }
        return {mut, lab, mn};
    });
}

PQTree::LabelStats PQTree::label_stats(const std::vector<int>& label_of_col) const {
    LabelStats stats;
    if (!root_) return stats;
    for (ColId c : leaf_cols_)
        if (c >= static_cast<int>(label_of_col.size())) throw InvalidInput("label table too small");
    postorder_eval<bool>(root_, [&](const PQNode* n, std::vector<bool>& kids) -> bool {
        if (n->kind == PQKind::Leaf) return label_of_col[n->leaf_col] >= 0;
        int labeled = 0;
        for (bool k : kids) labeled += k ? 1 : 0;
        if (n->kind == PQKind::Q) {
            if (labeled < 2) stats.q_with_lt2_labeled = true;
        } else {
            if (labeled < static_cast<int>(kids.size())) stats.p_with_unlabeled_child = true;
        }
        return labeled > 0;
    });
    return stats;
}

void PQTree::validate_structure() const {
    std::vector<ColId> seen;
    if (root_) {
        if (root_->parent) throw std::logic_error("root has parent");
        std::vector<const PQNode*> st{root_};
        while (!st.empty()) {
            const PQNode* n = st.back();
            st.pop_back();
            int cnt = 0;
            const PQNode* prev = nullptr;
            for (const PQNode* c = n->first; c; c = c->next) {
                if (c->parent != n) throw std::logic_error("bad parent pointer");
                if (c->prev != prev) throw std::logic_error("bad prev pointer");
                prev = c;
                cnt++;
                st.push_back(c);
            }
            if (n->last != prev) throw std::logic_error("bad last pointer");
            if (cnt != n->nkids) throw std::logic_error("bad child count");
            switch (n->kind) {
                case PQKind::Leaf:
                    if (cnt != 0) throw std::logic_error("leaf with children");
                    if (!has_leaf(n->leaf_col) || leaf_of_[n->leaf_col] != n)
                        throw std::logic_error("leaf map mismatch");
                    seen.push_back(n->leaf_col);
                    break;
                case PQKind::Both:
                    if (cnt != 2) throw std::logic_error("both-node without 2 children");
                    break;
                default:
                    if (cnt < 3) throw std::logic_error("thin P/Q node");
            }
        }
    }
    std::sort(seen.begin(), seen.end());
    if (seen != leaf_cols_) throw std::logic_error("leaf set mismatch");
}

}  // namespace pig
