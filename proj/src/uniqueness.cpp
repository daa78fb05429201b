#include "pig/uniqueness.hpp"

#include <cassert>
#include <unordered_map>

#include "pig/errors.hpp"

namespace pig {

const char* to_string(UniquenessTest t) {
    switch (t) {
        case UniquenessTest::A: return "A";
        case UniquenessTest::B: return "B";
        case UniquenessTest::C: return "C";
    }
    return "?";
}

UniquenessVerdict is_unique_normal_model(const PartitionedGraph& g,
                                         const RecognitionResult& res) {
    const auto& comps = res.trace.components;
    if (comps.empty()) throw InvalidInput("recognition trace has no components");

    if (comps.size() > 1) {
        // Components can be permuted and reflected independently, so more
        // than two columns always admit a second arrangement. All-non-probe
        // inputs collapse into one shared column and stay unique.
        if (g.probes().empty()) return {true, std::nullopt, ""};
        if (comps.size() == 2 && res.model.matrix.n_cols() == 2)
            return {true, std::nullopt, ""};
        return {false, std::nullopt,
                "separate components admit independent placements or reflections"};
    }

    const ComponentTrace& tr = comps[0];
    if (tr.degenerate) return {true, std::nullopt, ""};
    if (!tr.c1pm) throw InvalidInput("recognition trace lacks ordering artifacts");

    C1PMInstance inst{tr.m_p, tr.m_n, tr.m_p.rows, tr.m_n.cols};
    if (!is_unique(inst, *tr.c1pm))
        return {false, UniquenessTest::A, "the probe matrix admits a second ordering"};

    std::unordered_map<ColId, int> housed;
    for (auto [x, c] : tr.ns_column) housed[c]++;

    if (tr.n_cols == 2) {
        for (auto [c, cnt] : housed)
            if (cnt >= 2 && tr.col_class[c] == ColumnClass::Simplicial)
                return {false, UniquenessTest::B,
                        "two simplicial non-probes share a housing column"};
        return {true, std::nullopt, ""};
    }

    bool moveable = false, moveable_semi = false;
    for (auto [c, cnt] : housed) {
        if (tr.col_class[c] == ColumnClass::Clique) continue;
        PQKind k = tr.c1pm->T2.leaf_parent_kind(c);
        bool hit = k == PQKind::P || k == PQKind::Both;
        moveable = moveable || hit;
        moveable_semi = moveable_semi || (hit && tr.col_class[c] == ColumnClass::SemiClique);
    }
    // Once the ordering test passed, only boundary columns can still move: a
    // freestanding simplicial column under a P node would already have failed
    // it, so the narrowed scan must agree with the full one.
    assert(moveable == moveable_semi);
    if (moveable)
        return {false, UniquenessTest::C,
                "a housed column can sit on either side of its siblings"};
    return {true, std::nullopt, ""};
}

}  // namespace pig
