#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <random>
#include <set>
#include <variant>
#include <vector>

#include "doctest.h"
#include "pig/errors.hpp"
#include "pig/graph.hpp"
#include "pig/io.hpp"
#include "pig/oracle.hpp"
#include "pig/pq_tree.hpp"
#include "pig/recognition.hpp"

using namespace pig;

namespace {

std::vector<std::vector<int>> columns_of(const BinaryMatrix& m) {
    std::vector<std::vector<int>> out;
    for (ColId c : m.cols) out.push_back(m.col(c));
    return out;
}

std::vector<std::vector<int>> sorted_columns(const BinaryMatrix& m) {
    auto cols = columns_of(m);
    std::sort(cols.begin(), cols.end());
    return cols;
}

}  // namespace

TEST_SUITE_BEGIN("oracle");

TEST_CASE("generator output is a valid normal model of its graph") {
    std::mt19937 outer(5);
    for (int it = 0; it < 120; it++) {
        GeneratorParams p;
        p.n1 = static_cast<int>(outer() % 3);
        p.n2 = static_cast<int>(outer() % 3);
        p.ns = static_cast<int>(outer() % 5);
        p.probes_min = 2 * p.n1 + 3 * p.n2 + 1 + static_cast<int>(outer() % 10);
        p.probes_max = p.probes_min + 50;
        p.density = 0.05 + 0.6 * (static_cast<double>(outer() % 1000) / 1000.0);
        p.seed = outer();
        auto [model, g] = random_normal_model(p);
        CHECK(g.n() >= p.probes_min);
        int nonprobes = 0;
        for (int v = 0; v < g.n(); v++) nonprobes += !g.is_probe[v];
        CHECK(nonprobes == p.n1 + p.n2 + p.ns);
        CHECK(model.matrix.n_cols() <= g.n());
        CHECK(verify_model(g, model.matrix));
        CHECK(is_normal_model(g, model.matrix));
        CHECK(std::holds_alternative<RecognitionResult>(recognize(g)));
    }
}

TEST_CASE("generator is deterministic in the seed") {
    GeneratorParams p;
    p.probes_min = 10;
    p.probes_max = 40;
    p.n1 = 1;
    p.n2 = 1;
    p.ns = 2;
    p.seed = 424242;
    auto [m1, g1] = random_normal_model(p);
    auto [m2, g2] = random_normal_model(p);
    CHECK(format_graph(g1) == format_graph(g2));
    CHECK(m1.matrix == m2.matrix);
    p.seed = 424243;
    auto [m3, g3] = random_normal_model(p);
    CHECK(format_graph(g1) != format_graph(g3));
}

TEST_CASE("generator refuses impossible parameter mixes") {
    GeneratorParams p;
    p.probes_min = p.probes_max = 3;
    p.columns = 2;
    p.n1 = 1;  // one gap gadget needs two columns plus a plain column
    CHECK_THROWS_AS(random_normal_model(p), RefusedParams);
    GeneratorParams q;
    q.probes_min = q.probes_max = 2;
    q.n2 = 1;  // the gadget alone wants three probes
    CHECK_THROWS_AS(random_normal_model(q), RefusedParams);
}

TEST_CASE("exhaustive recognition finds minimum-column models") {
    auto px = make_graph({true, false}, {{0, 1}});
    auto m = brute_force_recognize(px);
    REQUIRE(m.has_value());
    CHECK(m->n_cols() == 1);

    auto fig = make_graph(std::vector<bool>(8, true),
                          {{0, 6}, {0, 1}, {0, 2}, {1, 2}, {1, 3}, {1, 4}, {1, 5}, {4, 5},
                           {1, 7}, {5, 7}, {2, 3}});
    auto fm = brute_force_recognize(fig);
    REQUIRE(fm.has_value());
    CHECK(fm->n_cols() == 5);
    CHECK(sorted_columns(*fm) ==
          std::vector<std::vector<int>>{
              {0, 1, 2}, {0, 6}, {1, 2, 3}, {1, 4, 5}, {1, 5, 7}});

    auto bad = make_graph({true, true, true, true, false},
                          {{0, 1}, {1, 2}, {2, 3}, {0, 4}, {2, 4}});
    CHECK(!brute_force_recognize(bad).has_value());

    auto wide = make_graph({true, true, true}, {{0, 1}, {1, 2}});
    CHECK(!brute_force_recognize(wide, 1).has_value());
    auto two = brute_force_recognize(wide, 2);
    REQUIRE(two.has_value());
    CHECK(two->n_cols() == 2);

    CHECK_THROWS_AS(brute_force_recognize(make_graph(std::vector<bool>(9, true), {})),
                    RefusedTooLarge);
}

TEST_CASE("model enumeration respects bound and limit") {
    auto g = make_graph({true, true, false, false}, {{0, 1}, {0, 2}, {0, 3}});
    auto all = brute_force_normal_models(g);
    REQUIRE(all.size() == 2);
    CHECK(columns_of(all[0]) == std::vector<std::vector<int>>{{0, 2, 3}, {0, 1}});
    CHECK(columns_of(all[1]) == std::vector<std::vector<int>>{{0, 3}, {0, 1}, {0, 2}});
    CHECK(brute_force_normal_models(g, 2).size() == 1);
    CHECK(brute_force_normal_models(g, -1, 1).size() == 1);

    CHECK(brute_force_normal_models(make_graph({false}, {})).size() == 1);
    CHECK_THROWS_AS(brute_force_normal_models(make_graph({}, {})), InvalidInput);
    // every reported model passes the checks it was filtered by
    for (const auto& m : all) {
        CHECK(verify_model(g, m));
        CHECK(is_normal_model(g, m));
    }
}

TEST_CASE("column deletion composes the crossing rows") {
    auto m = BinaryMatrix::from_row_sets({{0, {0, 1, 2, 3, 4, 5}},
                                          {1, {1, 2, 3, 4}},
                                          {2, {2, 3}},
                                          {3, {0}},
                                          {4, {1}},
                                          {5, {2}},
                                          {6, {6}},
                                          {7, {7}},
                                          {8, {8}},
                                          {9, {5, 6, 7, 8}},
                                          {10, {3, 4, 5, 6, 7}},
                                          {11, {4, 5, 6}}},
                                         {0, 1, 2, 3, 4, 5, 6, 7, 8});
    auto del = column_delete_with_constraints(m, 4);
    CHECK(del.n_cols() == 8);
    CHECK(del.n_rows() == 13);
    RowId added = 12;
    REQUIRE(del.has_row(added));
    CHECK(del.row(added) == std::vector<ColId>{1, 2, 3, 5, 6});

    // deletion law: orders of the smaller matrix = restrictions of the full tree
    auto t_full = PQTree::build(m);
    auto t_del = PQTree::build(del);
    REQUIRE(t_full.has_value());
    REQUIRE(t_del.has_value());
    std::vector<ColId> keep;
    for (ColId c : m.cols)
        if (c != 4) keep.push_back(c);
    CHECK(PQTree::equivalent(*t_del, t_full->restricted(keep)));
}

TEST_CASE("column deletion rejects bad inputs") {
    auto m = BinaryMatrix::from_row_sets({{0, {0, 1}}, {1, {1, 2}}}, {0, 1, 2});
    CHECK_THROWS_AS(column_delete_with_constraints(m, 7), InvalidInput);
    // no row properly enters column 0 from the left
    CHECK_THROWS_AS(column_delete_with_constraints(m, 0), InvalidInput);
    auto frag = BinaryMatrix::from_row_sets({{0, {0, 2}}}, {0, 1, 2});
    CHECK_THROWS_AS(column_delete_with_constraints(frag, 1), InvalidInput);
}

TEST_CASE("column deletion law holds on random consecutive matrices") {
    std::mt19937 rng(31);
    int done = 0;
    while (done < 400) {
        int nc = 3 + static_cast<int>(rng() % 4);
        int nr = 2 + static_cast<int>(rng() % 5);
        std::vector<std::pair<RowId, std::vector<ColId>>> rows;
        for (int r = 0; r < nr; r++) {
            int a = static_cast<int>(rng() % nc);
            int b = static_cast<int>(rng() % nc);
            if (a > b) std::swap(a, b);
            std::vector<ColId> cells;
            for (int j = a; j <= b; j++) cells.push_back(j);
            rows.push_back({r, std::move(cells)});
        }
        std::vector<ColId> order;
        for (int j = 0; j < nc; j++) order.push_back(j);
        auto m = BinaryMatrix::from_row_sets(rows, order);
        int c = static_cast<int>(rng() % nc);
        BinaryMatrix del;
        try {
            del = column_delete_with_constraints(m, c);
        } catch (const InvalidInput&) {
            continue;  // column had no proper crossing rows
        }
        auto t_full = PQTree::build(m);
        auto t_del = PQTree::build(del);
        REQUIRE(t_full.has_value());
        REQUIRE(t_del.has_value());  // composed rows stay contiguous without c
        std::vector<ColId> keep;
        for (ColId col : m.cols)
            if (col != c) keep.push_back(col);
        CHECK(PQTree::equivalent(*t_del, t_full->restricted(keep)));
        done++;
    }
}

TEST_SUITE_END();
