#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <chrono>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "pig/c1pm.hpp"
#include "pig/errors.hpp"

using namespace pig;

namespace {

using RowSets = std::vector<std::pair<RowId, std::vector<ColId>>>;

// Instance from a fully-known matrix plus an explicit unknown-cell mask.
// R = rows with no unknowns, C = columns with no unknowns.
C1PMInstance make_instance(const RowSets& rows, const std::vector<ColId>& cols,
                           const std::vector<std::pair<RowId, ColId>>& unknown) {
    int max_r = 0, max_c = 0;
    for (const auto& [r, cells] : rows) max_r = std::max(max_r, r);
    for (ColId c : cols) max_c = std::max(max_c, c);
    std::vector<char> row_hit(max_r + 1, 0), col_hit(max_c + 1, 0);
    for (auto [r, c] : unknown) {
        row_hit[r] = 1;
        col_hit[c] = 1;
    }
    C1PMInstance inst;
    for (const auto& [r, cells] : rows)
        if (!row_hit[r]) inst.R.push_back(r);
    for (ColId c : cols)
        if (!col_hit[c]) inst.C.push_back(c);
    BinaryMatrix full = BinaryMatrix::from_row_sets(rows, cols);
    inst.M_R = full.submatrix(&inst.R, nullptr);
    inst.M_C = full.submatrix(nullptr, &inst.C);
    return inst;
}

bool c1_under(const BinaryMatrix& m, const std::vector<ColId>& order) {
    BinaryMatrix copy = m;
    copy.reorder_columns(order);
    return copy.is_c1_ordered();
}

std::vector<ColId> restrict_order(const std::vector<ColId>& pi, const BinaryMatrix& m_c) {
    std::vector<ColId> out;
    for (ColId c : pi)
        if (m_c.has_col(c)) out.push_back(c);
    return out;
}

bool order_solves(const C1PMInstance& inst, const std::vector<ColId>& pi) {
    return c1_under(inst.M_R, pi) && c1_under(inst.M_C, restrict_order(pi, inst.M_C));
}

// All solving orderings, by exhaustion over column permutations.
std::vector<std::vector<ColId>> brute_solutions(const C1PMInstance& inst) {
    std::vector<ColId> perm = inst.M_R.cols;
    std::sort(perm.begin(), perm.end());
    std::vector<std::vector<ColId>> out;
    do {
        if (order_solves(inst, perm)) out.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

int solution_classes(const std::vector<std::vector<ColId>>& sols) {
    std::set<std::vector<ColId>> classes;
    for (const auto& s : sols) {
        std::vector<ColId> rev(s.rbegin(), s.rend());
        classes.insert(std::min(s, rev));
    }
    return static_cast<int>(classes.size());
}

// Every known entry must survive into the taut matrix: rows of R match M_R
// everywhere, all rows match M_C on C.
void check_taut_agreement(const C1PMInstance& inst, const C1PMSolution& sol) {
    int max_c = 0;
    for (ColId c : inst.M_R.cols) max_c = std::max(max_c, c);
    std::vector<int> pos(max_c + 1, -1);
    for (int i = 0; i < static_cast<int>(sol.pi.size()); i++) pos[sol.pi[i]] = i;
    for (RowId r : inst.R)
        for (ColId c : inst.M_R.cols)
            CHECK(taut_lookup(sol, r, pos[c]) == inst.M_R.at(r, c));
    for (RowId r : inst.M_C.rows)
        for (ColId c : inst.C)
            CHECK(taut_lookup(sol, r, pos[c]) == inst.M_C.at(r, c));
}

void check_soundness(const C1PMInstance& inst, const C1PMSolution& sol) {
    std::vector<ColId> pi_sorted = sol.pi;
    std::sort(pi_sorted.begin(), pi_sorted.end());
    std::vector<ColId> cols_sorted = inst.M_R.cols;
    std::sort(cols_sorted.begin(), cols_sorted.end());
    REQUIRE(pi_sorted == cols_sorted);
    CHECK(order_solves(inst, sol.pi));

    std::vector<ColId> tau_sorted = sol.tau;
    std::sort(tau_sorted.begin(), tau_sorted.end());
    std::vector<ColId> c_sorted = inst.C;
    std::sort(c_sorted.begin(), c_sorted.end());
    CHECK(tau_sorted == c_sorted);
    // pi restricted to C realizes tau
    CHECK(restrict_order(sol.pi, inst.M_C) == sol.tau);

    // artifact leaf sets
    CHECK(sol.T2.leaves() == cols_sorted);
    CHECK(sol.T1.leaves() == c_sorted);
    CHECK(sol.T3.leaves() == c_sorted);
    CHECK(sol.T4.leaves() == c_sorted);
    check_taut_agreement(inst, sol);
}

// Planted generator: interval rows over the identity order, then a contiguous
// row-block x column-block is turned unknown.
C1PMInstance plant(std::mt19937& rng, int nc, int nr) {
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    RowSets rows;
    for (int r = 0; r < nr; r++) {
        int a = pick(0, nc - 1), b = pick(0, nc - 1);
        if (a > b) std::swap(a, b);
        std::vector<ColId> cells(b - a + 1);
        std::iota(cells.begin(), cells.end(), a);
        rows.push_back({r, cells});
    }
    std::vector<ColId> cols(nc);
    std::iota(cols.begin(), cols.end(), 0);
    int r0 = pick(0, nr - 1), r1 = pick(r0, nr - 1);
    int c0 = pick(0, nc - 1), c1 = pick(c0, nc - 1);
    std::vector<std::pair<RowId, ColId>> unknown;
    for (int r = r0; r <= r1; r++)
        for (int c = c0; c <= c1; c++) unknown.push_back({r, c});
    return make_instance(rows, cols, unknown);
}

// Arbitrary (often unsolvable) small instance.
C1PMInstance random_instance(std::mt19937& rng, int nc, int nr) {
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    RowSets rows;
    for (int r = 0; r < nr; r++) {
        std::vector<ColId> cells;
        for (int c = 0; c < nc; c++)
            if (pick(0, 1) == 0) cells.push_back(c);
        rows.push_back({r, cells});
    }
    std::vector<ColId> cols(nc);
    std::iota(cols.begin(), cols.end(), 0);
    // a third of the instances are fully known, the rest get a few unknowns
    std::vector<std::pair<RowId, ColId>> unknown;
    if (pick(0, 2) != 0) {
        int stars = 1 + pick(0, std::max(1, nc * nr / 6));
        for (int k = 0; k < stars; k++) unknown.push_back({pick(0, nr - 1), pick(0, nc - 1)});
    }
    return make_instance(rows, cols, unknown);
}

}  // namespace

TEST_SUITE_BEGIN("c1pm");

TEST_CASE("instance validation") {
    RowSets rows = {{0, {0, 1}}, {1, {0, 2}}};
    C1PMInstance good = make_instance(rows, {0, 1, 2}, {{1, 1}});
    CHECK_NOTHROW(validate_instance(good));

    SUBCASE("R must equal the rows of M_R") {
        C1PMInstance bad = good;
        bad.R.pop_back();
        CHECK_THROWS_AS(validate_instance(bad), InvalidInput);
    }
    SUBCASE("C must equal the columns of M_C") {
        C1PMInstance bad = good;
        bad.C.push_back(1);
        CHECK_THROWS_AS(validate_instance(bad), InvalidInput);
    }
    SUBCASE("C must be drawn from M_R's columns") {
        C1PMInstance bad = good;
        bad.M_C = BinaryMatrix::from_row_sets({{0, {0, 7}}, {1, {0}}}, {0, 2, 7});
        bad.C = {0, 2, 7};
        CHECK_THROWS_AS(validate_instance(bad), InvalidInput);
    }
    SUBCASE("R must be drawn from M_C's rows") {
        C1PMInstance bad = good;
        std::vector<RowId> only1 = {1};
        bad.M_C = bad.M_C.submatrix(&only1, nullptr);
        CHECK_THROWS_AS(validate_instance(bad), InvalidInput);
    }
    SUBCASE("known entries must agree") {
        C1PMInstance bad = good;
        bad.M_C = BinaryMatrix::from_row_sets({{0, {0, 2}}, {1, {0, 2}}}, {0, 2});
        CHECK_THROWS_AS(validate_instance(bad), InvalidInput);
        CHECK_THROWS_AS(solve(bad), InvalidInput);
    }
}

TEST_CASE("known row stays adjacent while an unknown column floats") {
    // full matrix: row0 = {a,b} known everywhere, row1 = 1 at a and c with b
    // unknown; so R = {row0}, C = {a,c}
    C1PMInstance inst = make_instance({{0, {0, 1}}, {1, {0, 2}}}, {0, 1, 2}, {{1, 1}});
    auto sol = solve(inst);
    REQUIRE(sol.has_value());
    check_soundness(inst, *sol);

    std::vector<int> pos(3, -1);
    for (int i = 0; i < 3; i++) pos[sol->pi[i]] = i;
    CHECK(std::abs(pos[0] - pos[1]) == 1);

    // row1's block runs between its two known 1s; anything caught inside is
    // promoted to 1
    int lo = std::min(pos[0], pos[2]), hi = std::max(pos[0], pos[2]);
    for (int p = 0; p < 3; p++) CHECK(taut_lookup(*sol, 1, p) == (lo <= p && p <= hi));

    // both orderings of the two known columns appear across brute solutions
    auto sols = brute_solutions(inst);
    CHECK(std::find(sols.begin(), sols.end(), sol->pi) != sols.end());
    bool a_first = false, c_first = false;
    for (const auto& s : sols) {
        auto rc = restrict_order(s, inst.M_C);
        (rc[0] == 0 ? a_first : c_first) = true;
    }
    CHECK(a_first);
    CHECK(c_first);
}

TEST_CASE("no unknowns degenerates to plain consecutive-ones") {
    SUBCASE("orderable matrix") {
        RowSets rows = {{0, {0, 1}}, {1, {1, 2, 3, 4}}, {2, {1, 2}}, {3, {2}},
                        {4, {3}},    {5, {3, 4}},       {6, {0}},    {7, {4}}};
        C1PMInstance inst = make_instance(rows, {0, 1, 2, 3, 4}, {});
        CHECK(inst.R.size() == 8);
        CHECK(inst.C.size() == 5);
        auto sol = solve(inst);
        REQUIRE(sol.has_value());
        check_soundness(inst, *sol);
        CHECK(sol->tau == sol->pi);
    }
    SUBCASE("unorderable matrix") {
        RowSets rows = {{0, {0, 1}}, {1, {1, 2}}, {2, {0, 2}}};
        C1PMInstance inst = make_instance(rows, {0, 1, 2}, {});
        CHECK(!solve(inst).has_value());
        CHECK(brute_solutions(inst).empty());
    }
}

TEST_CASE("taut lookup endpoints") {
    // chain rows force the column order up to reversal; row 4 is a 3-wide
    // block, rows 5/6 are only known on C = {2, 6}
    RowSets rows = {{0, {0, 1}}, {1, {1, 2}}, {2, {2, 3}}, {3, {3, 4}},
                    {4, {2, 3, 4}}, {5, {2, 6}}, {6, {}}};
    std::vector<std::pair<RowId, ColId>> unknown;
    for (RowId r : {5, 6})
        for (ColId c : {0, 1, 3, 4, 5}) unknown.push_back({r, c});
    C1PMInstance inst = make_instance(rows, {0, 1, 2, 3, 4, 5, 6}, unknown);
    CHECK(inst.C == std::vector<ColId>({2, 6}));
    CHECK(inst.R == std::vector<RowId>({0, 1, 2, 3, 4}));

    auto sol = solve(inst);
    REQUIRE(sol.has_value());
    check_soundness(inst, *sol);
    std::vector<int> pos(7, -1);
    for (int i = 0; i < 7; i++) pos[sol->pi[i]] = i;

    SUBCASE("known row spans exactly its block") {
        int lo = std::min(pos[2], pos[4]), hi = std::max(pos[2], pos[4]);
        CHECK(hi - lo == 2);
        for (int p = 0; p < 7; p++) CHECK(taut_lookup(*sol, 4, p) == (lo <= p && p <= hi));
    }
    SUBCASE("partially known row promotes interior unknowns") {
        int lo = std::min(pos[2], pos[6]), hi = std::max(pos[2], pos[6]);
        CHECK(hi - lo >= 2);
        for (int p = 0; p < 7; p++) CHECK(taut_lookup(*sol, 5, p) == (lo <= p && p <= hi));
    }
    SUBCASE("row with no known 1s is all zero") {
        for (int p = 0; p < 7; p++) CHECK(!taut_lookup(*sol, 6, p));
    }
    SUBCASE("out of range") {
        CHECK_THROWS_AS(taut_lookup(*sol, -1, 0), InvalidInput);
        CHECK_THROWS_AS(taut_lookup(*sol, 7, 0), InvalidInput);
        CHECK_THROWS_AS(taut_lookup(*sol, 0, -1), InvalidInput);
        CHECK_THROWS_AS(taut_lookup(*sol, 0, 7), InvalidInput);
    }
}

TEST_CASE("planted instances always solve") {
    std::mt19937 rng(20260815);
    for (int trial = 0; trial < 150; trial++) {
        int nc = 3 + trial % 8, nr = 2 + trial % 7;
        C1PMInstance inst = plant(rng, nc, nr);
        auto sol = solve(inst);
        REQUIRE(sol.has_value());
        check_soundness(inst, *sol);
    }
}

TEST_CASE("incompatible subtrees without an unorderable side") {
    // M_R forces C = {0,2,4} into the patterns 0..2..4 / 2..0..4 (and
    // reversals); M_C demands 0-4 and 2-4 adjacencies, leaving no overlap.
    RowSets rows = {{0, {0, 1}}, {1, {1, 2}}, {2, {3, 4}},
                    {3, {0, 4}}, {4, {2, 4}}};
    std::vector<std::pair<RowId, ColId>> unknown = {{3, 1}, {4, 3}};
    C1PMInstance inst = make_instance(rows, {0, 1, 2, 3, 4}, unknown);
    CHECK(inst.C == std::vector<ColId>({0, 2, 4}));

    CHECK(PQTree::build(inst.M_R).has_value());
    CHECK(PQTree::build(inst.M_C).has_value());
    CHECK(!solve(inst).has_value());
    CHECK(brute_solutions(inst).empty());
}

TEST_CASE("verdict matches exhaustive search on small instances") {
    std::mt19937 rng(990817);
    int solvable = 0, unsolvable = 0;
    for (int trial = 0; trial < 700; trial++) {
        int nc = 2 + trial % 5, nr = 1 + trial % 10;
        C1PMInstance inst = trial % 3 == 0 ? plant(rng, nc, nr) : random_instance(rng, nc, nr);
        auto sols = brute_solutions(inst);
        auto sol = solve(inst);
        REQUIRE(sol.has_value() == !sols.empty());
        if (sol) {
            solvable++;
            CHECK(std::find(sols.begin(), sols.end(), sol->pi) != sols.end());
        } else {
            unsolvable++;
        }
    }
    CHECK(solvable > 80);
    CHECK(unsolvable > 80);
}

TEST_CASE("uniqueness flag matches class count on small instances") {
    std::mt19937 rng(440812);
    int unique_seen = 0, plural_seen = 0;
    for (int trial = 0; trial < 500; trial++) {
        int nc = 2 + trial % 5, nr = 1 + trial % 10;
        C1PMInstance inst = trial % 3 == 0 ? plant(rng, nc, nr) : random_instance(rng, nc, nr);
        auto sol = solve(inst);
        if (!sol) continue;
        int classes = solution_classes(brute_solutions(inst));
        REQUIRE(classes >= 1);
        bool uniq = is_unique(inst, *sol);
        CHECK(uniq == (classes == 1));
        (uniq ? unique_seen : plural_seen)++;
    }
    CHECK(unique_seen > 30);
    CHECK(plural_seen > 30);
}

TEST_CASE("uniqueness endpoints") {
    SUBCASE("two columns are always unique") {
        C1PMInstance inst = make_instance({{0, {0}}, {1, {1}}}, {0, 1}, {});
        auto sol = solve(inst);
        REQUIRE(sol.has_value());
        CHECK(is_unique(inst, *sol));
        CHECK(solution_classes(brute_solutions(inst)) == 1);
    }
    SUBCASE("a single spine is unique even with an unknown column") {
        // rows {0,1} and {1,2} pin the spine; row 2 knows nothing of column 1
        C1PMInstance inst = make_instance({{0, {0, 1}}, {1, {1, 2}}, {2, {}}}, {0, 1, 2},
                                          {{2, 1}});
        auto sol = solve(inst);
        REQUIRE(sol.has_value());
        CHECK(inst.C == std::vector<ColId>({0, 2}));
        CHECK(inst.R == std::vector<RowId>({0, 1}));
        CHECK(is_unique(inst, *sol));
        CHECK(solution_classes(brute_solutions(inst)) == 1);
    }
    SUBCASE("free child outside C breaks uniqueness") {
        C1PMInstance inst = make_instance({{0, {0, 1}}, {1, {2}}}, {0, 1, 2}, {{1, 2}});
        CHECK(inst.C == std::vector<ColId>({0, 1}));
        auto sol = solve(inst);
        REQUIRE(sol.has_value());
        CHECK(!is_unique(inst, *sol));
        CHECK(solution_classes(brute_solutions(inst)) >= 2);
    }
}

TEST_CASE("solve is deterministic") {
    std::mt19937 rng(77015);
    for (int trial = 0; trial < 25; trial++) {
        C1PMInstance inst = plant(rng, 4 + trial % 6, 3 + trial % 5);
        auto a = solve(inst), b = solve(inst);
        REQUIRE(a.has_value());
        REQUIRE(b.has_value());
        CHECK(a->pi == b->pi);
        CHECK(a->tau == b->tau);
        CHECK(a->row_ids == b->row_ids);
        for (std::size_t i = 0; i < a->spans.size(); i++) {
            CHECK(a->spans[i].first == b->spans[i].first);
            CHECK(a->spans[i].last == b->spans[i].last);
        }
    }
}

TEST_CASE("runtime stays near linear in total ones") {
    auto planted_big = [](int nc, int nr, std::mt19937& rng) {
        auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
        RowSets rows;
        for (int r = 0; r < nr; r++) {
            int a = pick(0, nc - 8);
            int b = std::min(nc - 1, a + pick(1, 12));
            std::vector<ColId> cells(b - a + 1);
            std::iota(cells.begin(), cells.end(), a);
            rows.push_back({r, cells});
        }
        std::vector<ColId> cols(nc);
        std::iota(cols.begin(), cols.end(), 0);
        // unknown block: an eighth of the rows over an eighth of the columns
        std::vector<std::pair<RowId, ColId>> unknown;
        for (int r = 0; r < nr / 8; r++)
            for (int c = 0; c < nc / 8; c++) unknown.push_back({r, c});
        return make_instance(rows, cols, unknown);
    };
    auto time_one = [&](int scale) {
        std::mt19937 rng(5150 + scale);
        C1PMInstance inst = planted_big(256 * scale, 1024 * scale, rng);
        double best = 1e18;
        for (int rep = 0; rep < 3; rep++) {
            auto t0 = std::chrono::steady_clock::now();
            auto sol = solve(inst);
            auto t1 = std::chrono::steady_clock::now();
            REQUIRE(sol.has_value());
            best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
        }
        return best;
    };
    double t1 = time_one(4), t2 = time_one(8), t4 = time_one(16);
    (void)t1;
    // doubling the input should not much more than double the time; allow
    // generous slack for machine noise
    CHECK(t4 <= 6.0 * t2 + 0.02);
}

TEST_SUITE_END();
