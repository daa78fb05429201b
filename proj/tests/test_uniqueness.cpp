#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "doctest.h"
#include "pig/errors.hpp"
#include "pig/graph.hpp"
#include "pig/oracle.hpp"
#include "pig/recognition.hpp"
#include "pig/uniqueness.hpp"

using namespace pig;

namespace {

RecognitionResult accept_of(RecognizeOutcome out) {
    REQUIRE(std::holds_alternative<RecognitionResult>(out));
    return std::get<RecognitionResult>(std::move(out));
}

UniquenessVerdict verdict_of(const PartitionedGraph& g) {
    auto res = accept_of(recognize(g));
    return is_unique_normal_model(g, res);
}

std::vector<std::vector<int>> columns_of(const BinaryMatrix& m) {
    std::vector<std::vector<int>> out;
    for (ColId c : m.cols) out.push_back(m.col(c));
    return out;
}

// verdict must agree with exhaustive model enumeration; returns the count
std::size_t check_against_brute(const PartitionedGraph& g) {
    auto res = accept_of(recognize(g));
    auto uq = is_unique_normal_model(g, res);
    auto models = brute_force_normal_models(g);
    REQUIRE(!models.empty());
    REQUIRE(uq.unique == (models.size() == 1));
    if (!uq.unique) REQUIRE(models.size() >= 2);
    return models.size();
}

}  // namespace

TEST_SUITE_BEGIN("uniqueness");

TEST_CASE("single probe-nonprobe edge has one model") {
    auto uq = verdict_of(make_graph({true, false}, {{0, 1}}));
    CHECK(uq.unique);
    CHECK(!uq.failing_test.has_value());
    CHECK(uq.witness.empty());
}

TEST_CASE("second ordering of the probe matrix fails test A") {
    auto g = make_graph({true, true, true, true, false, false},
                        {{0, 3}, {0, 1}, {0, 4}, {1, 4}, {1, 5}, {1, 2}, {2, 4}});
    auto uq = verdict_of(g);
    CHECK_FALSE(uq.unique);
    REQUIRE(uq.failing_test.has_value());
    CHECK(*uq.failing_test == UniquenessTest::A);
    CHECK(check_against_brute(g) >= 2);
}

TEST_CASE("crowded housing column fails test B") {
    auto g = make_graph({true, true, false, false}, {{0, 1}, {0, 2}, {0, 3}});
    auto res = accept_of(recognize(g));
    CHECK(columns_of(res.model.matrix) ==
          std::vector<std::vector<int>>{{0, 1}, {0, 2, 3}});
    auto uq = is_unique_normal_model(g, res);
    CHECK_FALSE(uq.unique);
    REQUIRE(uq.failing_test.has_value());
    CHECK(*uq.failing_test == UniquenessTest::B);

    auto models = brute_force_normal_models(g);
    REQUIRE(models.size() == 2);  // the split puts one housed vertex on each side
    CHECK(columns_of(models[1]) ==
          std::vector<std::vector<int>>{{0, 3}, {0, 1}, {0, 2}});
}

TEST_CASE("side-switching housed column fails test C") {
    auto g = make_graph({true, true, true, false, false},
                        {{0, 2}, {0, 3}, {0, 4}, {1, 3}});
    auto res = accept_of(recognize(g));
    CHECK(columns_of(res.model.matrix) ==
          std::vector<std::vector<int>>{{0, 2}, {0, 3, 4}, {1, 3}});
    auto uq = is_unique_normal_model(g, res);
    CHECK_FALSE(uq.unique);
    REQUIRE(uq.failing_test.has_value());
    CHECK(*uq.failing_test == UniquenessTest::C);

    auto models = brute_force_normal_models(g);
    REQUIRE(models.size() == 2);  // the housed vertex can break out past the end
    CHECK(columns_of(models[1]) ==
          std::vector<std::vector<int>>{{0, 4}, {0, 2}, {0, 3}, {1, 3}});
}

TEST_CASE("one-column housing with a single guest stays unique") {
    auto g = make_graph({true, true, false}, {{0, 1}, {0, 2}});
    auto uq = verdict_of(g);
    CHECK(uq.unique);
    CHECK(check_against_brute(g) == 1);
}

TEST_CASE("disconnected graphs follow the placement rule") {
    // all-non-probe graphs collapse into one column
    CHECK(verdict_of(make_graph({false, false, false}, {})).unique);
    // two one-column components only swap under global reversal
    CHECK(verdict_of(make_graph({true, false, true, false}, {{0, 1}, {2, 3}})).unique);
    // extra probe-free components can split away from each other
    auto three = make_graph({true, false, false, false}, {{0, 1}});
    auto uq3 = verdict_of(three);
    CHECK_FALSE(uq3.unique);
    CHECK(!uq3.failing_test.has_value());  // placement, not a structural test
    CHECK(!uq3.witness.empty());
    // two components with more than two columns admit reorderings
    auto wide = make_graph({true, true, true, true, true, true},
                           {{0, 1}, {1, 2}, {3, 4}, {4, 5}});
    CHECK_FALSE(verdict_of(wide).unique);
    for (const auto* g : {&three, &wide}) CHECK(check_against_brute(*g) >= 2);
    CHECK(check_against_brute(make_graph({false, false, false}, {})) == 1);
    CHECK(check_against_brute(make_graph({true, false, true, false}, {{0, 1}, {2, 3}})) == 1);
}

TEST_CASE("verdict matches exhaustive enumeration on all small graphs") {
    int unique_seen = 0, multi_seen = 0;
    for (int n = 1; n <= 5; n++) {
        int pairs = n * (n - 1) / 2;
        for (int p = 0; p <= n; p++) {
            std::vector<bool> isp(n, false);
            for (int i = 0; i < p; i++) isp[i] = true;
            for (long long mask = 0; mask < (1LL << pairs); mask++) {
                std::vector<std::pair<int, int>> edges;
                int k = 0;
                bool bad = false;
                for (int u = 0; u < n && !bad; u++)
                    for (int v = u + 1; v < n; v++, k++)
                        if (mask >> k & 1) {
                            if (!isp[u] && !isp[v]) {
                                bad = true;
                                break;
                            }
                            edges.push_back({u, v});
                        }
                if (bad) continue;
                auto g = make_graph(isp, edges);
                auto out = recognize(g);
                if (!std::holds_alternative<RecognitionResult>(out)) continue;
                auto uq = is_unique_normal_model(g, std::get<RecognitionResult>(out));
                auto models = brute_force_normal_models(g);
                REQUIRE(!models.empty());
                REQUIRE(uq.unique == (models.size() == 1));
                (uq.unique ? unique_seen : multi_seen)++;
            }
        }
    }
    CHECK(unique_seen > 500);
    CHECK(multi_seen > 500);
}

TEST_CASE("verdict matches exhaustive enumeration on sampled six-vertex graphs") {
    std::mt19937 rng(99);
    int done = 0;
    while (done < 250) {
        std::vector<bool> isp(6);
        for (int i = 0; i < 6; i++) isp[i] = rng() % 2 == 0;
        int percent = 10 + static_cast<int>(rng() % 60);
        std::vector<std::pair<int, int>> edges;
        for (int u = 0; u < 6; u++)
            for (int v = u + 1; v < 6; v++)
                if ((isp[u] || isp[v]) && static_cast<int>(rng() % 100) < percent)
                    edges.push_back({u, v});
        auto g = make_graph(isp, edges);
        auto out = recognize(g);
        if (!std::holds_alternative<RecognitionResult>(out)) continue;
        auto uq = is_unique_normal_model(g, std::get<RecognitionResult>(out));
        auto models = brute_force_normal_models(g);
        REQUIRE(!models.empty());
        REQUIRE(uq.unique == (models.size() == 1));
        done++;
    }
}

TEST_CASE("missing trace artifacts are rejected") {
    auto g = make_graph({true, false}, {{0, 1}});
    RecognitionResult empty;
    CHECK_THROWS_AS(is_unique_normal_model(g, empty), InvalidInput);
    RecognitionResult no_artifacts;
    no_artifacts.trace.components.emplace_back();
    CHECK_THROWS_AS(is_unique_normal_model(g, no_artifacts), InvalidInput);
    CHECK(std::string(to_string(UniquenessTest::A)) == "A");
    CHECK(std::string(to_string(UniquenessTest::B)) == "B");
    CHECK(std::string(to_string(UniquenessTest::C)) == "C");
}

TEST_SUITE_END();
