#include <catch2/catch_amalgamated.hpp>

#include <utility>
#include <vector>

#include "ctrlobs/ctrlobs.hpp"
#include "instances.hpp"
#include "support.hpp"

using namespace ctrlobs;

TEST_CASE("maximum matching on example1's bipartite view", "[matching]") {
  const Matching m = maximum_matching(bipartite_of(instances::example1()));
  REQUIRE(m.size() == 2);
  // the ascending-scan engine settles on this particular maximum matching
  REQUIRE(m.pairs == std::vector<std::pair<int, int>>{{1, 2}, {2, 1}});
}

TEST_CASE("maximum matching covers the identity pattern", "[matching]") {
  const Matching m = maximum_matching(
      bipartite_of(make_structural_matrix(5, 5, {{1, 1}, {2, 2}, {3, 3},
                                                 {4, 4}, {5, 5}})));
  REQUIRE(m.size() == 5);
  for (int i = 1; i <= 5; ++i) REQUIRE(m.contains(i, i));
}

TEST_CASE("maximum matching sizes of the bundled instances", "[matching]") {
  REQUIRE(maximum_matching(bipartite_of(instances::example2())).size() == 6);
  REQUIRE(maximum_matching(bipartite_of(instances::example3())).size() == 9);
}

TEST_CASE("maximum matching on an empty graph", "[matching]") {
  const Matching m = maximum_matching(WeightedBipartiteGraph{4, 2, {}});
  REQUIRE(m.size() == 0);
  REQUIRE(m.total_weight == 0);
}

TEST_CASE("maximum matching validates its input", "[matching]") {
  REQUIRE_THROWS_AS(
      maximum_matching(WeightedBipartiteGraph{2, 2, {{3, 1, 1}}}),
      input_error);
  REQUIRE_THROWS_AS(
      maximum_matching(WeightedBipartiteGraph{2, 2, {{1, 1, 1}, {1, 1, 2}}}),
      input_error);
}

TEST_CASE("maximum matching equals exhaustive search on random graphs",
          "[matching]") {
  for (int trial = 0; trial < 500; ++trial) {
    const int nl = 1 + trial % 7, nr = 1 + (trial / 3) % 7;
    const auto g = testsupport::random_bipartite(
        nl, nr, 0.1 + 0.12 * (trial % 8), 50000 + trial);
    const Matching m = maximum_matching(g);
    INFO("trial " << trial);
    REQUIRE(testsupport::is_valid_matching(g, m));
    REQUIRE(m.size() == testsupport::dp_max_matching_size(g));
  }
}

TEST_CASE("maximum matching is deterministic", "[matching]") {
  const auto g = testsupport::random_bipartite(7, 7, 0.5, 99);
  const Matching a = maximum_matching(g), b = maximum_matching(g);
  REQUIRE(a.pairs == b.pairs);
  REQUIRE(a.total_weight == b.total_weight);
}

TEST_CASE("perfect assignment on a 2x2 table", "[matching]") {
  WeightTable t(2, 0);
  t.set(1, 1, 3);
  t.set(1, 2, 1);
  t.set(2, 1, 1);
  t.set(2, 2, 2);
  const Matching m = max_weight_perfect_matching(t);
  REQUIRE(m.pairs == std::vector<std::pair<int, int>>{{1, 1}, {2, 2}});
  REQUIRE(m.total_weight == 5);
}

TEST_CASE("perfect assignment follows the only allowed diagonal",
          "[matching]") {
  WeightTable t(3);
  t.set(1, 2, 7);
  t.set(2, 3, 7);
  t.set(3, 1, 7);
  const Matching m = max_weight_perfect_matching(t);
  REQUIRE(m.pairs == std::vector<std::pair<int, int>>{{1, 2}, {2, 3}, {3, 1}});
  REQUIRE(m.total_weight == 21);
}

TEST_CASE("forbidden cells are never selected", "[matching]") {
  // (1,1) is the single best cell, but completing it needs forbidden (2,2)
  WeightTable t(2);
  t.set(1, 1, 100);
  t.set(1, 2, -7);
  t.set(2, 1, -9);
  const Matching m = max_weight_perfect_matching(t);
  REQUIRE(m.pairs == std::vector<std::pair<int, int>>{{1, 2}, {2, 1}});
  REQUIRE(m.total_weight == -16);
}

TEST_CASE("infeasible assignment names an unmatchable node", "[matching]") {
  WeightTable t(2);
  t.set(1, 1, 1);
  t.set(2, 1, 1);  // both rows compete for column 1
  REQUIRE_THROWS_AS(max_weight_perfect_matching(t), infeasible_error);
  REQUIRE_THROWS_WITH(max_weight_perfect_matching(t),
                      Catch::Matchers::ContainsSubstring("left node"));
}

TEST_CASE("empty table yields an empty assignment", "[matching]") {
  REQUIRE(max_weight_perfect_matching(WeightTable(0)).size() == 0);
}

TEST_CASE("perfect assignment equals permutation brute force", "[matching]") {
  for (int trial = 0; trial < 500; ++trial) {
    const int k = 1 + trial % 6;
    const auto t =
        testsupport::random_feasible_table(k, 0.2 + 0.1 * (trial % 5),
                                           80000 + trial);
    const auto best = testsupport::brute_best_assignment(t);
    REQUIRE(best.has_value());
    const Matching m = max_weight_perfect_matching(t);
    INFO("trial " << trial << " size " << k);
    REQUIRE(m.size() == k);
    for (const auto& [r, c] : m.pairs) REQUIRE(t.allowed(r, c));
    REQUIRE(m.total_weight == *best);
  }
}

TEST_CASE("mwmm picks the single edge", "[matching]") {
  const Matching m = mwmm(WeightedBipartiteGraph{3, 2, {{2, 1, 4}}});
  REQUIRE(m.pairs == std::vector<std::pair<int, int>>{{2, 1}});
  REQUIRE(m.total_weight == 4);
}

TEST_CASE("mwmm on an empty graph", "[matching]") {
  REQUIRE(mwmm(WeightedBipartiteGraph{0, 0, {}}).size() == 0);
  REQUIRE(mwmm(WeightedBipartiteGraph{3, 3, {}}).size() == 0);
}

TEST_CASE("mwmm: cardinality dominates weight", "[matching]") {
  const WeightedBipartiteGraph g{2, 2, {{1, 1, 100}, {1, 2, 1}, {2, 1, 1}}};
  const Matching m = mwmm(g);
  REQUIRE(m.size() == 2);
  REQUIRE(m.total_weight == 2);  // 100 alone loses to two matched pairs
}

TEST_CASE("mwmm maximizes weight among maximum matchings", "[matching]") {
  const WeightedBipartiteGraph g{
      2, 4, {{1, 3, 5}, {2, 3, 9}, {2, 4, 1}}};
  const Matching m = mwmm(g);
  REQUIRE(m.pairs == std::vector<std::pair<int, int>>{{1, 3}, {2, 4}});
  REQUIRE(m.total_weight == 6);
}

TEST_CASE("mwmm handles negative weights", "[matching]") {
  const WeightedBipartiteGraph g{
      2, 2, {{1, 1, -5}, {1, 2, -1}, {2, 1, -1}, {2, 2, -7}}};
  const Matching m = mwmm(g);
  REQUIRE(m.size() == 2);
  REQUIRE(m.total_weight == -2);
}

TEST_CASE("mwmm on example1's doubled pattern", "[matching]") {
  // Weight 12 is the optimum; the plain engine lands on the variant whose
  // dedicated edges sit on state 3 (the solver layers its own tie-break on
  // top, see the placement tests).
  const Matching m = mwmm(build_placement_graph(instances::example1()));
  REQUIRE(m.size() == 6);
  REQUIRE(m.total_weight == 12);
  REQUIRE(m.pairs == std::vector<std::pair<int, int>>{
                         {1, 2}, {2, 1}, {3, 6}, {4, 4}, {5, 5}, {6, 3}});
}

TEST_CASE("mwmm equals enumeration on random graphs", "[matching]") {
  for (int trial = 0; trial < 300; ++trial) {
    const int nl = 1 + trial % 6, nr = 1 + (trial / 2) % 6;
    const auto g = testsupport::random_bipartite(
        nl, nr, 0.15 + 0.13 * (trial % 6), 120000 + trial);
    const Matching m = mwmm(g);
    INFO("trial " << trial);
    REQUIRE(testsupport::is_valid_matching(g, m));
    REQUIRE(m.size() == testsupport::dp_max_matching_size(g));
    const auto all = enumerate_maximum_matchings(g);
    REQUIRE_FALSE(all.truncated);
    long long best = 0;
    bool first = true;
    for (const auto& cand : all.matchings) {
      if (first || cand.total_weight > best) best = cand.total_weight;
      first = false;
    }
    if (!first) REQUIRE(m.total_weight == best);
  }
}

TEST_CASE("mwmm is deterministic", "[matching]") {
  const auto g = testsupport::random_bipartite(6, 6, 0.5, 4242);
  REQUIRE(mwmm(g).pairs == mwmm(g).pairs);
}
