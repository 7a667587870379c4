#include <doctest.h>

#include "test_support.hpp"
#include "wlspec/fixtures.hpp"
#include "wlspec/hom.hpp"
#include "wlspec/tplus.hpp"
#include "wlspec/wl.hpp"

using namespace wlspec;

namespace {

bool contains_iso(const std::vector<TPlusPattern>& patterns, const Graph& g) {
  for (const auto& p : patterns)
    if (brute_isomorphic(p.pattern, g)) return true;
  return false;
}

}  // namespace

TEST_CASE("free tree counts") {
  const std::vector<std::size_t> expected = {1, 1, 1, 2, 3, 6, 11, 23};
  for (int n = 1; n <= 8; ++n) {
    auto trees = free_trees(n);
    CHECK(trees.size() == expected[n - 1]);
    for (const auto& t : trees) {
      CHECK(t.order() == n);
      CHECK(t.edge_count() == n - 1);
      CHECK(is_forest(t));
    }
    for (std::size_t i = 0; i < trees.size(); ++i)
      for (std::size_t j = i + 1; j < trees.size(); ++j) CHECK_FALSE(brute_isomorphic(trees[i], trees[j]));
  }
}

TEST_CASE("forest counts") {
  // Forests on exactly n vertices: 1, 2, 3, 6, 10, 20.
  const std::vector<int> exact = {1, 2, 3, 6, 10, 20};
  auto forests = forests_up_to(6);
  for (int n = 1; n <= 6; ++n) {
    int count = 0;
    for (const auto& f : forests) count += f.order() == n;
    CHECK(count == exact[n - 1]);
  }
}

TEST_CASE("contraction") {
  Graph p4 = path_graph(4);
  Graph c = contract(p4, {0, 3});
  CHECK(brute_isomorphic(c, complete_graph(3)));
  CHECK(brute_isomorphic(contract(p4, {0, 1}), path_graph(3)));
  CHECK(brute_isomorphic(contract(star_graph(3), {1, 2, 3}), complete_graph(2)));
}

TEST_CASE("pattern enumeration") {
  auto two = enumerate_tplus(2);
  CHECK(two.size() == 3u);
  auto three = enumerate_tplus(3);
  CHECK(three.size() == 6u);
  CHECK_FALSE(contains_iso(three, complete_graph(3)));
  auto four = enumerate_tplus(4);
  CHECK(contains_iso(four, complete_graph(3)));
  for (const auto& p : four) {
    CHECK(brute_isomorphic(p.pattern, contract(p.forest, p.contracted)));
    CHECK_FALSE(p.contracted.empty());
  }
  for (std::size_t i = 0; i < four.size(); ++i)
    for (std::size_t j = i + 1; j < four.size(); ++j) CHECK_FALSE(brute_isomorphic(four[i].pattern, four[j].pattern));
}

TEST_CASE("T+ homomorphism indistinguishability") {
  auto v = hom_indist_tplus(cycle_graph(6), fixture("2C3"), 4);
  CHECK(v.distinguished);
  REQUIRE(v.witness.has_value());
  CHECK(v.hom_g != v.hom_h);
  CHECK(v.hom_g == testsupport::brute_hom_count(v.witness->pattern, cycle_graph(6)));
  CHECK(v.hom_h == testsupport::brute_hom_count(v.witness->pattern, fixture("2C3")));
  auto same = hom_indist_tplus(cycle_graph(5), cycle_graph(5), 5);
  CHECK_FALSE(same.distinguished);
  CHECK(same.patterns_checked == static_cast<int>(enumerate_tplus(5).size()));
}

TEST_CASE("(1,1)-WL equivalent pairs are T+ equivalent") {
  auto [g, h] = build_counterexample_pair();
  REQUIRE(wl11_indistinguishable(g, h).indistinguishable);
  auto v = hom_indist_tplus(g, h, 5);
  CHECK_FALSE(v.distinguished);
  CHECK(v.patterns_checked == static_cast<int>(enumerate_tplus(5).size()));
  std::mt19937_64 rng(107);
  Graph x = testsupport::random_graph(7, 0.4, rng);
  CHECK_FALSE(hom_indist_tplus(x, x.relabelled(testsupport::random_permutation(7, rng)), 5).distinguished);
}

TEST_CASE("affine probe for the pair generators") {
  CHECK(pair_affine_probe(cycle_graph(4), cycle_graph(4)).feasible);
  CHECK_FALSE(pair_affine_probe(complete_graph(3), path_graph(3)).feasible);
  CHECK_FALSE(pair_affine_probe(cycle_graph(6), fixture("2C3")).feasible);
}
