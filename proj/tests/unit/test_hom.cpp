#include <doctest.h>

#include <limits>

#include "test_support.hpp"
#include "wlspec/errors.hpp"
#include "wlspec/fixtures.hpp"
#include "wlspec/hom.hpp"

using namespace wlspec;

namespace {

void check_against_brute(const BilabelledGraph& f, const Graph& g) {
  HomMatrix m = hom_matrix(f, g);
  auto brute = testsupport::brute_hom_matrix(f, g);
  REQUIRE(m.rows() == brute.size());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    REQUIRE(m.cols() == brute[r].size());
    for (std::size_t c = 0; c < m.cols(); ++c) CHECK(m(r, c) == brute[r][c]);
  }
}

BilabelledGraph random_bigraph(int in_arity, int out_arity, std::mt19937_64& rng) {
  int n = 1 + static_cast<int>(rng() % 4);
  BilabelledGraph f{testsupport::random_graph(n, 0.4, rng), {}, {}};
  for (int i = 0; i < in_arity; ++i) f.in_labels.push_back(static_cast<int>(rng() % n));
  for (int i = 0; i < out_arity; ++i) f.out_labels.push_back(static_cast<int>(rng() % n));
  return f;
}

}  // namespace

TEST_CASE("hom count examples") {
  CHECK(hom_count(complete_graph(3), fixture("2C3")) == 12);
  CHECK(hom_count(complete_graph(3), cycle_graph(6)) == 0);
  CHECK(hom_count(path_graph(2), complete_graph(3)) == 6);
  CHECK(hom_count(path_graph(3), cycle_graph(5)) == 20);
  CHECK(hom_count(cycle_graph(4), complete_graph(2)) == 2);
  CHECK(hom_count(Graph(0), cycle_graph(4)) == 1);
  CHECK(hom_count(edgeless_graph(3), cycle_graph(4)) == 64);
  CHECK(hom_count(complete_graph(2), edgeless_graph(5)) == 0);
}

TEST_CASE("hom counts agree with brute force") {
  std::mt19937_64 rng(73);
  for (int t = 0; t < 60; ++t) {
    Graph f = testsupport::random_graph(1 + t % 5, 0.5, rng);
    Graph g = testsupport::random_graph(1 + t % 6, 0.5, rng);
    auto expected = testsupport::brute_hom_count(f, g);
    CHECK(hom_count(f, g) == expected);
    CHECK(hom_count_backtracking(f, g) == expected);
    if (is_forest(f)) CHECK(hom_count_forest(f, g) == expected);
  }
  CHECK_THROWS_AS(hom_count_forest(complete_graph(3), complete_graph(3)), ArgumentError);
}

TEST_CASE("tree dynamic programme matches backtracking on larger trees") {
  std::mt19937_64 rng(79);
  for (int t = 0; t < 20; ++t) {
    int n = 2 + t % 8;
    std::vector<Edge> edges;
    for (int v = 1; v < n; ++v) edges.push_back({static_cast<int>(rng() % v), v});
    Graph tree(n, edges);
    Graph g = testsupport::random_graph(7, 0.4, rng);
    CHECK(hom_count_forest(tree, g) == hom_count_backtracking(tree, g));
  }
}

TEST_CASE("hom matrix examples") {
  Graph c4 = cycle_graph(4);
  HomMatrix id = hom_matrix(identity_bigraph(1), c4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) CHECK(id(r, c) == (r == c ? 1 : 0));
  HomMatrix e = hom_matrix(edge_bigraph(), c4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) CHECK(e(r, c) == (c4.adjacent(r, c) ? 1 : 0));
  CHECK(e.soe() == 8);
  auto gens = pair_generators();
  HomMatrix merge = hom_matrix(gens.merge, complete_graph(3));
  CHECK(merge.rows() == 9u);
  for (std::size_t r = 0; r < 9; ++r)
    for (std::size_t c = 0; c < 9; ++c) CHECK(merge(r, c) == (r == c && r % 4 == 0 ? 1 : 0));
  auto v = hom_vector({path_graph(3), {1}}, cycle_graph(5));
  CHECK(v == std::vector<std::int64_t>(5, 4));
}

TEST_CASE("hom matrices agree with brute force including repeated labels") {
  std::mt19937_64 rng(83);
  Graph g = testsupport::random_graph(4, 0.5, rng);
  const auto gens = pair_generators();
  for (const auto* f : gens.all()) check_against_brute(*f, g);
  for (int t = 0; t < 40; ++t) check_against_brute(random_bigraph(t % 3, (t / 3) % 3, rng), g);
}

TEST_CASE("series composition is matrix product; reversal is transpose") {
  std::mt19937_64 rng(89);
  for (int t = 0; t < 60; ++t) {
    Graph g = testsupport::random_graph(3 + t % 2, 0.5, rng);
    int a = 1 + t % 2, b = 1 + (t / 2) % 2, c = t % 3;
    auto f1 = random_bigraph(a, b, rng);
    auto f2 = random_bigraph(b, c, rng);
    BilabelledGraph composed;
    try {
      composed = series_compose(f1, f2);
    } catch (const CompositionError&) {
      continue;
    }
    CHECK(hom_matrix(composed, g) == hom_matrix(f1, g) * hom_matrix(f2, g));
    CHECK(hom_matrix(reverse(f1), g) == hom_matrix(f1, g).transpose());
  }
}

TEST_CASE("gluing product is the Hadamard product of hom vectors") {
  std::mt19937_64 rng(97);
  for (int t = 0; t < 40; ++t) {
    Graph g = testsupport::random_graph(4, 0.5, rng);
    auto x = random_bigraph(1 + t % 2, 0, rng);
    auto y = random_bigraph(1 + t % 2, 0, rng);
    LabelledGraph a{x.graph, x.in_labels}, b{y.graph, y.in_labels};
    LabelledGraph glued;
    try {
      glued = gluing_product(a, b);
    } catch (const CompositionError&) {
      continue;
    }
    auto va = hom_vector(a, g), vb = hom_vector(b, g), vg = hom_vector(glued, g);
    for (std::size_t i = 0; i < vg.size(); ++i) CHECK(vg[i] == va[i] * vb[i]);
  }
}

TEST_CASE("gluing adjacent labels into one vertex is a composition error") {
  BilabelledGraph f{complete_graph(2), {0, 1}, {0, 1}};
  BilabelledGraph merge{Graph(1), {0, 0}, {0, 0}};
  CHECK_THROWS_AS(series_compose(f, merge), CompositionError);
  CHECK_THROWS_AS(gluing_product({complete_graph(2), {0, 1}}, {Graph(1), {0, 0}}), CompositionError);
}

TEST_CASE("hom counts are multiplicative over disjoint unions") {
  std::mt19937_64 rng(101);
  for (int t = 0; t < 20; ++t) {
    Graph f1 = testsupport::random_graph(3, 0.6, rng), f2 = testsupport::random_graph(2, 0.6, rng);
    Graph g = testsupport::random_graph(5, 0.5, rng);
    CHECK(hom_count(disjoint_union(f1, f2).graph, g) == hom_count(f1, g) * hom_count(f2, g));
  }
}

TEST_CASE("checked arithmetic") {
  constexpr auto big = std::numeric_limits<std::int64_t>::max();
  CHECK(checked_add(2, 3) == 5);
  CHECK(checked_mul(-4, 5) == -20);
  CHECK_THROWS_AS(checked_add(big, 1), SizeError);
  CHECK_THROWS_AS(checked_mul(big / 2 + 1, 2), SizeError);
}

TEST_CASE("brute isomorphism") {
  CHECK(brute_isomorphic(cycle_graph(5), cycle_graph(5).complement()));
  CHECK_FALSE(brute_isomorphic(cycle_graph(6), fixture("2C3")));
  std::mt19937_64 rng(103);
  Graph g = testsupport::random_graph(8, 0.4, rng);
  CHECK(brute_isomorphic(g, g.relabelled(testsupport::random_permutation(8, rng))));
}
