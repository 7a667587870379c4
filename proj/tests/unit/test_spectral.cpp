#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "test_support.hpp"
#include "wlspec/errors.hpp"
#include "wlspec/fixtures.hpp"
#include "wlspec/matrix_map.hpp"
#include "wlspec/spectral.hpp"
#include "wlspec/wl.hpp"

using namespace wlspec;

namespace {

RationalMatrix exact_of(const std::string& map, const Graph& g) { return evaluate(MatrixMapId::parse(map), g).exact; }

std::vector<std::pair<double, int>> groups(const SpectrumSummary& s) {
  std::vector<std::pair<double, int>> out;
  for (const auto& e : s.eigenvalues) out.emplace_back(e.value, e.multiplicity);
  return out;
}

void check_groups(const SpectrumSummary& s, const std::vector<std::pair<double, int>>& expected) {
  auto got = groups(s);
  REQUIRE(got.size() == expected.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    CHECK(got[i].first == doctest::Approx(expected[i].first).epsilon(1e-9));
    CHECK(got[i].second == expected[i].second);
  }
}

std::vector<Graph> corpus() {
  std::vector<Graph> out = {complete_graph(3), path_graph(4), cycle_graph(5), star_graph(3), fixture("2C3"),
                            fixture("C4+K1")};
  std::mt19937_64 rng(53);
  for (int i = 0; i < 4; ++i) out.push_back(testsupport::random_connected_graph(6, 0.3, rng));
  return out;
}

}  // namespace

TEST_CASE("matrix map evaluation examples") {
  RationalMatrix s(2, 2);
  s(0, 1) = -1;
  s(1, 0) = -1;
  CHECK(exact_of("seidel", complete_graph(2)) == s);
  auto l = exact_of("laplacian", complete_graph(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(l(i, j) == (i == j ? 2 : -1));
  auto p = evaluate(MatrixMapId::projection(MatrixMapId::adjacency(), 1), complete_graph(2));
  CHECK(p.layer == MatrixValue::Layer::Float);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(p.real(i, j) == doctest::Approx(0.5));
  auto none = evaluate(MatrixMapId::projection(MatrixMapId::adjacency(), 3), complete_graph(2));
  CHECK(none.real.isZero());
}

TEST_CASE("matrix map identities between leaves") {
  std::mt19937_64 rng(59);
  for (int t = 0; t < 10; ++t) {
    Graph g = testsupport::random_graph(6, 0.5, rng);
    auto a = exact_of("adjacency", g), d = exact_of("degree", g);
    CHECK(exact_of("laplacian", g) == d - a);
    CHECK(exact_of("signlessLaplacian", g) == d + a);
    auto ac = exact_of("complementAdjacency", g);
    CHECK(ac == exact_of("allOnes", g) - a - RationalMatrix::identity(6));
    CHECK(exact_of("seidel", g) == ac - a);
    CHECK(exact_of("edgeCount", g) == RationalMatrix::identity(6).scaled(g.edge_count()));
  }
}

TEST_CASE("map ids parse back from their names") {
  for (const char* text : {"adjacency", "sum(laplacian,seidel)", "product(adjacency,transpose(degree))",
                           "scale(seidel,1/2)", "inverse(signlessLaplacian)", "heatKernel(0.5)",
                           "projection(adjacency,2)"}) {
    CHECK(MatrixMapId::parse(text).name() == text);
  }
  CHECK_THROWS_AS(MatrixMapId::parse("frobnicate"), ParseError);
  CHECK_THROWS_AS(MatrixMapId::parse("sum(adjacency)"), ParseError);
}

TEST_CASE("random-walk maps reject isolated vertices") {
  try {
    evaluate(MatrixMapId::parse("rwLaplacian"), fixture("C4+K1"));
    FAIL("expected a numeric error");
  } catch (const NumericError& e) {
    CHECK(std::string(e.what()).find("4") != std::string::npos);
  }
  CHECK_THROWS_AS(evaluate(MatrixMapId::parse("symLaplacian"), fixture("C4+K1")), NumericError);
}

TEST_CASE("singular inverse is the zero matrix") {
  auto m = evaluate(MatrixMapId::parse("inverse(laplacian)"), cycle_graph(4));
  CHECK(m.exact.is_zero());
  auto inv = evaluate(MatrixMapId::parse("inverse(signlessLaplacian)"), complete_graph(3));
  CHECK(inv.exact * exact_of("signlessLaplacian", complete_graph(3)) == RationalMatrix::identity(3));
}

TEST_CASE("spectrum examples") {
  auto l = spectrum(MatrixMapId::laplacian(), complete_graph(3));
  check_groups(l, {{0, 1}, {3, 2}});
  REQUIRE(l.characteristic_polynomial.has_value());
  CHECK(*l.characteristic_polynomial == std::vector<mpq_class>{0, 9, -6, 1});
  check_groups(spectrum(MatrixMapId::adjacency(), cycle_graph(6)), {{-2, 1}, {-1, 2}, {1, 2}, {2, 1}});
  check_groups(spectrum(MatrixMapId::adjacency(), fixture("2C3")), {{-1, 4}, {2, 2}});
  check_groups(spectrum(MatrixMapId::adjacency(), edgeless_graph(4)), {{0, 4}});
  // D^-1 A on C4: eigenvalues of the walk matrix -1, 0 (x2), 1.
  check_groups(spectrum(MatrixMapId::parse("rwLaplacian"), cycle_graph(4)), {{-1, 1}, {0, 2}, {1, 1}});
}

TEST_CASE("multiplicities sum to n and float spectra match exact polynomials") {
  for (const auto& g : corpus())
    for (const auto& id : MatrixMapId::integer_maps()) {
      auto s = spectrum(id, g);
      int total = 0;
      for (const auto& e : s.eigenvalues) total += e.multiplicity;
      CHECK(total == g.order());
      REQUIRE(s.characteristic_polynomial.has_value());
      for (const auto& e : s.eigenvalues) {
        double value = 0;
        for (int i = g.order(); i >= 0; --i) value = value * e.value + (*s.characteristic_polynomial)[i].get_d();
        CHECK(std::abs(value) < 1e-6 * std::pow(1 + std::abs(e.value), g.order()));
      }
    }
}

TEST_CASE("cospectrality examples") {
  auto [g, h] = build_counterexample_pair();
  CHECK(cospectral(MatrixMapId::adjacency(), g, h));
  CHECK(cospectral(MatrixMapId::adjacency(), fixture("C4+K1"), fixture("K1_4")));
  CHECK(*spectrum(MatrixMapId::adjacency(), fixture("K1_4")).characteristic_polynomial ==
        std::vector<mpq_class>{0, 0, 0, -4, 0, 1});
  CHECK_FALSE(cospectral(MatrixMapId::laplacian(), cycle_graph(6), fixture("2C3")));
  CHECK_FALSE(cospectral(MatrixMapId::adjacency(), cycle_graph(6), fixture("2C3")));
  CHECK_FALSE(cospectral(MatrixMapId::adjacency(), cycle_graph(6), cycle_graph(5)));
  CHECK(cospectral(MatrixMapId::parse("heatKernel(0.3)"), cycle_graph(5), cycle_graph(5)));
}

TEST_CASE("Fuerer invariant examples") {
  auto k2 = fuerer_invariant(complete_graph(2));
  CHECK(k2.multiplicities == std::vector<int>{1, 1});
  REQUIRE(k2.per_vertex.size() == 2u);
  auto half = static_cast<std::int64_t>(std::llround(0.5 / k2.grid));
  for (const auto& p : k2.per_vertex) {
    CHECK(p.diagonal == std::vector<std::int64_t>{half, half});
    std::vector<std::vector<std::int64_t>> off = {{-half, half}, {half, half}};
    CHECK(p.off_diagonal == off);
  }
  CHECK_FALSE(fuerer_invariant(cycle_graph(6)) == fuerer_invariant(fixture("2C3")));
  std::mt19937_64 rng(61);
  Graph g = testsupport::random_graph(8, 0.4, rng);
  CHECK(fuerer_invariant(g) == fuerer_invariant(g.relabelled(testsupport::random_permutation(8, rng))));
  CHECK(fuerer_invariant(g).per_vertex.size() == 8u);
}

TEST_CASE("projections are idempotent, complete, and have integer traces") {
  for (const auto& g : corpus()) {
    auto s = spectrum(MatrixMapId::adjacency(), g);
    Eigen::MatrixXd a = evaluate(MatrixMapId::adjacency(), g).to_double();
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(g.order(), g.order());
    for (const auto& e : s.eigenvalues) {
      Eigen::MatrixXd p = evaluate(MatrixMapId::projection(MatrixMapId::adjacency(), e.value), g).real;
      CHECK((p * p - p).cwiseAbs().maxCoeff() < 1e-8);
      CHECK((a * p - e.value * p).cwiseAbs().maxCoeff() < 1e-8);
      CHECK(std::abs(p.trace() - e.multiplicity) < 1e-6);
      sum += p;
    }
    CHECK((sum - Eigen::MatrixXd::Identity(g.order(), g.order())).cwiseAbs().maxCoeff() < 1e-8);
  }
  // Non-symmetric base: projections of D^-1 A.
  Graph p4 = path_graph(4);
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(4, 4);
  for (const auto& e : spectrum(MatrixMapId::parse("rwLaplacian"), p4).eigenvalues) {
    Eigen::MatrixXd p = evaluate(MatrixMapId::projection(MatrixMapId::parse("rwLaplacian"), e.value), p4).real;
    CHECK((p * p - p).cwiseAbs().maxCoeff() < 1e-8);
    sum += p;
  }
  CHECK((sum - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("averaging matrices commute with every map") {
  std::vector<std::string> exact_maps = {"adjacency", "degree", "laplacian", "signlessLaplacian",
                                         "complementAdjacency", "seidel", "sum(adjacency,product(degree,seidel))",
                                         "transpose(product(laplacian,adjacency))", "scale(seidel,2/3)",
                                         "inverse(signlessLaplacian)"};
  std::vector<std::string> float_maps = {"heatKernel(0.7)", "projection(adjacency,1)", "symLaplacian",
                                         "product(heatKernel(0.2),adjacency)"};
  for (const auto& g : corpus()) {
    bool isolated = false;
    for (int v = 0; v < g.order(); ++v) isolated = isolated || g.degree(v) == 0;
    for (int v = 0; v < g.order(); ++v) {
      auto m = averaging_matrix(g, v);
      for (int r = 0; r < m.rows(); ++r) {
        mpq_class row = 0;
        for (int c = 0; c < m.cols(); ++c) row += m(r, c);
        CHECK(row == 1);
      }
      for (const auto& name : exact_maps) CHECK(e1_commutation_defect(MatrixMapId::parse(name), g, v) == 0.0);
      if (!isolated) CHECK(e1_commutation_defect(MatrixMapId::parse("rwLaplacian"), g, v) == 0.0);
      for (const auto& name : float_maps) {
        if (isolated && name == "symLaplacian") continue;
        CHECK(e1_commutation_defect(MatrixMapId::parse(name), g, v) < 1e-8);
      }
    }
  }
}

TEST_CASE("entry colour consistency") {
  auto [g, h] = build_counterexample_pair();
  auto devs = entry_colour_consistency_check(
      g, h, {MatrixMapId::adjacency(), MatrixMapId::laplacian(), MatrixMapId::parse("seidel")});
  for (const auto& d : devs) {
    CHECK(d.exact);
    CHECK(d.max_deviation == 0.0);
  }
  std::vector<MatrixMapId> projections;
  for (const auto& e : spectrum(MatrixMapId::adjacency(), g).eigenvalues)
    projections.push_back(MatrixMapId::projection(MatrixMapId::adjacency(), e.value));
  for (const auto& d : entry_colour_consistency_check(g, h, projections)) CHECK(d.max_deviation <= 1e-8);
  Graph c5 = cycle_graph(5);
  CHECK(entry_colour_consistency_check(c5, c5, {MatrixMapId::adjacency()})[0].max_deviation == 0.0);
  CHECK_THROWS_AS(entry_colour_consistency_check(cycle_graph(6), fixture("2C3"), {MatrixMapId::adjacency()}),
                  ContractError);
}

TEST_CASE("power distances equal BFS distances") {
  for (const auto& g : corpus()) CHECK(power_distances(g) == bfs_distances(g));
}
