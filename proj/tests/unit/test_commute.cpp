#include <doctest.h>

#include <cmath>
#include <limits>
#include <map>
#include <utility>

#include "test_support.hpp"
#include "wlspec/fixtures.hpp"
#include "wlspec/spectral.hpp"
#include "wlspec/wl.hpp"

using namespace wlspec;

TEST_CASE("commute distance examples") {
  auto k2 = commute_distances(complete_graph(2));
  CHECK(k2.kappa(0, 1) == doctest::Approx(2.0));
  CHECK(k2.hitting(0, 1) == doctest::Approx(1.0));
  auto k3 = commute_distances(complete_graph(3));
  for (int s = 0; s < 3; ++s)
    for (int t = 0; t < 3; ++t) CHECK(k3.kappa(s, t) == doctest::Approx(s == t ? 0.0 : 4.0));
  auto c = commute_distances(fixture("C6+K1"));
  for (int s = 0; s < 6; ++s) {
    CHECK(std::isinf(c.kappa(s, 6)));
    CHECK(std::isinf(c.kappa(6, s)));
  }
  CHECK(c.kappa(6, 6) == 0.0);
  CHECK(c.kappa(0, 3) == doctest::Approx(18.0));  // 2m * R_eff = 12 * 3/2
}

TEST_CASE("commute distances match effective resistance and hitting-time structure") {
  std::mt19937_64 rng(67);
  for (int t = 0; t < 50; ++t) {
    int n = 2 + t % 11;
    Graph g = testsupport::random_connected_graph(n, 0.25, rng);
    auto r = commute_distances(g);
    auto oracle = testsupport::resistance_commute(g);
    CHECK(r.oracle_deviation <= 1e-8 * std::max(1.0, r.kappa.cwiseAbs().maxCoeff()));
    for (int s = 0; s < n; ++s) {
      CHECK(r.hitting(s, s) == 0.0);
      CHECK(r.kappa(s, s) == 0.0);
      for (int u = 0; u < n; ++u) {
        CHECK(r.kappa(s, u) == doctest::Approx(r.kappa(u, s)).epsilon(1e-10));
        CHECK(r.kappa(s, u) == doctest::Approx(r.hitting(s, u) + r.hitting(u, s)).epsilon(1e-9));
        CHECK(std::abs(r.kappa(s, u) - oracle(s, u)) <= 1e-8 * std::max(1.0, oracle(s, u)));
      }
    }
    auto h = hitting_times(g);
    CHECK((h - r.hitting).cwiseAbs().maxCoeff() <= 1e-8 * std::max(1.0, h.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("commute distances follow (1,1)-WL colours in both directions") {
  auto [g, h] = build_counterexample_pair();
  auto [cg, ch] = wl11_joint_pair_colours(g, h);
  auto kg = commute_distances(g).kappa, kh = commute_distances(h).kappa;
  int n = g.order();
  // kappa(s,t) = K(s,s) + K(t,t) - K(s,t) - K(t,s) needs the colours of both
  // ordered pairs, so only pairs matching in both directions must agree.
  std::map<std::pair<int, int>, double> value;
  int compared = 0;
  auto visit = [&](const Eigen::MatrixXd& kappa, const Colouring& c) {
    for (int s = 0; s < n; ++s)
      for (int t = 0; t < n; ++t) {
        std::pair<int, int> key{c.colour[s * n + t], c.colour[t * n + s]};
        auto [it, fresh] = value.emplace(key, kappa(s, t));
        if (!fresh) {
          ++compared;
          CHECK(std::abs(it->second - kappa(s, t)) <= 1e-8 * std::max(1.0, it->second));
        }
      }
  };
  visit(kg, cg);
  visit(kh, ch);
  CHECK(compared > 0);
}

TEST_CASE("commute multisets") {
  // The gadget pair is (1,1)-WL equivalent yet its commute multisets differ:
  // X-to-Y distances depend on whether the gadgets hang off adjacent or
  // opposite backbone vertices.
  auto [g, h] = build_counterexample_pair();
  CHECK(wl11_indistinguishable(g, h).indistinguishable);
  CHECK_FALSE(commute_multiset_equal(g, h));
  auto mg = commute_multiset(g), mh = commute_multiset(h);
  CHECK(std::count_if(mg.begin(), mg.end(), [](double v) { return std::abs(v - 858.0 / 5) < 1e-8; }) == 36);
  CHECK(std::count_if(mh.begin(), mh.end(), [](double v) { return std::abs(v - 858.0 / 5) < 1e-8; }) == 0);
  CHECK(std::count_if(mg.begin(), mg.end(), [](double v) { return std::abs(v - 884.0 / 5) < 1e-8; }) == 72);
  CHECK(std::count_if(mh.begin(), mh.end(), [](double v) { return std::abs(v - 884.0 / 5) < 1e-8; }) == 144);
  CHECK_FALSE(commute_multiset_equal(cycle_graph(6), fixture("2C3")));
  std::mt19937_64 rng(71);
  Graph x = testsupport::random_connected_graph(9, 0.3, rng);
  CHECK(commute_multiset_equal(x, x.relabelled(testsupport::random_permutation(9, rng))));
  auto m = commute_multiset(fixture("2C3"));
  CHECK(m.size() == 15u);
  CHECK(std::count_if(m.begin(), m.end(), [](double v) { return std::isinf(v); }) == 9);
  CHECK_FALSE(commute_multiset_equal(cycle_graph(5), cycle_graph(6)));
}
