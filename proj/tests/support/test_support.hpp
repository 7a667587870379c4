#pragma once

// Shared helpers and independent oracles for the test binaries. The oracles
// deliberately avoid the library's own algorithms.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cstdio>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "wlspec/graph.hpp"
#include "wlspec/hom.hpp"

namespace testsupport {

using wlspec::Edge;
using wlspec::Graph;

/// Every labelled graph on n vertices, edges in lexicographic pair order.
inline std::vector<Graph> labelled_graphs(int n) {
  std::vector<Edge> pairs;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
  std::vector<Graph> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
    std::vector<Edge> e;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (mask >> i & 1) e.push_back(pairs[i]);
    out.emplace_back(n, std::move(e));
  }
  return out;
}

/// One graph per isomorphism class for min_n <= n <= max_n.
inline std::vector<Graph> graphs_up_to_iso(int max_n, int min_n = 1) {
  std::vector<Graph> out;
  for (int n = min_n; n <= max_n; ++n) {
    std::size_t first = out.size();
    for (auto& g : labelled_graphs(n)) {
      bool seen = false;
      for (std::size_t i = first; i < out.size() && !seen; ++i) seen = wlspec::brute_isomorphic(g, out[i]);
      if (!seen) out.push_back(g);
    }
  }
  return out;
}

inline Graph random_graph(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> e;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (coin(rng)) e.emplace_back(a, b);
  return Graph(n, std::move(e));
}

/// Random spanning tree plus independent extra edges.
inline Graph random_connected_graph(int n, double p, std::mt19937_64& rng) {
  std::vector<Edge> e;
  for (int v = 1; v < n; ++v) e.emplace_back(std::uniform_int_distribution<int>(0, v - 1)(rng), v);
  std::bernoulli_distribution coin(p);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (coin(rng)) e.emplace_back(a, b);
  return Graph(n, std::move(e));
}

inline std::vector<int> random_permutation(int n, std::mt19937_64& rng) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

/// Bit-by-bit graph6 decoder for n < 63.
inline Graph decode_graph6_small(const std::string& s) {
  int n = s[0] - 63;
  std::vector<int> bits;
  for (std::size_t i = 1; i < s.size(); ++i)
    for (int b = 5; b >= 0; --b) bits.push_back(((s[i] - 63) >> b) & 1);
  std::vector<Edge> e;
  std::size_t idx = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i)
      if (bits.at(idx++)) e.emplace_back(i, j);
  return Graph(n, std::move(e));
}

/// hom matrix by enumerating all maps V(F) -> V(G).
inline std::vector<std::vector<std::int64_t>> brute_hom_matrix(const wlspec::BilabelledGraph& f, const Graph& g) {
  int nf = f.graph.order(), n = g.order();
  std::size_t rows = 1, cols = 1;
  for (std::size_t i = 0; i < f.in_labels.size(); ++i) rows *= n;
  for (std::size_t i = 0; i < f.out_labels.size(); ++i) cols *= n;
  std::vector<std::vector<std::int64_t>> m(rows, std::vector<std::int64_t>(cols, 0));
  std::vector<int> phi(nf, 0);
  while (true) {
    bool hom = true;
    for (auto [a, b] : f.graph.edges()) hom = hom && g.adjacent(phi[a], phi[b]);
    if (hom) {
      std::size_t r = 0, c = 0;
      for (int v : f.in_labels) r = r * n + phi[v];
      for (int v : f.out_labels) c = c * n + phi[v];
      ++m[r][c];
    }
    int i = nf - 1;
    while (i >= 0 && phi[i] == n - 1) phi[i--] = 0;
    if (i < 0) break;
    ++phi[i];
  }
  return m;
}

inline std::int64_t brute_hom_count(const Graph& f, const Graph& g) {
  auto m = brute_hom_matrix({f, {}, {}}, g);
  return m[0][0];
}

/// Colour refinement with map-based signatures; returns the per-graph colour
/// histograms of the stable joint colouring of g and h.
inline bool naive_wl1_equal(const Graph& g, const Graph& h) {
  if (g.order() != h.order()) return false;
  std::vector<const Graph*> gs = {&g, &h};
  std::vector<std::vector<int>> col = {std::vector<int>(g.order(), 0), std::vector<int>(h.order(), 0)};
  int classes = 1;
  while (true) {
    std::map<std::pair<int, std::vector<int>>, int> ids;
    std::vector<std::vector<std::pair<int, std::vector<int>>>> sig(2);
    for (int t = 0; t < 2; ++t)
      for (int v = 0; v < gs[t]->order(); ++v) {
        std::vector<int> nb;
        for (int w : gs[t]->neighbours(v)) nb.push_back(col[t][w]);
        std::sort(nb.begin(), nb.end());
        sig[t].push_back({col[t][v], nb});
        ids.emplace(sig[t].back(), 0);
      }
    int next = 0;
    for (auto& [k, v] : ids) v = next++;
    for (int t = 0; t < 2; ++t)
      for (int v = 0; v < gs[t]->order(); ++v) col[t][v] = ids[sig[t][v]];
    if (next == classes) break;
    classes = next;
  }
  auto a = col[0], b = col[1];
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

/// Folklore-free 2-WL oracle on ordered pairs with map signatures, to stability.
inline bool naive_wl2_equal(const Graph& g, const Graph& h) {
  if (g.order() != h.order()) return false;
  std::vector<const Graph*> gs = {&g, &h};
  int n = g.order();
  auto atp = [&](const Graph& x, int a, int b) { return a == b ? 0 : (x.adjacent(a, b) ? 1 : 2); };
  std::vector<std::vector<int>> col(2, std::vector<int>(n * n));
  for (int t = 0; t < 2; ++t)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) col[t][a * n + b] = atp(*gs[t], a, b);
  int classes = -1;
  while (true) {
    using Sig = std::pair<int, std::vector<std::array<int, 3>>>;
    std::map<Sig, int> ids;
    std::vector<std::vector<Sig>> sig(2);
    for (int t = 0; t < 2; ++t)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          std::vector<std::array<int, 3>> ms;
          for (int w = 0; w < n; ++w)
            ms.push_back({atp(*gs[t], a, w) * 3 + atp(*gs[t], b, w), col[t][w * n + b], col[t][a * n + w]});
          std::sort(ms.begin(), ms.end());
          sig[t].push_back({col[t][a * n + b], ms});
          ids.emplace(sig[t].back(), 0);
        }
    int next = 0;
    for (auto& [k, v] : ids) v = next++;
    for (int t = 0; t < 2; ++t)
      for (int i = 0; i < n * n; ++i) col[t][i] = ids[sig[t][i]];
    if (next == classes) break;
    classes = next;
  }
  auto a = col[0], b = col[1];
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

/// Commute distances as 2m times the effective resistance from the Laplacian
/// pseudo-inverse; connected graphs only.
inline Eigen::MatrixXd resistance_commute(const Graph& g) {
  int n = g.order();
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (auto [a, b] : g.edges()) {
    l(a, b) -= 1;
    l(b, a) -= 1;
    l(a, a) += 1;
    l(b, b) += 1;
  }
  Eigen::MatrixXd j = Eigen::MatrixXd::Constant(n, n, 1.0 / n);
  Eigen::MatrixXd pinv = (l + j).inverse() - j;
  Eigen::MatrixXd k(n, n);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) k(s, t) = 2.0 * g.edge_count() * (pinv(s, s) + pinv(t, t) - 2 * pinv(s, t));
  return k;
}

struct CliResult {
  int code = -1;
  std::string out;
};

inline CliResult run_cli(const std::string& args) {
  CliResult r;
  std::string cmd = std::string(WLSPEC_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace testsupport
