#include "wlspec/tplus.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <string>

#include "wlspec/errors.hpp"
#include "wlspec/hom.hpp"
#include "wlspec/rational.hpp"

namespace wlspec {
namespace {

// AHU encoding of the tree rooted at `root`.
std::string rooted_code(const Graph& t, int root, int parent) {
  std::vector<std::string> kids;
  for (int w : t.neighbours(root))
    if (w != parent) kids.push_back(rooted_code(t, w, root));
  std::sort(kids.begin(), kids.end());
  std::string s = "(";
  for (const auto& k : kids) s += k;
  return s + ")";
}

std::vector<int> centres(const Graph& t) {
  int n = t.order();
  std::vector<int> deg(n), layer, alive(n, 1);
  for (int v = 0; v < n; ++v) {
    deg[v] = t.degree(v);
    if (deg[v] <= 1) layer.push_back(v);
  }
  int remaining = n;
  while (remaining > 2) {
    std::vector<int> next;
    for (int v : layer) {
      alive[v] = 0;
      --remaining;
      for (int w : t.neighbours(v))
        if (alive[w] && --deg[w] == 1) next.push_back(w);
    }
    layer = std::move(next);
  }
  std::vector<int> c;
  for (int v = 0; v < n; ++v)
    if (alive[v]) c.push_back(v);
  return c;
}

std::string tree_code(const Graph& t) {
  std::string best;
  for (int c : centres(t)) {
    std::string s = rooted_code(t, c, -1);
    if (best.empty() || s < best) best = s;
  }
  return best;
}

struct InvariantKey {
  int n;
  int m;
  std::vector<int> degrees;
  auto operator<=>(const InvariantKey&) const = default;
};

InvariantKey key_of(const Graph& g) {
  InvariantKey k{g.order(), g.edge_count(), {}};
  for (int v = 0; v < g.order(); ++v) k.degrees.push_back(g.degree(v));
  std::sort(k.degrees.begin(), k.degrees.end());
  return k;
}

}  // namespace

Graph contract(const Graph& forest, const std::vector<int>& b) {
  if (b.empty()) throw ArgumentError("contracted set must be non-empty");
  int n = forest.order();
  std::vector<char> in_b(n, 0);
  for (int v : b) {
    if (v < 0 || v >= n) throw ArgumentError("contracted vertex out of range");
    in_b[v] = 1;
  }
  int rep = *std::min_element(b.begin(), b.end());
  std::vector<int> map(n, -1);
  int next = 0;
  for (int v = 0; v < n; ++v) {
    if (in_b[v] && v != rep) continue;
    map[v] = next++;
  }
  for (int v = 0; v < n; ++v)
    if (in_b[v]) map[v] = map[rep];
  std::vector<Edge> edges;
  for (auto [u, v] : forest.edges())
    if (map[u] != map[v]) edges.emplace_back(map[u], map[v]);
  return Graph(next, std::move(edges));
}

std::vector<Graph> free_trees(int vertices) {
  if (vertices < 1) return {};
  std::vector<Graph> level = {Graph(1)};
  for (int s = 1; s < vertices; ++s) {
    std::map<std::string, Graph> next;
    for (const auto& t : level)
      for (int v = 0; v < s; ++v) {
        std::vector<Edge> e = t.edges();
        e.emplace_back(v, s);
        Graph grown(s + 1, std::move(e));
        next.emplace(tree_code(grown), grown);
      }
    level.clear();
    for (auto& [_, g] : next) level.push_back(g);
  }
  return level;
}

std::vector<Graph> forests_up_to(int max_vertices) {
  std::vector<std::vector<Graph>> trees(max_vertices + 1);
  std::vector<std::pair<int, int>> catalogue;  // (size, index)
  for (int s = 1; s <= max_vertices; ++s) {
    trees[s] = free_trees(s);
    for (int i = 0; i < static_cast<int>(trees[s].size()); ++i) catalogue.emplace_back(s, i);
  }
  std::vector<Graph> out;
  std::vector<int> chosen;
  // Multisets of catalogue entries with non-decreasing index.
  std::function<void(std::size_t, int)> rec = [&](std::size_t from, int used) {
    if (!chosen.empty()) {
      Graph f(0);
      for (int c : chosen) f = disjoint_union(f, trees[catalogue[c].first][catalogue[c].second]).graph;
      out.push_back(std::move(f));
    }
    for (std::size_t c = from; c < catalogue.size(); ++c) {
      if (used + catalogue[c].first > max_vertices) continue;
      chosen.push_back(static_cast<int>(c));
      rec(c, used + catalogue[c].first);
      chosen.pop_back();
    }
  };
  rec(0, 0);
  std::stable_sort(out.begin(), out.end(), [](const Graph& a, const Graph& b) { return a.order() < b.order(); });
  return out;
}

std::vector<TPlusPattern> enumerate_tplus(int max_vertices) {
  if (max_vertices > 8) throw SizeError("pattern enumeration is capped at 8 forest vertices");
  if (max_vertices < 1) return {};
  std::vector<TPlusPattern> out;
  std::map<InvariantKey, std::vector<std::size_t>> buckets;
  for (const Graph& forest : forests_up_to(max_vertices)) {
    int n = forest.order();
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      std::vector<int> b;
      for (int v = 0; v < n; ++v)
        if (mask & (1u << v)) b.push_back(v);
      Graph p = contract(forest, b);
      auto& bucket = buckets[key_of(p)];
      bool seen = std::any_of(bucket.begin(), bucket.end(),
                              [&](std::size_t i) { return brute_isomorphic(out[i].pattern, p); });
      if (seen) continue;
      bucket.push_back(out.size());
      out.push_back({forest, std::move(b), std::move(p)});
    }
  }
  return out;
}

TPlusVerdict hom_indist_tplus(const Graph& g, const Graph& h, int max_vertices) {
  TPlusVerdict v;
  v.bound = max_vertices;
  for (const auto& p : enumerate_tplus(max_vertices)) {
    ++v.patterns_checked;
    std::int64_t a = hom_count(p.pattern, g);
    std::int64_t b = hom_count(p.pattern, h);
    if (a != b) {
      v.distinguished = true;
      v.witness = p;
      v.hom_g = a;
      v.hom_h = b;
      return v;
    }
  }
  return v;
}

AffineProbe pair_affine_probe(const Graph& g, const Graph& h) {
  if (g.order() > 6 || h.order() > 6) throw SizeError("affine probe is limited to 6 vertices");
  AffineProbe probe;
  if (g.order() != h.order()) return probe;
  int n = g.order();
  int side = n * n;
  probe.variables = side * side;
  SparseRationalSystem sys(probe.variables);
  auto var = [&](int row, int col) { return row * side + col; };
  const PairGenerators gens = pair_generators();
  for (const BilabelledGraph* b : gens.all()) {
    HomMatrix bg = hom_matrix(*b, g);
    HomMatrix bh = hom_matrix(*b, h);
    for (int r = 0; r < side; ++r)
      for (int c = 0; c < side; ++c) {
        std::vector<SparseRationalSystem::Term> terms;
        for (int k = 0; k < side; ++k) {
          if (bg(k, c) != 0) terms.emplace_back(var(r, k), mpq_class(bg(k, c)));
          if (bh(r, k) != 0) terms.emplace_back(var(k, c), mpq_class(-bh(r, k)));
        }
        sys.add_equation(std::move(terms), 0);
      }
  }
  for (int r = 0; r < side; ++r) {
    std::vector<SparseRationalSystem::Term> row, col;
    for (int k = 0; k < side; ++k) {
      row.emplace_back(var(r, k), 1);
      col.emplace_back(var(k, r), 1);
    }
    sys.add_equation(std::move(row), 1);
    sys.add_equation(std::move(col), 1);
  }
  probe.equations = sys.equations();
  probe.feasible = sys.solve().consistent;
  return probe;
}

}  // namespace wlspec
