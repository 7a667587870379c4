#include "wlspec/graph.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

#include "wlspec/errors.hpp"

namespace wlspec {

Graph::Graph(int n) : Graph(n, {}) {}

Graph::Graph(int n, std::vector<Edge> edges) : n_(n) {
  if (n < 0) throw ArgumentError("negative vertex count");
  for (auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw ArgumentError("edge {" + std::to_string(u) + "," + std::to_string(v) +
                          "} out of range for n=" + std::to_string(n));
    }
    if (u == v) throw ArgumentError("loop at vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);
  nbrs_.assign(n, {});
  adj_.assign(static_cast<std::size_t>(n) * n, 0);
  for (auto [u, v] : edges_) {
    nbrs_[u].push_back(v);
    nbrs_[v].push_back(u);
    adj_[static_cast<std::size_t>(u) * n + v] = 1;
    adj_[static_cast<std::size_t>(v) * n + u] = 1;
  }
  for (auto& list : nbrs_) std::sort(list.begin(), list.end());
}

Graph Graph::relabelled(std::span<const int> perm) const {
  if (static_cast<int>(perm.size()) != n_) throw ArgumentError("permutation has wrong length");
  std::vector<char> seen(n_, 0);
  for (int p : perm) {
    if (p < 0 || p >= n_ || seen[p]) throw ArgumentError("not a permutation");
    seen[p] = 1;
  }
  std::vector<Edge> out;
  out.reserve(edges_.size());
  for (auto [u, v] : edges_) out.emplace_back(perm[u], perm[v]);
  return Graph(n_, std::move(out));
}

Graph Graph::complement() const {
  std::vector<Edge> out;
  for (int u = 0; u < n_; ++u)
    for (int v = u + 1; v < n_; ++v)
      if (!adjacent(u, v)) out.emplace_back(u, v);
  return Graph(n_, std::move(out));
}

Graph Graph::induced(std::span<const int> vertices) const {
  int m = static_cast<int>(vertices.size());
  std::vector<Edge> out;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (adjacent(vertices[i], vertices[j])) out.emplace_back(i, j);
  return Graph(m, std::move(out));
}

VertexColouredGraph individualise(const Graph& g, int v) {
  if (v < 0 || v >= g.order()) {
    throw ArgumentError("vertex " + std::to_string(v) + " out of range");
  }
  std::vector<int> colour(g.order(), 0);
  colour[v] = 1;
  return {g, std::move(colour)};
}

DisjointUnion disjoint_union(const Graph& a, const Graph& b) {
  std::vector<Edge> edges = a.edges();
  int off = a.order();
  for (auto [u, v] : b.edges()) edges.emplace_back(u + off, v + off);
  return {Graph(a.order() + b.order(), std::move(edges)), off};
}

std::pair<Graph, Graph> build_counterexample_pair() {
  auto build = [](const int (&attach)[4]) {
    std::vector<Edge> edges = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
    for (int gadget = 0; gadget < 4; ++gadget) {
      int base = 4 + 6 * gadget;
      if (gadget < 2) {
        for (int i = 0; i < 6; ++i) edges.emplace_back(base + i, base + (i + 1) % 6);
      } else {
        for (int t = 0; t < 2; ++t)
          for (int i = 0; i < 3; ++i)
            edges.emplace_back(base + 3 * t + i, base + 3 * t + (i + 1) % 3);
      }
      for (int i = 0; i < 6; ++i) edges.emplace_back(attach[gadget], base + i);
    }
    return Graph(28, std::move(edges));
  };
  // Gadgets X1, X2, Y1, Y2 attach to these backbone vertices.
  return {build({0, 1, 2, 3}), build({0, 2, 1, 3})};
}

std::vector<int> connected_components(const Graph& g) {
  std::vector<int> comp(g.order(), -1);
  int next = 0;
  for (int s = 0; s < g.order(); ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> stack = {s};
    comp[s] = next;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : g.neighbours(v))
        if (comp[w] < 0) {
          comp[w] = next;
          stack.push_back(w);
        }
    }
    ++next;
  }
  return comp;
}

int component_count(const Graph& g) {
  auto comp = connected_components(g);
  return comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
}

std::vector<std::vector<int>> bfs_distances(const Graph& g) {
  int n = g.order();
  std::vector<std::vector<int>> dist(n, std::vector<int>(n, -1));
  for (int s = 0; s < n; ++s) {
    std::queue<int> q;
    q.push(s);
    dist[s][s] = 0;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int w : g.neighbours(v))
        if (dist[s][w] < 0) {
          dist[s][w] = dist[s][v] + 1;
          q.push(w);
        }
    }
  }
  return dist;
}

bool is_forest(const Graph& g) {
  return g.edge_count() == g.order() - component_count(g);
}

Graph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<Edge> edges;
  int declared = -1;
  int max_id = -1;
  bool first = true;
  std::size_t offset = 0;
  while (std::getline(in, line)) {
    std::size_t line_start = offset;
    offset += line.size() + 1;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto pos = line.find_first_not_of(" \t");
    if (pos == std::string::npos || line[pos] == '#') continue;
    std::istringstream fields(line);
    std::vector<long long> nums;
    std::string tok;
    std::size_t col = 0;
    while (fields >> tok) {
      col = line.find(tok, col);
      std::size_t used = 0;
      long long value = 0;
      try {
        value = std::stoll(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size() || value < 0 || value > 1'000'000) {
        throw ParseError(line_start + col, "expected a non-negative vertex id, got '" + tok + "'");
      }
      nums.push_back(value);
      col += tok.size();
    }
    if (nums.size() == 1 && first) {
      declared = static_cast<int>(nums[0]);
    } else if (nums.size() == 2) {
      int u = static_cast<int>(nums[0]);
      int v = static_cast<int>(nums[1]);
      if (u == v) throw ParseError(line_start + pos, "loop at vertex " + std::to_string(u));
      if (declared >= 0 && (u >= declared || v >= declared)) {
        throw ParseError(line_start + pos, "vertex id exceeds declared count");
      }
      edges.emplace_back(u, v);
      max_id = std::max({max_id, u, v});
    } else {
      throw ParseError(line_start + pos, "expected 'u v'");
    }
    first = false;
  }
  int n = declared >= 0 ? declared : max_id + 1;
  return Graph(n, std::move(edges));
}

std::string serialize_edge_list(const Graph& g) {
  std::ostringstream out;
  out << g.order() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
  return out.str();
}

Graph complete_graph(int n) {
  std::vector<Edge> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return Graph(n, std::move(e));
}

Graph cycle_graph(int n) {
  if (n < 3) throw ArgumentError("cycle needs at least 3 vertices");
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph(n, std::move(e));
}

Graph path_graph(int n) {
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph(n, std::move(e));
}

Graph star_graph(int leaves) {
  std::vector<Edge> e;
  for (int i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return Graph(leaves + 1, std::move(e));
}

Graph edgeless_graph(int n) { return Graph(n); }

}  // namespace wlspec
