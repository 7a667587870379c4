#include "wlspec/hom.hpp"

#include <algorithm>
#include <numeric>

#include "wlspec/errors.hpp"

namespace wlspec {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw SizeError("homomorphism count overflows 64 bits");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw SizeError("homomorphism count overflows 64 bits");
  return r;
}

namespace {

std::size_t power(int n, int k, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (int i = 0; i < k; ++i) {
    r *= static_cast<std::uint64_t>(n);
    if (r > cap) throw SizeError("matrix side " + std::to_string(n) + "^" + std::to_string(k) + " exceeds the entry cap");
  }
  return static_cast<std::size_t>(r);
}

// Counts extensions of a partial map to `order` (connected-first order), where
// `fixed` already holds images of boundary vertices (-1 = unassigned).
class Extender {
 public:
  Extender(const Graph& f, const Graph& g, std::vector<int> order) : f_(f), g_(g), order_(std::move(order)) {}

  std::int64_t count(std::vector<int>& image) { return rec(0, image); }

 private:
  bool consistent(int u, int x, const std::vector<int>& image) const {
    for (int w : f_.neighbours(u))
      if (image[w] >= 0 && !g_.adjacent(image[w], x)) return false;
    return true;
  }

  std::int64_t rec(std::size_t depth, std::vector<int>& image) {
    if (depth == order_.size()) return 1;
    int u = order_[depth];
    // Candidates: neighbours of an assigned neighbour's image, else all.
    const std::vector<int>* cand = nullptr;
    for (int w : f_.neighbours(u))
      if (image[w] >= 0) {
        if (!cand || g_.neighbours(image[w]).size() < cand->size()) cand = &g_.neighbours(image[w]);
      }
    std::int64_t total = 0;
    auto visit = [&](int x) {
      if (!consistent(u, x, image)) return;
      if (depth + 1 == order_.size()) {
        total = checked_add(total, 1);
        return;
      }
      image[u] = x;
      total = checked_add(total, rec(depth + 1, image));
      image[u] = -1;
    };
    if (cand) {
      for (int x : *cand) visit(x);
    } else {
      for (int x = 0; x < g_.order(); ++x) visit(x);
    }
    return total;
  }

  const Graph& f_;
  const Graph& g_;
  std::vector<int> order_;
};

// BFS order of the vertices in `component`, starting from `start`.
std::vector<int> bfs_order(const Graph& f, const std::vector<char>& in_set, int start) {
  std::vector<int> order = {start};
  std::vector<char> seen(f.order(), 0);
  seen[start] = 1;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (int w : f.neighbours(order[i]))
      if (in_set[w] && !seen[w]) {
        seen[w] = 1;
        order.push_back(w);
      }
  return order;
}

std::vector<std::vector<int>> components_within(const Graph& f, const std::vector<char>& in_set) {
  std::vector<std::vector<int>> comps;
  std::vector<char> done(f.order(), 0);
  for (int v = 0; v < f.order(); ++v) {
    if (!in_set[v] || done[v]) continue;
    auto order = bfs_order(f, in_set, v);
    for (int u : order) done[u] = 1;
    comps.push_back(std::move(order));
  }
  return comps;
}

std::int64_t tree_dp(const Graph& f, const Graph& g, const std::vector<int>& order) {
  // order is a BFS order, so parents precede children.
  int n = g.order();
  std::vector<int> parent(f.order(), -1);
  std::vector<int> pos(f.order(), -1);
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
  for (std::size_t i = 1; i < order.size(); ++i)
    for (int w : f.neighbours(order[i]))
      if (pos[w] >= 0 && pos[w] < static_cast<int>(i)) parent[order[i]] = w;
  std::vector<std::vector<std::int64_t>> table(f.order());
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int u = *it;
    std::vector<std::int64_t> t(n, 1);
    for (int c : f.neighbours(u)) {
      if (parent[c] != u) continue;
      for (int x = 0; x < n; ++x) {
        std::int64_t s = 0;
        for (int y : g.neighbours(x)) s = checked_add(s, table[c][y]);
        t[x] = checked_mul(t[x], s);
      }
      table[c].clear();
    }
    table[u] = std::move(t);
  }
  std::int64_t total = 0;
  for (std::int64_t x : table[order[0]]) total = checked_add(total, x);
  return total;
}

std::int64_t component_backtrack(const Graph& f, const Graph& g, const std::vector<int>& order) {
  std::vector<int> image(f.order(), -1);
  return Extender(f, g, order).count(image);
}

}  // namespace

HomMatrix::HomMatrix(int n, int row_arity, int col_arity)
    : n_(n), row_arity_(row_arity), col_arity_(col_arity) {
  rows_ = power(n, row_arity, 1ull << 40);
  cols_ = power(n, col_arity, 1ull << 40);
  if (rows_ * cols_ > (1ull << 28)) throw SizeError("homomorphism matrix too large");
  data_.assign(rows_ * cols_, 0);
}

std::int64_t HomMatrix::soe() const {
  std::int64_t s = 0;
  for (auto x : data_) s = checked_add(s, x);
  return s;
}

HomMatrix HomMatrix::transpose() const {
  HomMatrix t(n_, col_arity_, row_arity_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

HomMatrix HomMatrix::operator*(const HomMatrix& o) const {
  if (n_ != o.n_ || col_arity_ != o.row_arity_) throw ArgumentError("homomorphism matrices do not compose");
  HomMatrix p(n_, row_arity_, o.col_arity_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      std::int64_t a = (*this)(r, k);
      if (a == 0) continue;
      for (std::size_t c = 0; c < o.cols_; ++c) {
        std::int64_t b = o(k, c);
        if (b != 0) p(r, c) = checked_add(p(r, c), checked_mul(a, b));
      }
    }
  return p;
}

HomMatrix HomMatrix::hadamard(const HomMatrix& o) const {
  if (n_ != o.n_ || row_arity_ != o.row_arity_ || col_arity_ != o.col_arity_) throw ArgumentError("shapes differ");
  HomMatrix p = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) p.data_[i] = checked_mul(data_[i], o.data_[i]);
  return p;
}

bool HomMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](std::int64_t x) { return x == 0; });
}

std::int64_t hom_count_backtracking(const Graph& f, const Graph& g, const HomOptions& opts) {
  if (f.order() > opts.max_pattern_vertices) {
    throw SizeError("pattern has " + std::to_string(f.order()) + " vertices, cap is " +
                    std::to_string(opts.max_pattern_vertices));
  }
  std::vector<char> all(f.order(), 1);
  std::int64_t total = 1;
  for (const auto& comp : components_within(f, all)) total = checked_mul(total, component_backtrack(f, g, comp));
  return total;
}

std::int64_t hom_count_forest(const Graph& f, const Graph& g) {
  if (!is_forest(f)) throw ArgumentError("pattern is not a forest");
  std::vector<char> all(f.order(), 1);
  std::int64_t total = 1;
  for (const auto& comp : components_within(f, all)) total = checked_mul(total, tree_dp(f, g, comp));
  return total;
}

std::int64_t hom_count(const Graph& f, const Graph& g, const HomOptions& opts) {
  if (f.order() > opts.max_pattern_vertices) {
    throw SizeError("pattern has " + std::to_string(f.order()) + " vertices, cap is " +
                    std::to_string(opts.max_pattern_vertices));
  }
  std::vector<char> all(f.order(), 1);
  std::int64_t total = 1;
  for (const auto& comp : components_within(f, all)) {
    int edges = 0;
    for (int u : comp) edges += f.degree(u);
    bool tree = edges / 2 == static_cast<int>(comp.size()) - 1;
    total = checked_mul(total, tree ? tree_dp(f, g, comp) : component_backtrack(f, g, comp));
    if (total == 0) return 0;
  }
  return total;
}

HomMatrix hom_matrix(const BilabelledGraph& bf, const Graph& g, const HomOptions& opts) {
  const Graph& f = bf.graph;
  int n = g.order();
  for (int v : bf.in_labels)
    if (v < 0 || v >= f.order()) throw ArgumentError("in-label out of range");
  for (int v : bf.out_labels)
    if (v < 0 || v >= f.order()) throw ArgumentError("out-label out of range");
  if (f.order() > opts.max_labelled_vertices) throw SizeError("bilabelled pattern too large");
  HomMatrix m(n, static_cast<int>(bf.in_labels.size()), static_cast<int>(bf.out_labels.size()));
  if (m.rows() * m.cols() > opts.max_entries) throw SizeError("homomorphism matrix exceeds the entry cap");

  std::vector<char> labelled(f.order(), 0);
  for (int v : bf.in_labels) labelled[v] = 1;
  for (int v : bf.out_labels) labelled[v] = 1;
  std::vector<int> lab;
  for (int v = 0; v < f.order(); ++v)
    if (labelled[v]) lab.push_back(v);

  // Each unlabelled component contributes a table over its labelled boundary.
  std::vector<char> unl(f.order(), 0);
  for (int v = 0; v < f.order(); ++v) unl[v] = !labelled[v];
  struct Piece {
    std::vector<int> boundary;
    std::vector<std::int64_t> table;
  };
  std::vector<Piece> pieces;
  for (const auto& comp : components_within(f, unl)) {
    Piece p;
    for (int u : comp)
      for (int w : f.neighbours(u))
        if (labelled[w]) p.boundary.push_back(w);
    std::sort(p.boundary.begin(), p.boundary.end());
    p.boundary.erase(std::unique(p.boundary.begin(), p.boundary.end()), p.boundary.end());
    std::size_t size = power(n, static_cast<int>(p.boundary.size()), opts.max_entries);
    p.table.assign(size, 0);
    std::vector<int> image(f.order(), -1);
    Extender ext(f, g, comp);
    for (std::size_t idx = 0; idx < size; ++idx) {
      std::size_t rest = idx;
      for (int i = static_cast<int>(p.boundary.size()) - 1; i >= 0; --i) {
        image[p.boundary[i]] = static_cast<int>(rest % n);
        rest /= n;
      }
      p.table[idx] = ext.count(image);
    }
    pieces.push_back(std::move(p));
  }

  std::vector<int> image(f.order(), -1);
  auto accumulate = [&]() {
    std::int64_t w = 1;
    for (const auto& p : pieces) {
      std::size_t idx = 0;
      for (int b : p.boundary) idx = idx * n + image[b];
      w = checked_mul(w, p.table[idx]);
      if (w == 0) return;
    }
    std::size_t r = 0, c = 0;
    for (int v : bf.in_labels) r = r * n + image[v];
    for (int v : bf.out_labels) c = c * n + image[v];
    m(r, c) = checked_add(m(r, c), w);
  };
  auto rec = [&](auto&& self, std::size_t depth) -> void {
    if (depth == lab.size()) {
      accumulate();
      return;
    }
    int u = lab[depth];
    for (int x = 0; x < n; ++x) {
      bool ok = true;
      for (int w : f.neighbours(u))
        if (image[w] >= 0 && labelled[w] && !g.adjacent(image[w], x)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      image[u] = x;
      self(self, depth + 1);
      image[u] = -1;
    }
  };
  if (n > 0 || lab.empty()) rec(rec, 0);
  return m;
}

std::vector<std::int64_t> hom_vector(const LabelledGraph& f, const Graph& g, const HomOptions& opts) {
  HomMatrix m = hom_matrix({f.graph, f.labels, {}}, g, opts);
  std::vector<std::int64_t> v(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) v[r] = m(r, 0);
  return v;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

// Disjoint union of a and b with the given identifications; returns the new
// vertex of every old vertex (b offset by |a|).
std::pair<Graph, std::vector<int>> glue(const Graph& a, const Graph& b, const std::vector<std::pair<int, int>>& ids) {
  int total = a.order() + b.order();
  UnionFind uf(total);
  for (auto [x, y] : ids) uf.unite(x, a.order() + y);
  std::vector<int> rep(total, -1), map(total);
  int next = 0;
  for (int v = 0; v < total; ++v) {
    int r = uf.find(v);
    if (rep[r] < 0) rep[r] = next++;
    map[v] = rep[r];
  }
  std::vector<Edge> edges;
  auto add = [&](const Graph& g, int off) {
    for (auto [u, v] : g.edges()) {
      int x = map[u + off], y = map[v + off];
      if (x == y) throw CompositionError("identification turns an edge into a loop");
      edges.emplace_back(x, y);
    }
  };
  add(a, 0);
  add(b, a.order());
  return {Graph(next, std::move(edges)), std::move(map)};
}

}  // namespace

BilabelledGraph series_compose(const BilabelledGraph& a, const BilabelledGraph& b) {
  if (a.out_labels.size() != b.in_labels.size()) throw ArgumentError("arities do not match for series composition");
  std::vector<std::pair<int, int>> ids;
  for (std::size_t i = 0; i < a.out_labels.size(); ++i) ids.emplace_back(a.out_labels[i], b.in_labels[i]);
  auto [g, map] = glue(a.graph, b.graph, ids);
  BilabelledGraph r{std::move(g), {}, {}};
  for (int v : a.in_labels) r.in_labels.push_back(map[v]);
  for (int v : b.out_labels) r.out_labels.push_back(map[a.graph.order() + v]);
  return r;
}

BilabelledGraph reverse(const BilabelledGraph& f) { return {f.graph, f.out_labels, f.in_labels}; }

LabelledGraph gluing_product(const LabelledGraph& a, const LabelledGraph& b) {
  if (a.labels.size() != b.labels.size()) throw ArgumentError("label arities differ");
  std::vector<std::pair<int, int>> ids;
  for (std::size_t i = 0; i < a.labels.size(); ++i) ids.emplace_back(a.labels[i], b.labels[i]);
  auto [g, map] = glue(a.graph, b.graph, ids);
  LabelledGraph r{std::move(g), {}};
  for (int v : a.labels) r.labels.push_back(map[v]);
  return r;
}

BilabelledGraph identity_bigraph(int arity) {
  std::vector<int> labels(arity);
  std::iota(labels.begin(), labels.end(), 0);
  return {Graph(arity), labels, labels};
}

BilabelledGraph edge_bigraph() { return {Graph(2, {{0, 1}}), {0}, {1}}; }

bool brute_isomorphic(const Graph& g, const Graph& h) {
  if (g.order() > 10 || h.order() > 10) throw SizeError("brute-force isomorphism is limited to 10 vertices");
  int n = g.order();
  if (n != h.order() || g.edge_count() != h.edge_count()) return false;
  std::vector<int> dg(n), dh(n);
  for (int v = 0; v < n; ++v) {
    dg[v] = g.degree(v);
    dh[v] = h.degree(v);
  }
  std::vector<int> sg = dg, sh = dh;
  std::sort(sg.begin(), sg.end());
  std::sort(sh.begin(), sh.end());
  if (sg != sh) return false;
  std::vector<int> map(n, -1);
  std::vector<char> used(n, 0);
  auto rec = [&](auto&& self, int v) -> bool {
    if (v == n) return true;
    for (int x = 0; x < n; ++x) {
      if (used[x] || dh[x] != dg[v]) continue;
      bool ok = true;
      for (int u = 0; u < v && ok; ++u) ok = g.adjacent(u, v) == h.adjacent(map[u], x);
      if (!ok) continue;
      map[v] = x;
      used[x] = 1;
      if (self(self, v + 1)) return true;
      used[x] = 0;
    }
    map[v] = -1;
    return false;
  };
  return rec(rec, 0);
}

PairGenerators pair_generators() {
  PairGenerators p;
  p.identity = {Graph(2), {0, 1}, {0, 1}};
  p.connect = {Graph(3, {{1, 2}}), {0, 1}, {0, 2}};
  p.forget = {Graph(3), {0, 1}, {0, 2}};
  p.edge = {Graph(2, {{0, 1}}), {0, 1}, {0, 1}};
  p.merge = {Graph(1), {0, 0}, {0, 0}};
  return p;
}

}  // namespace wlspec
