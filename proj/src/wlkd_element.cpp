#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "wlkd_internal.hpp"
#include "wlspec/errors.hpp"
#include "wlspec/wlkd.hpp"

namespace wlspec {

namespace detail {

TreeOrder::TreeOrder(const std::vector<int>& parent)
    : parent_(parent), depth_(parent.size(), -1), children_(parent.size(), 0) {
  for (std::size_t v = 0; v < parent.size(); ++v) {
    if (parent[v] < 0) {
      root_ = static_cast<int>(v);
    } else {
      ++children_[parent[v]];
    }
  }
  for (std::size_t v = 0; v < parent.size(); ++v) {
    int d = 0;
    for (int x = static_cast<int>(v); parent_[x] >= 0; x = parent_[x]) ++d;
    depth_[v] = d;
  }
}

bool TreeOrder::leq(int x, int y) const {
  while (depth_[y] > depth_[x]) y = parent_[y];
  return x == y;
}

std::vector<int> TreeOrder::leaves() const {
  std::vector<int> out;
  for (std::size_t v = 0; v < children_.size(); ++v)
    if (children_[v] == 0) out.push_back(static_cast<int>(v));
  return out;
}

int gca(const TreeOrder& t, int anchor, int x, int y) {
  int count = 0;
  for (int z = x; z >= 0; z = t.parent()[z]) {
    if (z == anchor || !t.leq(anchor, z)) continue;
    if (t.leq(z, y)) ++count;
  }
  return count;
}

}  // namespace detail

using detail::TreeOrder;

WlkdElement WlkdElement::make_bottom(int k, int d) {
  WlkdElement e;
  e.k = k;
  e.d = d;
  e.bottom = true;
  return e;
}

bool AxiomReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const AxiomCheck& c) { return c.passed; });
}

bool AxiomReport::passed(std::string_view name) const {
  for (const auto& c : checks)
    if (c.name == name) return c.passed;
  return false;
}

std::vector<std::string> AxiomReport::failed() const {
  std::vector<std::string> out;
  for (const auto& c : checks)
    if (!c.passed) out.push_back(c.name);
  return out;
}

namespace {

const std::vector<std::string>& axiom_names() {
  static const std::vector<std::string> names = {"shape", "tree", "cover", "pebbling", "B1", "B2",
                                                 "B3",    "B4",   "B5",    "B6",       "B7", "B8"};
  return names;
}

std::string shape_problem(const WlkdElement& e) {
  int n = e.size();
  std::size_t len = static_cast<std::size_t>(e.k + e.d);
  if (e.k < 1 || e.d < 0) return "k must be >= 1 and d >= 0";
  if (n < 1) return "no vertices";
  if (e.bigraph.in_labels.size() != len || e.bigraph.out_labels.size() != len) return "label tuples must have length k+d";
  if (e.p_in.size() != len || e.p_out.size() != len) return "tag tuples must have length k+d";
  if (e.parent.size() != static_cast<std::size_t>(n) || e.pebble.size() != static_cast<std::size_t>(n))
    return "parent and pebble maps must cover every vertex";
  for (std::size_t i = 0; i < len; ++i) {
    if (e.bigraph.in_labels[i] < 0 || e.bigraph.in_labels[i] >= n) return "in-label out of range";
    if (e.bigraph.out_labels[i] < 0 || e.bigraph.out_labels[i] >= n) return "out-label out of range";
    if (e.p_in[i] < 1 || e.p_in[i] > e.k + 1 || e.p_out[i] < 1 || e.p_out[i] > e.k + 1) return "tag value out of range";
  }
  for (int v = 0; v < n; ++v) {
    if (e.pebble[v] < 1 || e.pebble[v] > e.k + 1) return "pebble of vertex " + std::to_string(v) + " out of range";
    if (e.parent[v] < -1 || e.parent[v] >= n) return "parent of vertex " + std::to_string(v) + " out of range";
  }
  return {};
}

std::string tree_problem(const std::vector<int>& parent) {
  int n = static_cast<int>(parent.size());
  int roots = static_cast<int>(std::count(parent.begin(), parent.end(), -1));
  if (roots != 1) return "expected exactly one root, found " + std::to_string(roots);
  for (int v = 0; v < n; ++v) {
    int steps = 0;
    for (int x = v; parent[x] >= 0; x = parent[x])
      if (++steps > n) return "parent map has a cycle through vertex " + std::to_string(v);
  }
  return {};
}

}  // namespace

AxiomReport validate(const WlkdElement& e) {
  AxiomReport rep;
  if (e.bottom) {
    for (const auto& name : axiom_names()) rep.checks.push_back({name, true, "absorbing element"});
    return rep;
  }
  auto add = [&](const std::string& name, bool ok, std::string detail = {}) {
    rep.checks.push_back({name, ok, std::move(detail)});
  };
  std::string shape = shape_problem(e);
  std::string tree = shape.empty() ? tree_problem(e.parent) : "not evaluated";
  add("shape", shape.empty(), shape);
  add("tree", tree.empty(), tree);
  if (!shape.empty() || !tree.empty()) {
    for (std::size_t i = 2; i < axiom_names().size(); ++i) add(axiom_names()[i], false, "not evaluated");
    return rep;
  }

  const int k = e.k, d = e.d, n = e.size();
  const auto& u = e.bigraph.in_labels;
  const auto& v = e.bigraph.out_labels;
  const auto& g = e.bigraph.graph;
  TreeOrder t(e.parent);

  {
    std::string bad;
    for (auto [a, b] : g.edges())
      if (!t.comparable(a, b)) bad = "edge " + std::to_string(a) + "-" + std::to_string(b) + " joins incomparable vertices";
    add("cover", bad.empty(), bad);
  }
  {
    std::string bad;
    for (auto [a, b] : g.edges()) {
      int top = a, low = b;
      if (!t.leq(top, low)) std::swap(top, low);
      if (!t.leq(top, low)) continue;
      for (int x = low; x != top; x = e.parent[x])
        if (e.pebble[x] == e.pebble[top])
          bad = "vertex " + std::to_string(x) + " reuses the pebble of " + std::to_string(top) + " below edge " +
                std::to_string(a) + "-" + std::to_string(b);
    }
    add("pebbling", bad.empty(), bad);
  }

  const int last = k + d - 1;
  add("B1", u[0] == t.root() && v[0] == t.root() && t.is_leaf(u[last]) && t.is_leaf(v[last]),
      "first labels must be the root and last labels leaves");
  {
    bool ok = true;
    for (int i = 0; i < k; ++i) ok = ok && u[i] == v[i];
    for (int i = 0; i < last; ++i) ok = ok && t.leq(u[i], u[i + 1]) && t.leq(v[i], v[i + 1]);
    add("B2", ok, "first k labels must agree and both tuples must be chains");
  }
  {
    bool ok = true;
    for (int i = k - 1; i < last; ++i) ok = ok && e.parent[u[i + 1]] == u[i] && e.parent[v[i + 1]] == v[i];
    add("B3", ok, "labels beyond position k must step from parent to child");
  }
  {
    std::set<int> labelled(u.begin(), u.end());
    labelled.insert(v.begin(), v.end());
    std::string bad;
    for (int x = 0; x < n; ++x)
      if (!labelled.count(x) && !t.leq(u[k - 1], x)) bad = "unlabelled vertex " + std::to_string(x) + " is not below the k-th label";
    add("B4", bad.empty(), bad);
  }
  const auto leaves = t.leaves();
  {
    std::string bad;
    for (int x : leaves) {
      int count = t.leq(u[k - 1], x) ? t.depth(x) - t.depth(u[k - 1]) : -1;
      if (count != d) bad = "leaf " + std::to_string(x) + " has " + std::to_string(count) + " ancestors below the k-th label";
    }
    add("B5", bad.empty(), bad);
  }
  {
    int target = detail::gca(t, u[k - 1], u[last], v[last]);
    std::string bad;
    for (std::size_t a = 0; a < leaves.size(); ++a)
      for (std::size_t b = a + 1; b < leaves.size(); ++b)
        if (detail::gca(t, u[k - 1], leaves[a], leaves[b]) < target)
          bad = "leaves " + std::to_string(leaves[a]) + "," + std::to_string(leaves[b]) + " branch above the last labels";
    add("B6", bad.empty(), bad);
  }
  {
    std::set<int> verts(u.begin(), u.begin() + k);
    std::set<int> pebbles;
    for (int x : verts) pebbles.insert(e.pebble[x]);
    add("B7", pebbles.size() == verts.size(), "pebbles of the first k labels must be distinct");
  }
  {
    bool ok = true;
    for (int i = 0; i <= last; ++i) ok = ok && e.p_in[i] == e.pebble[u[i]] && e.p_out[i] == e.pebble[v[i]];
    add("B8", ok, "tags must record the pebbles of the labels");
  }
  for (auto& c : rep.checks)
    if (c.passed) c.detail.clear();
  return rep;
}

WlkdElement reverse(const WlkdElement& e) {
  if (e.bottom) return e;
  WlkdElement r = e;
  std::swap(r.bigraph.in_labels, r.bigraph.out_labels);
  std::swap(r.p_in, r.p_out);
  return r;
}

WlkdElement series_compose(const WlkdElement& a, const WlkdElement& b) {
  if (a.k != b.k || a.d != b.d) throw ArgumentError("series composition needs equal k and d");
  if (a.bottom || b.bottom || a.p_out != b.p_in) return WlkdElement::make_bottom(a.k, a.d);

  const int na = a.size(), nb = b.size(), total = na + nb;
  std::vector<int> uf(total);
  std::iota(uf.begin(), uf.end(), 0);
  auto find = [&](int x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  };
  for (std::size_t i = 0; i < a.bigraph.out_labels.size(); ++i) {
    int x = find(a.bigraph.out_labels[i]), y = find(na + b.bigraph.in_labels[i]);
    if (x != y) uf[std::max(x, y)] = std::min(x, y);
  }
  std::vector<int> rep(total, -1), map(total);
  int next = 0;
  for (int v = 0; v < total; ++v) {
    int r = find(v);
    if (rep[r] < 0) rep[r] = next++;
    map[v] = rep[r];
  }

  WlkdElement out;
  out.k = a.k;
  out.d = a.d;
  out.parent.assign(next, -2);
  out.pebble.assign(next, 0);
  std::vector<Edge> edges;
  for (auto [x, y] : a.bigraph.graph.edges()) edges.emplace_back(map[x], map[y]);
  for (auto [x, y] : b.bigraph.graph.edges()) edges.emplace_back(map[na + x], map[na + y]);
  for (auto [x, y] : edges)
    if (x == y) throw CompositionError("identification turns an edge into a loop");
  for (int x = 0; x < na; ++x) {
    out.parent[map[x]] = a.parent[x] < 0 ? -1 : map[a.parent[x]];
    out.pebble[map[x]] = a.pebble[x];
  }
  for (int x = 0; x < nb; ++x) {
    int m = map[na + x];
    if (out.parent[m] != -2) continue;  // glued onto a vertex of a
    out.parent[m] = b.parent[x] < 0 ? -1 : map[na + b.parent[x]];
    out.pebble[m] = b.pebble[x];
  }
  out.bigraph.graph = Graph(next, std::move(edges));
  for (int x : a.bigraph.in_labels) out.bigraph.in_labels.push_back(map[x]);
  for (int x : b.bigraph.out_labels) out.bigraph.out_labels.push_back(map[na + x]);
  out.p_in = a.p_in;
  out.p_out = b.p_out;
  return out;
}

AugmentedMatrix AugmentedMatrix::zero_element() {
  AugmentedMatrix z;
  z.zero = true;
  return z;
}

AugmentedMatrix AugmentedMatrix::operator*(const AugmentedMatrix& o) const {
  if (zero || o.zero || p_out != o.p_in) return zero_element();
  return {false, matrix * o.matrix, p_in, o.p_out};
}

AugmentedMatrix AugmentedMatrix::transpose() const {
  if (zero) return *this;
  return {false, matrix.transpose(), p_out, p_in};
}

std::int64_t AugmentedMatrix::soe() const { return zero ? 0 : matrix.soe(); }

bool operator==(const AugmentedMatrix& a, const AugmentedMatrix& b) {
  if (a.zero || b.zero) return a.zero == b.zero;
  return a.p_in == b.p_in && a.p_out == b.p_out && a.matrix == b.matrix;
}

AugmentedMatrix augmented_matrix(const WlkdElement& e, const Graph& g, const HomOptions& opts) {
  if (e.bottom) return AugmentedMatrix::zero_element();
  return {false, hom_matrix(e.bigraph, g, opts), e.p_in, e.p_out};
}

AugmentedMatrix augmented_matrix(const GeneratorId& gen, const Graph& g) {
  return {false, generator_matrix(gen, g), gen.p_in, gen.p_out};
}

WlkdElement random_wlkd_element(int k, int d, int max_vertices, std::mt19937_64& rng) {
  if (k < 1 || d < 0) throw ArgumentError("k must be >= 1 and d >= 0");
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

  // Non-decreasing onto 1..r: each step either repeats or increments.
  std::vector<int> h(k, 1);
  for (int i = 1; i < k; ++i) h[i] = h[i - 1] + uniform(0, 1);
  const int r = h.back();

  WlkdElement e;
  e.k = k;
  e.d = d;
  std::vector<int> pebbles(k + 1);
  std::iota(pebbles.begin(), pebbles.end(), 1);
  std::shuffle(pebbles.begin(), pebbles.end(), rng);
  for (int i = 0; i < r; ++i) {
    e.parent.push_back(i - 1);
    e.pebble.push_back(pebbles[i]);
  }

  // Full-depth subtree below the last H vertex, leaves exactly d levels down.
  std::vector<int> level = {r - 1};
  for (int depth = 1; depth <= d; ++depth) {
    std::vector<int> next;
    for (int p : level) {
      int room = max_vertices - static_cast<int>(e.parent.size()) - static_cast<int>(level.size());
      int kids = room > 2 ? uniform(1, 2) : 1;
      for (int c = 0; c < kids; ++c) {
        next.push_back(static_cast<int>(e.parent.size()));
        e.parent.push_back(p);
        e.pebble.push_back(uniform(1, k + 1));
      }
    }
    level = std::move(next);
  }
  const int n = static_cast<int>(e.parent.size());
  TreeOrder t(e.parent);

  int lu = level[0], lv = level[0];
  if (level.size() > 1) {
    int best = d + 1;
    std::vector<std::pair<int, int>> pairs;
    for (int a : level)
      for (int b : level) {
        if (a == b) continue;
        int g = detail::gca(t, r - 1, a, b);
        if (g < best) {
          best = g;
          pairs.clear();
        }
        if (g == best) pairs.emplace_back(a, b);
      }
    std::tie(lu, lv) = pairs[uniform(0, static_cast<int>(pairs.size()) - 1)];
  }
  auto chain = [&](int leaf) {
    std::vector<int> c;
    for (int x = leaf; x != r - 1; x = e.parent[x]) c.push_back(x);
    std::reverse(c.begin(), c.end());
    return c;
  };
  auto& u = e.bigraph.in_labels;
  auto& v = e.bigraph.out_labels;
  for (int i = 0; i < k; ++i) u.push_back(h[i] - 1);
  v = u;
  for (int x : chain(lu)) u.push_back(x);
  for (int x : chain(lv)) v.push_back(x);

  std::vector<Edge> edges;
  for (int low = 0; low < n; ++low)
    for (int top = e.parent[low]; top >= 0; top = e.parent[top]) {
      bool valid = true;
      for (int x = low; x != top && valid; x = e.parent[x]) valid = e.pebble[x] != e.pebble[top];
      if (valid && uniform(0, 2) == 0) edges.emplace_back(top, low);
    }
  e.bigraph.graph = Graph(n, std::move(edges));
  for (int x : u) e.p_in.push_back(e.pebble[x]);
  for (int x : v) e.p_out.push_back(e.pebble[x]);
  return e;
}

}  // namespace wlspec
