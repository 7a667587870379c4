#include "wlspec/wl.hpp"

#include <algorithm>
#include <numeric>

#include "wlspec/errors.hpp"

namespace wlspec {
namespace {

// Variable-length integer signatures stored back to back.
struct SignatureTable {
  std::vector<int> data;
  std::vector<std::size_t> start{0};

  void finish_row() { start.push_back(data.size()); }
  std::span<const int> row(std::size_t i) const {
    return {data.data() + start[i], start[i + 1] - start[i]};
  }
  std::size_t size() const { return start.size() - 1; }
};

// Sort-and-rank: equal signatures share an id, ids follow signature order.
std::vector<int> rank_signatures(const SignatureTable& table, int* classes) {
  std::vector<std::size_t> order(table.size());
  std::iota(order.begin(), order.end(), 0);
  auto less = [&](std::size_t a, std::size_t b) {
    auto x = table.row(a);
    auto y = table.row(b);
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
  };
  std::stable_sort(order.begin(), order.end(), less);
  std::vector<int> ids(table.size());
  int next = -1;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i == 0 || less(order[i - 1], order[i])) ++next;
    ids[order[i]] = next;
  }
  *classes = next + 1;
  return ids;
}

std::vector<int> rank_values(const std::vector<int>& values, int* classes) {
  SignatureTable t;
  for (int v : values) {
    t.data.push_back(v);
    t.finish_row();
  }
  return rank_signatures(t, classes);
}

struct CsrGraph {
  std::vector<std::size_t> offsets{0};
  std::vector<int> targets;
};

struct VertexRefinement {
  std::vector<int> colour;
  int classes = 0;
  int iterations = 0;
  bool stable = false;
  std::vector<int> per_round;
};

VertexRefinement refine_vertices(const CsrGraph& g, const std::vector<int>& initial, std::optional<int> max_iters) {
  VertexRefinement r;
  r.colour = rank_values(initial, &r.classes);
  r.per_round.push_back(r.classes);
  std::size_t n = initial.size();
  std::vector<int> nbr;
  while (!max_iters || r.iterations < *max_iters) {
    SignatureTable t;
    t.data.reserve(n + g.targets.size());
    for (std::size_t v = 0; v < n; ++v) {
      t.data.push_back(r.colour[v]);
      nbr.clear();
      for (std::size_t e = g.offsets[v]; e < g.offsets[v + 1]; ++e) nbr.push_back(r.colour[g.targets[e]]);
      std::sort(nbr.begin(), nbr.end());
      t.data.insert(t.data.end(), nbr.begin(), nbr.end());
      t.finish_row();
    }
    int classes = 0;
    auto next = rank_signatures(t, &classes);
    ++r.iterations;
    r.per_round.push_back(classes);
    bool split = classes != r.classes;
    r.colour = std::move(next);
    r.classes = classes;
    if (!split) {
      r.stable = true;
      break;
    }
    if (r.iterations > static_cast<int>(n) + 1) throw ContractError("colour refinement exceeded its round bound");
  }
  return r;
}

CsrGraph to_csr(const Graph& g) {
  CsrGraph c;
  for (int v = 0; v < g.order(); ++v) {
    c.targets.insert(c.targets.end(), g.neighbours(v).begin(), g.neighbours(v).end());
    c.offsets.push_back(c.targets.size());
  }
  return c;
}

// Vertices of all individualised copies: graph gi, copy v, vertex w.
struct CopyUniverse {
  CsrGraph csr;
  std::vector<int> initial;
  std::vector<std::size_t> base;  // first universe vertex of each graph
};

CopyUniverse build_copies(const std::vector<const Graph*>& graphs) {
  CopyUniverse u;
  std::size_t offset = 0;
  for (const Graph* g : graphs) {
    u.base.push_back(offset);
    int n = g->order();
    for (int v = 0; v < n; ++v) {
      for (int w = 0; w < n; ++w) {
        for (int x : g->neighbours(w)) u.csr.targets.push_back(static_cast<int>(offset + static_cast<std::size_t>(v) * n + x));
        u.csr.offsets.push_back(u.csr.targets.size());
        u.initial.push_back(v == w ? 1 : 0);
      }
    }
    offset += static_cast<std::size_t>(n) * n;
  }
  return u;
}

std::uint64_t checked_power(std::uint64_t n, int k, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (int i = 0; i < k; ++i) {
    if (n != 0 && r > cap / n) return cap + 1;
    r *= n;
  }
  return r;
}

struct JointWlk {
  std::vector<std::vector<int>> colour;  // per graph
  int classes = 0;
  int iterations = 0;
  std::vector<int> per_round;
};

// k-WL over the disjoint tuple universes of all graphs.
JointWlk refine_tuples(const std::vector<const Graph*>& graphs, int k, Depth d, const WlOptions& opts) {
  if (k < 1) throw ArgumentError("k must be at least 1");
  std::vector<std::uint64_t> sizes;
  std::uint64_t total = 0;
  for (const Graph* g : graphs) {
    if (g->order() < 1) throw ArgumentError("k-WL needs at least one vertex");
    std::uint64_t s = checked_power(static_cast<std::uint64_t>(g->order()), k, opts.max_tuples);
    if (s > opts.max_tuples) {
      throw SizeError("n^k = " + std::to_string(g->order()) + "^" + std::to_string(k) + " exceeds the tuple cap " +
                      std::to_string(opts.max_tuples));
    }
    sizes.push_back(s);
    total += s;
  }

  // Decoded tuples and per-position strides, per graph.
  std::vector<std::vector<int>> digits(graphs.size());
  std::vector<std::vector<std::uint64_t>> strides(graphs.size());
  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    int n = graphs[gi]->order();
    strides[gi].assign(k, 1);
    for (int i = k - 2; i >= 0; --i) strides[gi][i] = strides[gi][i + 1] * n;
    digits[gi].resize(sizes[gi] * k);
    for (std::uint64_t t = 0; t < sizes[gi]; ++t) {
      std::uint64_t rest = t;
      for (int i = k - 1; i >= 0; --i) {
        digits[gi][t * k + i] = static_cast<int>(rest % n);
        rest /= n;
      }
    }
  }

  JointWlk out;
  {
    SignatureTable t;
    for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
      for (std::uint64_t tup = 0; tup < sizes[gi]; ++tup) {
        AtomicType a = atp(*graphs[gi], std::span<const int>(&digits[gi][tup * k], k));
        t.data.insert(t.data.end(), a.equality.begin(), a.equality.end());
        t.data.push_back(-1);
        for (auto [i, j] : a.edges) t.data.push_back(i * k + j);
        t.finish_row();
      }
    }
    std::vector<int> flat = rank_signatures(t, &out.classes);
    std::size_t at = 0;
    for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
      out.colour.emplace_back(flat.begin() + at, flat.begin() + at + sizes[gi]);
      at += sizes[gi];
    }
  }
  out.per_round.push_back(out.classes);

  std::uint64_t bound = total + 1;
  std::vector<int> chunks;
  std::vector<std::size_t> order;
  while (d.is_infinite() || out.iterations < d.value()) {
    SignatureTable t;
    for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
      const Graph& g = *graphs[gi];
      int n = g.order();
      const auto& col = out.colour[gi];
      for (std::uint64_t tup = 0; tup < sizes[gi]; ++tup) {
        const int* v = &digits[gi][tup * k];
        chunks.assign(static_cast<std::size_t>(n) * (k + 1), 0);
        for (int w = 0; w < n; ++w) {
          int* c = &chunks[static_cast<std::size_t>(w) * (k + 1)];
          // atp(v w) is determined by atp(v), which the old colour refines,
          // plus how w relates to each position.
          int code = 0;
          for (int i = 0; i < k; ++i) {
            code |= (v[i] == w ? 1 : 0) << i;
            code |= (g.adjacent(v[i], w) ? 1 : 0) << (k + i);
          }
          c[0] = code;
          for (int i = 0; i < k; ++i) {
            std::uint64_t sub = tup + (static_cast<std::int64_t>(w) - v[i]) * static_cast<std::int64_t>(strides[gi][i]);
            c[i + 1] = col[sub];
          }
        }
        order.resize(n);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
          return std::lexicographical_compare(&chunks[a * (k + 1)], &chunks[(a + 1) * (k + 1)], &chunks[b * (k + 1)],
                                              &chunks[(b + 1) * (k + 1)]);
        });
        t.data.push_back(col[tup]);
        for (std::size_t a : order) t.data.insert(t.data.end(), &chunks[a * (k + 1)], &chunks[(a + 1) * (k + 1)]);
        t.finish_row();
      }
    }
    int classes = 0;
    std::vector<int> flat = rank_signatures(t, &classes);
    std::size_t at = 0;
    for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
      std::copy(flat.begin() + at, flat.begin() + at + sizes[gi], out.colour[gi].begin());
      at += sizes[gi];
    }
    ++out.iterations;
    out.per_round.push_back(classes);
    bool split = classes != out.classes;
    out.classes = classes;
    if (!split) break;
    if (static_cast<std::uint64_t>(out.iterations) > bound) throw ContractError("k-WL exceeded its round bound");
  }
  return out;
}

std::optional<Witness> compare_histograms(const std::vector<int>& a, const std::vector<int>& b, int classes) {
  std::vector<std::int64_t> ca(classes, 0), cb(classes, 0);
  for (int c : a) ++ca[c];
  for (int c : b) ++cb[c];
  for (int c = 0; c < classes; ++c)
    if (ca[c] != cb[c]) return Witness{c, ca[c], cb[c]};
  return std::nullopt;
}

}  // namespace

Depth Depth::rounds(int d) {
  if (d < 0) throw ArgumentError("iteration count must be non-negative");
  Depth r;
  r.value_ = d;
  return r;
}

int Depth::value() const {
  if (!value_) throw ArgumentError("depth is infinite");
  return *value_;
}

std::string Depth::to_string() const { return value_ ? std::to_string(*value_) : "inf"; }

std::vector<std::vector<int>> AtomicType::blocks() const {
  int count = equality.empty() ? 0 : *std::max_element(equality.begin(), equality.end()) + 1;
  std::vector<std::vector<int>> b(count);
  for (std::size_t i = 0; i < equality.size(); ++i) b[equality[i]].push_back(static_cast<int>(i));
  return b;
}

AtomicType atp(const Graph& g, std::span<const int> tuple) {
  AtomicType a;
  int k = static_cast<int>(tuple.size());
  for (int v : tuple)
    if (v < 0 || v >= g.order()) throw ArgumentError("tuple entry " + std::to_string(v) + " out of range");
  int next = 0;
  for (int i = 0; i < k; ++i) {
    int block = -1;
    for (int j = 0; j < i; ++j)
      if (tuple[j] == tuple[i]) {
        block = a.equality[j];
        break;
      }
    a.equality.push_back(block >= 0 ? block : next++);
  }
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (g.adjacent(tuple[i], tuple[j])) a.edges.emplace_back(i, j);
  return a;
}

int Colouring::at(std::span<const int> tuple) const {
  if (static_cast<int>(tuple.size()) != arity) throw ArgumentError("tuple arity mismatch");
  std::size_t idx = 0;
  for (int v : tuple) {
    if (v < 0 || v >= n) throw ArgumentError("tuple entry out of range");
    idx = idx * n + v;
  }
  return colour[idx];
}

std::vector<std::int64_t> Colouring::histogram(int classes) const {
  std::vector<std::int64_t> h(std::max(classes, num_classes), 0);
  for (int c : colour) ++h[c];
  return h;
}

RefinementResult wl1_refine(const VertexColouredGraph& g, std::optional<int> max_iters) {
  if (static_cast<int>(g.colour.size()) != g.graph.order()) throw ArgumentError("colour vector length differs from n");
  if (max_iters && *max_iters < 0) throw ArgumentError("maxIters must be non-negative");
  VertexRefinement r = refine_vertices(to_csr(g.graph), g.colour, max_iters);
  RefinementResult out;
  out.colouring = {1, g.graph.order(), r.classes, std::move(r.colour)};
  out.iterations = r.iterations;
  out.stable = r.stable;
  out.classes_per_round = std::move(r.per_round);
  return out;
}

WlkResult wlk_refine(const Graph& g, int k, Depth d, const WlOptions& opts) {
  JointWlk j = refine_tuples({&g}, k, d, opts);
  WlkResult r;
  r.colouring = {k, g.order(), j.classes, std::move(j.colour[0])};
  r.iterations = j.iterations;
  r.classes_per_round = std::move(j.per_round);
  return r;
}

Colouring wlk_colour(const Graph& g, int k, Depth d, const WlOptions& opts) {
  return wlk_refine(g, k, d, opts).colouring;
}

WlVerdict wlk_indistinguishable(const Graph& g, const Graph& h, int k, Depth d, const WlOptions& opts) {
  WlVerdict v;
  if (g.order() == 0 || h.order() == 0) {
    v.indistinguishable = g.order() == h.order();
    if (!v.indistinguishable) v.witness = Witness{0, g.order() ? 1 : 0, h.order() ? 1 : 0};
    return v;
  }
  JointWlk j = refine_tuples({&g, &h}, k, d, opts);
  v.iterations_used = j.iterations;
  v.witness = compare_histograms(j.colour[0], j.colour[1], j.classes);
  v.indistinguishable = !v.witness;
  return v;
}

WlVerdict wl1_indistinguishable(const Graph& g, const Graph& h) {
  DisjointUnion u = disjoint_union(g, h);
  VertexRefinement r = refine_vertices(to_csr(u.graph), std::vector<int>(u.graph.order(), 0), std::nullopt);
  std::vector<int> a(r.colour.begin(), r.colour.begin() + u.offset);
  std::vector<int> b(r.colour.begin() + u.offset, r.colour.end());
  WlVerdict v;
  v.iterations_used = r.iterations;
  v.witness = compare_histograms(a, b, r.classes);
  v.indistinguishable = !v.witness;
  return v;
}

WlVerdict wl11_indistinguishable(const Graph& g, const Graph& h) {
  WlVerdict v;
  if (g.order() != h.order()) {
    v.witness = Witness{0, g.order(), h.order()};
    return v;
  }
  int n = g.order();
  CopyUniverse u = build_copies({&g, &h});
  VertexRefinement r = refine_vertices(u.csr, u.initial, std::nullopt);
  v.iterations_used = r.iterations;

  // Signature of a copy: its sorted colour multiset. Ranked jointly.
  SignatureTable t;
  for (int gi = 0; gi < 2; ++gi) {
    for (int c = 0; c < n; ++c) {
      std::size_t from = u.base[gi] + static_cast<std::size_t>(c) * n;
      std::vector<int> sig(r.colour.begin() + from, r.colour.begin() + from + n);
      std::sort(sig.begin(), sig.end());
      t.data.insert(t.data.end(), sig.begin(), sig.end());
      t.finish_row();
    }
  }
  int classes = 0;
  std::vector<int> sig = rank_signatures(t, &classes);
  std::vector<int> a(sig.begin(), sig.begin() + n), b(sig.begin() + n, sig.end());
  v.witness = compare_histograms(a, b, classes);
  v.indistinguishable = !v.witness;
  if (v.indistinguishable) {
    std::vector<int> og(n), oh(n);
    std::iota(og.begin(), og.end(), 0);
    std::iota(oh.begin(), oh.end(), 0);
    std::stable_sort(og.begin(), og.end(), [&](int x, int y) { return a[x] < a[y]; });
    std::stable_sort(oh.begin(), oh.end(), [&](int x, int y) { return b[x] < b[y]; });
    v.bijection.assign(n, -1);
    for (int i = 0; i < n; ++i) v.bijection[og[i]] = oh[i];
  }
  return v;
}

std::pair<Colouring, Colouring> wl11_joint_pair_colours(const Graph& g, const Graph& h) {
  CopyUniverse u = build_copies({&g, &h});
  VertexRefinement r = refine_vertices(u.csr, u.initial, std::nullopt);
  auto slice = [&](int gi, const Graph& x) {
    std::size_t m = static_cast<std::size_t>(x.order()) * x.order();
    Colouring c{2, x.order(), r.classes, std::vector<int>(r.colour.begin() + u.base[gi], r.colour.begin() + u.base[gi] + m)};
    return c;
  };
  return {slice(0, g), slice(1, h)};
}

Colouring wl11_colour_classes(const Graph& g) {
  CopyUniverse u = build_copies({&g});
  VertexRefinement r = refine_vertices(u.csr, u.initial, std::nullopt);
  return {2, g.order(), r.classes, std::move(r.colour)};
}

int adjacency_algebra_dimension(const Graph& g, const WlOptions& opts) {
  return wlk_colour(g, 2, Depth::infinite(), opts).num_classes;
}

}  // namespace wlspec
