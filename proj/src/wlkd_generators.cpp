#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

#include "wlspec/errors.hpp"
#include "wlspec/wlkd.hpp"

namespace wlspec {

namespace {

std::string join_ints(const std::vector<int>& xs) {
  std::ostringstream os;
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? "," : "") << xs[i];
  return os.str();
}

// All tuples over 1..base of the given length, lexicographic.
std::vector<std::vector<int>> all_tuples(int length, int base) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(length, 1);
  while (true) {
    out.push_back(cur);
    int i = length - 1;
    while (i >= 0 && cur[i] == base) cur[i--] = 1;
    if (i < 0) break;
    ++cur[i];
  }
  return out;
}

// Non-decreasing tuples of length k onto 1..r.
std::vector<std::vector<int>> onto_chains(int k) {
  std::vector<std::vector<int>> out;
  for (int mask = 0; mask < (1 << (k - 1)); ++mask) {
    std::vector<int> h(k, 1);
    for (int i = 1; i < k; ++i) h[i] = h[i - 1] + ((mask >> (i - 1)) & 1);
    out.push_back(std::move(h));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Injective maps 1..r -> 1..k+1.
std::vector<std::vector<int>> injections(int r, int k) {
  std::vector<std::vector<int>> out;
  for (auto& t : all_tuples(r, k + 1)) {
    std::set<int> s(t.begin(), t.end());
    if (static_cast<int>(s.size()) == r) out.push_back(t);
  }
  return out;
}

// Chain names in tree order: H elements 1..r, then positions k+1..k+d.
std::vector<int> chain_names(int r, int k, int d) {
  std::vector<int> names;
  for (int a = 1; a <= r; ++a) names.push_back(a);
  for (int t = k + 1; t <= k + d; ++t) names.push_back(t);
  return names;
}

int first_position(const std::vector<int>& h, int value) {
  return static_cast<int>(std::find(h.begin(), h.end(), value) - h.begin());
}

// 0-based tuple position carrying the vertex of a chain name.
int name_position(const GeneratorId& g, int name) { return name <= g.k ? first_position(g.h, name) : name - 1; }

}  // namespace

std::string GeneratorId::to_string() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Identity:
      os << "I";
      break;
    case Kind::Adjacency:
      os << "A(" << i << "," << j << ")";
      break;
    case Kind::Join:
      os << "J(" << ell << ")";
      break;
  }
  os << "[h=" << join_ints(h) << ";in=" << join_ints(p_in) << ";out=" << join_ints(p_out) << "]";
  return os.str();
}

std::uint64_t generator_count_bound(int k, int d) {
  auto ipow = [](std::uint64_t b, int e) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) r = r > UINT64_MAX / b ? UINT64_MAX : r * b;
    return r;
  };
  std::uint64_t kk = ipow(k, k), len = static_cast<std::uint64_t>(k + d) * (k + d);
  std::uint64_t tags = ipow(k + 1, 2 * (k + d));
  if (kk > UINT64_MAX / len) return UINT64_MAX;
  std::uint64_t a = kk * len;
  return a > UINT64_MAX / tags ? UINT64_MAX : a * tags;
}

std::vector<GeneratorId> enumerate_generators(int k, int d, std::uint64_t cap) {
  if (k < 1 || d < 0) throw ArgumentError("k must be >= 1 and d >= 0");
  if (generator_count_bound(k, d) > cap)
    throw SizeError("generator count bound " + std::to_string(generator_count_bound(k, d)) + " exceeds cap " +
                    std::to_string(cap));
  std::vector<GeneratorId> out;
  std::set<std::tuple<std::vector<Edge>, std::vector<int>, std::vector<int>, std::vector<int>, std::vector<int>>> seen;
  auto push = [&](GeneratorId g) {
    WlkdElement e = materialise(g);
    auto key = std::tuple(e.bigraph.graph.edges(), e.bigraph.in_labels, e.bigraph.out_labels, e.parent, e.pebble);
    if (seen.insert(key).second) out.push_back(std::move(g));
  };

  for (const auto& h : onto_chains(k)) {
    const int r = h.back();
    for (const auto& ph : injections(r, k)) {
      std::vector<int> base(k);
      for (int i = 0; i < k; ++i) base[i] = ph[h[i] - 1];
      auto extend = [&](const std::vector<int>& prefix, int upto) {
        std::vector<std::vector<int>> res;
        int extra = k + d - upto;
        for (auto& t : extra > 0 ? all_tuples(extra, k + 1) : std::vector<std::vector<int>>{{}}) {
          std::vector<int> p(prefix.begin(), prefix.begin() + upto);
          p.insert(p.end(), t.begin(), t.end());
          res.push_back(std::move(p));
        }
        return res;
      };
      const auto full = extend(base, k);
      const auto names = chain_names(r, k, d);

      for (const auto& p : full) push({GeneratorId::Kind::Identity, k, d, h, 0, 0, 0, p, p});

      for (const auto& p : full) {
        auto pebble = [&](int name) { return name <= k ? ph[name - 1] : p[name - 1]; };
        for (std::size_t a = 0; a < names.size(); ++a)
          for (std::size_t b = a + 1; b < names.size(); ++b) {
            bool ok = true;
            for (std::size_t c = a + 1; c <= b && ok; ++c) ok = pebble(names[c]) != pebble(names[a]);
            if (ok) push({GeneratorId::Kind::Adjacency, k, d, h, names[a], names[b], 0, p, p});
          }
      }

      for (int ell = k; ell < k + d; ++ell)
        for (const auto& pin : full)
          for (const auto& pout : extend(pin, ell)) push({GeneratorId::Kind::Join, k, d, h, 0, 0, ell, pin, pout});
    }
  }
  return out;
}

WlkdElement materialise(const GeneratorId& g) {
  const int k = g.k, d = g.d;
  if (static_cast<int>(g.h.size()) != k || g.p_in.size() != static_cast<std::size_t>(k + d) ||
      g.p_out.size() != static_cast<std::size_t>(k + d))
    throw ArgumentError("malformed generator " + g.to_string());
  const int r = g.h.back();
  const bool join = g.kind == GeneratorId::Kind::Join;
  const int primes = join ? k + d - g.ell : 0;
  const int n = r + d + primes;

  WlkdElement e;
  e.k = k;
  e.d = d;
  e.parent.assign(n, -1);
  e.pebble.assign(n, 1);
  auto chain_vertex = [&](int t) { return r + t - k - 1; };  // position t > k
  auto prime_vertex = [&](int t) { return r + d + t - g.ell - 1; };
  for (int a = 0; a < r; ++a) {
    e.parent[a] = a - 1;
    e.pebble[a] = g.p_in[first_position(g.h, a + 1)];
  }
  for (int t = k + 1; t <= k + d; ++t) {
    e.parent[chain_vertex(t)] = t == k + 1 ? r - 1 : chain_vertex(t - 1);
    e.pebble[chain_vertex(t)] = g.p_in[t - 1];
  }
  for (int t = g.ell + 1; join && t <= k + d; ++t) {
    int above = t - 1;
    int pv = t == g.ell + 1 ? (above == k ? r - 1 : chain_vertex(above)) : prime_vertex(above);
    e.parent[prime_vertex(t)] = pv;
    e.pebble[prime_vertex(t)] = g.p_out[t - 1];
  }
  for (int i = 0; i < k; ++i) e.bigraph.in_labels.push_back(g.h[i] - 1);
  for (int t = k + 1; t <= k + d; ++t) e.bigraph.in_labels.push_back(chain_vertex(t));
  e.bigraph.out_labels = e.bigraph.in_labels;
  for (int t = g.ell + 1; join && t <= k + d; ++t) e.bigraph.out_labels[t - 1] = prime_vertex(t);

  std::vector<Edge> edges;
  if (g.kind == GeneratorId::Kind::Adjacency) {
    auto vertex = [&](int name) { return name <= k ? name - 1 : chain_vertex(name); };
    edges.emplace_back(vertex(g.i), vertex(g.j));
  }
  e.bigraph.graph = Graph(n, std::move(edges));
  e.p_in = g.p_in;
  e.p_out = g.p_out;
  return e;
}

HomMatrix generator_matrix(const GeneratorId& gen, const Graph& g) {
  const int n = g.order(), len = gen.k + gen.d;
  HomMatrix m(n, len, len);
  const std::size_t size = m.rows();
  std::vector<int> digits(len, 0);
  std::size_t block = 1;
  if (gen.kind == GeneratorId::Kind::Join)
    for (int i = gen.ell; i < len; ++i) block *= static_cast<std::size_t>(n);
  int pi = 0, pj = 0;
  if (gen.kind == GeneratorId::Kind::Adjacency) {
    pi = name_position(gen, gen.i);
    pj = name_position(gen, gen.j);
  }
  for (std::size_t x = 0; x < size; ++x) {
    bool consistent = true;
    for (int a = 0; a < gen.k && consistent; ++a)
      for (int b = a + 1; b < gen.k && consistent; ++b)
        if (gen.h[a] == gen.h[b]) consistent = digits[a] == digits[b];
    if (consistent) {
      switch (gen.kind) {
        case GeneratorId::Kind::Identity:
          m(x, x) = 1;
          break;
        case GeneratorId::Kind::Adjacency:
          m(x, x) = g.adjacent(digits[pi], digits[pj]) ? 1 : 0;
          break;
        case GeneratorId::Kind::Join: {
          std::size_t start = x / block * block;
          for (std::size_t y = start; y < start + block; ++y) m(x, y) = 1;
          break;
        }
      }
    }
    for (int i = len - 1; i >= 0; --i) {
      if (++digits[i] < n) break;
      digits[i] = 0;
    }
  }
  return m;
}

int tag_index(const std::vector<int>& tag, int k) {
  int idx = 0;
  for (int v : tag) idx = idx * (k + 1) + (v - 1);
  return idx;
}

}  // namespace wlspec
