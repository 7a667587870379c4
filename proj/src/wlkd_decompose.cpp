#include <algorithm>
#include <numeric>

#include "wlkd_internal.hpp"
#include "wlspec/errors.hpp"
#include "wlspec/wlkd.hpp"

namespace wlspec {

namespace {

using detail::TreeOrder;

std::vector<int> chain_pattern(const std::vector<int>& u, int k) {
  std::vector<int> h(k, 1);
  for (int i = 1; i < k; ++i) h[i] = h[i - 1] + (u[i] != u[i - 1] ? 1 : 0);
  return h;
}

WlkdElement restrict(const WlkdElement& e, const std::vector<int>& keep, const std::vector<int>& in,
                     const std::vector<int>& out, std::vector<int> p_in, std::vector<int> p_out) {
  std::vector<int> index(e.size(), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) index[keep[i]] = static_cast<int>(i);
  WlkdElement r;
  r.k = e.k;
  r.d = e.d;
  for (int x : keep) {
    r.parent.push_back(e.parent[x] < 0 ? -1 : index[e.parent[x]]);
    r.pebble.push_back(e.pebble[x]);
  }
  r.bigraph.graph = e.bigraph.graph.induced(keep);
  for (int x : in) r.bigraph.in_labels.push_back(index[x]);
  for (int x : out) r.bigraph.out_labels.push_back(index[x]);
  r.p_in = std::move(p_in);
  r.p_out = std::move(p_out);
  return r;
}

void decompose_into(const WlkdElement& e, std::vector<GeneratorId>& out) {
  const int k = e.k, d = e.d, last = k + d - 1;
  const auto& u = e.bigraph.in_labels;
  const auto& v = e.bigraph.out_labels;
  const auto h = chain_pattern(u, k);
  TreeOrder t(e.parent);
  const auto leaves = t.leaves();

  if (leaves.size() == 1) {
    std::vector<int> name(e.size(), 0);
    for (int i = 0; i < k; ++i) name[u[i]] = h[i];
    for (int i = k; i <= last; ++i) name[u[i]] = i + 1;
    out.push_back({GeneratorId::Kind::Identity, k, d, h, 0, 0, 0, e.p_in, e.p_in});
    for (auto [a, b] : e.bigraph.graph.edges()) {
      int i = std::min(name[a], name[b]), j = std::max(name[a], name[b]);
      out.push_back({GeneratorId::Kind::Adjacency, k, d, h, i, j, 0, e.p_in, e.p_in});
    }
    return;
  }

  const int uk = u[k - 1], ul = u[last], vl = v[last];
  int best = -1;
  std::vector<int> candidates;
  for (int y : leaves) {
    if (y == ul) continue;
    int g = detail::gca(t, uk, ul, y);
    if (g > best) {
      best = g;
      candidates.clear();
    }
    if (g == best) candidates.push_back(y);
  }
  int x = candidates[0];
  for (int y : candidates)
    if (detail::gca(t, uk, y, vl) < detail::gca(t, uk, x, vl)) x = y;

  std::vector<int> xbar(u.begin(), u.begin() + k);
  std::vector<int> below;
  for (int z = x; z != uk; z = e.parent[z]) below.push_back(z);
  xbar.insert(xbar.end(), below.rbegin(), below.rend());
  int ell = k;
  while (ell < k + d && xbar[ell] == u[ell]) ++ell;

  std::vector<int> upper, lower;
  for (int z = 0; z < e.size(); ++z) {
    bool above_ul = t.leq(z, ul);
    if (above_ul) upper.push_back(z);
    if (!(above_ul && !t.comparable(z, x))) lower.push_back(z);
  }
  std::vector<int> p_mid;
  for (int z : xbar) p_mid.push_back(e.pebble[z]);

  decompose_into(restrict(e, upper, u, u, e.p_in, e.p_in), out);
  out.push_back({GeneratorId::Kind::Join, k, d, h, 0, 0, ell, e.p_in, p_mid});
  decompose_into(restrict(e, lower, xbar, v, p_mid, e.p_out), out);
}

}  // namespace

std::vector<GeneratorId> decompose(const WlkdElement& e) {
  if (e.bottom) throw ContractError("the absorbing element has no decomposition");
  AxiomReport rep = validate(e);
  if (!rep.ok()) {
    std::string names;
    for (const auto& n : rep.failed()) names += (names.empty() ? "" : ",") + n;
    throw ContractError("element fails validation: " + names);
  }
  std::vector<GeneratorId> out;
  decompose_into(e, out);
  return out;
}

WlkdElement recompose(const std::vector<GeneratorId>& word) {
  if (word.empty()) throw ArgumentError("empty generator list");
  WlkdElement acc = materialise(word[0]);
  for (std::size_t i = 1; i < word.size(); ++i) acc = series_compose(acc, materialise(word[i]));
  return acc;
}

}  // namespace wlspec
