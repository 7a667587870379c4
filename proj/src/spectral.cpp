#include "wlspec/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "eigen_util.hpp"
#include "wlspec/errors.hpp"
#include "wlspec/wl.hpp"

namespace wlspec {
namespace {

std::int64_t grid_key(double x, double grid) { return std::llround(x / grid); }

}  // namespace

bool SpectrumSummary::equivalent(const SpectrumSummary& other) const {
  if (eigenvalues.size() != other.eigenvalues.size()) return false;
  double tol = std::max(tolerance, other.tolerance);
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
    const auto& a = eigenvalues[i];
    const auto& b = other.eigenvalues[i];
    if (a.multiplicity != b.multiplicity) return false;
    if (std::abs(a.value - b.value) > tol * std::max(1.0, std::abs(a.value))) return false;
  }
  return true;
}

SpectrumSummary spectrum(const MatrixMapId& id, const Graph& g, const SpectralOptions& opts) {
  MatrixValue value = evaluate(id, g, opts);
  detail::RealEigen e = detail::real_eigendecomposition(id, value, g);
  SpectrumSummary s;
  s.tolerance = opts.eigen_tolerance;
  for (const auto& group : detail::group_eigenvalues(e.values, opts.eigen_tolerance)) {
    s.eigenvalues.push_back({group.value, static_cast<int>(group.indices.size())});
  }
  if (value.layer == MatrixValue::Layer::Exact) s.characteristic_polynomial = characteristic_polynomial(value.exact);
  return s;
}

bool cospectral(const MatrixMapId& id, const Graph& g, const Graph& h, const SpectralOptions& opts) {
  if (g.order() != h.order()) return false;
  if (id.exact()) {
    MatrixValue a = evaluate(id, g, opts);
    MatrixValue b = evaluate(id, h, opts);
    return characteristic_polynomial(a.exact) == characteristic_polynomial(b.exact);
  }
  return spectrum(id, g, opts).equivalent(spectrum(id, h, opts));
}

FuererInvariant fuerer_invariant(const Graph& g, const SpectralOptions& opts) {
  MatrixMapId a = MatrixMapId::adjacency();
  MatrixValue value = evaluate(a, g, opts);
  detail::RealEigen e = detail::real_eigendecomposition(a, value, g);
  auto groups = detail::group_eigenvalues(e.values, opts.eigen_tolerance);
  std::vector<Eigen::MatrixXd> proj;
  FuererInvariant f;
  f.grid = opts.rounding_grid;
  for (const auto& group : groups) {
    proj.push_back(detail::group_projection(e, group));
    f.eigenvalues.push_back(grid_key(group.value, f.grid));
    f.multiplicities.push_back(static_cast<int>(group.indices.size()));
  }
  int n = g.order();
  for (int v = 0; v < n; ++v) {
    FuererInvariant::VertexProfile p;
    for (const auto& m : proj) p.diagonal.push_back(grid_key(m(v, v), f.grid));
    for (int w = 0; w < n; ++w) {
      std::vector<std::int64_t> entry;
      for (const auto& m : proj) entry.push_back(grid_key(m(v, w), f.grid));
      p.off_diagonal.push_back(std::move(entry));
    }
    std::sort(p.off_diagonal.begin(), p.off_diagonal.end());
    f.per_vertex.push_back(std::move(p));
  }
  std::sort(f.per_vertex.begin(), f.per_vertex.end());
  return f;
}

std::vector<MapDeviation> entry_colour_consistency_check(const Graph& g, const Graph& h,
                                                         const std::vector<MatrixMapId>& ids,
                                                         const SpectralOptions& opts) {
  if (!wl11_indistinguishable(g, h).indistinguishable) {
    throw ContractError("entry consistency requires (1,1)-WL indistinguishable graphs");
  }
  auto [cg, chh] = wl11_joint_pair_colours(g, h);
  int n = g.order();
  std::vector<MapDeviation> out;
  for (const auto& id : ids) {
    MapDeviation dev{id.name(), id.exact(), 0};
    MatrixValue a = evaluate(id, g, opts);
    MatrixValue b = evaluate(id, h, opts);
    if (a.layer == MatrixValue::Layer::Exact && b.layer == MatrixValue::Layer::Exact) {
      std::map<int, mpq_class> ref;
      mpq_class worst = 0;
      for (const auto* side : {&a, &b}) {
        const Colouring& col = side == &a ? cg : chh;
        for (int v = 0; v < n; ++v)
          for (int w = 0; w < n; ++w) {
            const mpq_class& x = side->exact(v, w);
            auto [it, fresh] = ref.emplace(col.colour[v * n + w], x);
            if (!fresh) worst = std::max(worst, mpq_class(abs(x - it->second)));
          }
      }
      dev.max_deviation = worst.get_d();
    } else {
      Eigen::MatrixXd x = a.to_double(), y = b.to_double();
      std::map<int, double> ref;
      for (const auto* side : {&x, &y}) {
        const Colouring& col = side == &x ? cg : chh;
        for (int v = 0; v < n; ++v)
          for (int w = 0; w < n; ++w) {
            double e = (*side)(v, w);
            auto [it, fresh] = ref.emplace(col.colour[v * n + w], e);
            if (!fresh) dev.max_deviation = std::max(dev.max_deviation, std::abs(e - it->second));
          }
      }
      dev.exact = false;
    }
    out.push_back(std::move(dev));
  }
  return out;
}

RationalMatrix averaging_matrix(const Graph& g, int v) {
  RefinementResult r = wl1_refine(individualise(g, v));
  int n = g.order();
  std::vector<int> size(r.colouring.num_classes, 0);
  for (int c : r.colouring.colour) ++size[c];
  RationalMatrix m(n, n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (r.colouring.colour[x] == r.colouring.colour[y]) m(x, y) = mpq_class(1, size[r.colouring.colour[x]]);
  return m;
}

double e1_commutation_defect(const MatrixMapId& id, const Graph& g, int v, const SpectralOptions& opts) {
  RationalMatrix m = averaging_matrix(g, v);
  MatrixValue phi = evaluate(id, g, opts);
  if (phi.layer == MatrixValue::Layer::Exact) {
    RationalMatrix d = m * phi.exact - phi.exact * m;
    mpq_class worst = 0;
    for (int r = 0; r < d.rows(); ++r)
      for (int c = 0; c < d.cols(); ++c) worst = std::max(worst, mpq_class(abs(d(r, c))));
    return worst.get_d();
  }
  Eigen::MatrixXd md = detail::to_eigen(m);
  if (g.order() == 0) return 0;
  return (md * phi.real - phi.real * md).cwiseAbs().maxCoeff();
}

std::vector<std::vector<int>> power_distances(const Graph& g) {
  int n = g.order();
  std::vector<std::vector<int>> dist(n, std::vector<int>(n, -1));
  // walks[s][t]: some walk of the current length joins s and t.
  std::vector<std::vector<char>> walks(n, std::vector<char>(n, 0));
  for (int s = 0; s < n; ++s) {
    walks[s][s] = 1;
    dist[s][s] = 0;
  }
  for (int len = 1; len < n; ++len) {
    std::vector<std::vector<char>> next(n, std::vector<char>(n, 0));
    for (int s = 0; s < n; ++s)
      for (int x = 0; x < n; ++x)
        if (walks[s][x])
          for (int t : g.neighbours(x)) next[s][t] = 1;
    walks = std::move(next);
    for (int s = 0; s < n; ++s)
      for (int t = 0; t < n; ++t)
        if (walks[s][t] && dist[s][t] < 0) dist[s][t] = len;
  }
  return dist;
}

Eigen::MatrixXd hitting_times(const Graph& g) {
  int n = g.order();
  if (component_count(g) != 1) throw ArgumentError("hitting times need a connected graph");
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  if (n == 1) return h;
  for (int t = 0; t < n; ++t) {
    // h(s) - sum_{w != t} M(s,w) h(w) = 1 for s != t, h(t) = 0.
    std::vector<int> idx;
    for (int s = 0; s < n; ++s)
      if (s != t) idx.push_back(s);
    std::vector<int> pos(n, -1);
    for (int i = 0; i < n - 1; ++i) pos[idx[i]] = i;
    Eigen::MatrixXd sys = Eigen::MatrixXd::Identity(n - 1, n - 1);
    for (int i = 0; i < n - 1; ++i) {
      int s = idx[i];
      for (int w : g.neighbours(s))
        if (w != t) sys(i, pos[w]) -= 1.0 / g.degree(s);
    }
    Eigen::VectorXd sol = sys.fullPivLu().solve(Eigen::VectorXd::Ones(n - 1));
    for (int i = 0; i < n - 1; ++i) h(idx[i], t) = sol(i);
  }
  return h;
}

CommuteResult commute_distances(const Graph& g) {
  int n = g.order();
  const double inf = std::numeric_limits<double>::infinity();
  CommuteResult r;
  r.kappa = Eigen::MatrixXd::Constant(n, n, inf);
  r.hitting = Eigen::MatrixXd::Constant(n, n, inf);
  auto comp = connected_components(g);
  int count = component_count(g);
  for (int c = 0; c < count; ++c) {
    std::vector<int> vs;
    for (int v = 0; v < n; ++v)
      if (comp[v] == c) vs.push_back(v);
    int k = static_cast<int>(vs.size());
    Graph sub = g.induced(vs);
    if (k == 1) {
      r.kappa(vs[0], vs[0]) = 0;
      r.hitting(vs[0], vs[0]) = 0;
      continue;
    }
    double m2 = 2.0 * sub.edge_count();
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(k, k);
    for (auto [u, v] : sub.edges()) a(u, v) = a(v, u) = 1;
    Eigen::VectorXd deg = a.rowwise().sum();
    Eigen::MatrixXd walk = deg.cwiseInverse().asDiagonal() * a;
    Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(k, k);
    Eigen::MatrixXd lhs = Eigen::MatrixXd::Identity(k, k) - walk + ones * deg.asDiagonal() / m2;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(lhs);
    if (!lu.isInvertible()) throw NumericError("fundamental matrix is singular on a connected component");
    Eigen::MatrixXd kmat = lu.inverse() * (Eigen::MatrixXd(m2 * deg.cwiseInverse().asDiagonal()) - ones);
    Eigen::MatrixXd hit = hitting_times(sub);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        double kappa = kmat(i, i) + kmat(j, j) - kmat(i, j) - kmat(j, i);
        double oracle = hit(i, j) + hit(j, i);
        double dev = std::abs(kappa - oracle);
        r.oracle_deviation = std::max(r.oracle_deviation, dev);
        if (dev > 1e-8 * std::max(1.0, std::abs(oracle))) {
          throw NumericError("commute formula disagrees with hitting-time solve by " + std::to_string(dev));
        }
        r.kappa(vs[i], vs[j]) = i == j ? 0.0 : kappa;
        r.hitting(vs[i], vs[j]) = hit(i, j);
      }
  }
  return r;
}

std::vector<double> commute_multiset(const Graph& g) {
  CommuteResult r = commute_distances(g);
  std::vector<double> out;
  for (int s = 0; s < g.order(); ++s)
    for (int t = s + 1; t < g.order(); ++t) out.push_back(r.kappa(s, t));
  std::sort(out.begin(), out.end());
  return out;
}

bool commute_multiset_equal(const Graph& g, const Graph& h, double tolerance) {
  auto a = commute_multiset(g);
  auto b = commute_multiset(h);
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::isinf(a[i]) || std::isinf(b[i])) {
      if (a[i] != b[i]) return false;
      continue;
    }
    if (std::abs(a[i] - b[i]) > tolerance * std::max(1.0, std::abs(a[i]))) return false;
  }
  return true;
}

}  // namespace wlspec
