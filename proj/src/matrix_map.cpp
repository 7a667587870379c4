#include "wlspec/matrix_map.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

#include "eigen_util.hpp"
#include "wlspec/errors.hpp"

namespace wlspec {
namespace {

using Kind = MatrixMapId::Kind;

struct LeafName {
  Kind kind;
  const char* name;
};

constexpr LeafName kLeaves[] = {
    {Kind::Adjacency, "adjacency"},
    {Kind::Degree, "degree"},
    {Kind::Laplacian, "laplacian"},
    {Kind::SignlessLaplacian, "signlessLaplacian"},
    {Kind::ComplementAdjacency, "complementAdjacency"},
    {Kind::Seidel, "seidel"},
    {Kind::RandomWalk, "rwLaplacian"},
    {Kind::SymmetricLaplacian, "symLaplacian"},
    {Kind::Identity, "identity"},
    {Kind::AllOnes, "allOnes"},
    {Kind::EdgeCount, "edgeCount"},
};

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  MatrixMapId parse_all() {
    MatrixMapId id = parse_map();
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing text");
    return id;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(pos_, what + " in map id '" + std::string(s_) + "'"); }
  void skip() {
    while (pos_ < s_.size() && s_[pos_] == ' ') ++pos_;
  }
  void expect(char c) {
    skip();
    if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  std::string word() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a map name");
    return std::string(s_.substr(start, pos_ - start));
  }
  std::string token() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && s_[pos_] != ',' && s_[pos_] != ')' && s_[pos_] != ' ') ++pos_;
    if (start == pos_) fail("expected a number");
    return std::string(s_.substr(start, pos_ - start));
  }
  double number() {
    std::size_t at = pos_;
    std::string t = token();
    double x = 0;
    auto res = std::from_chars(t.data(), t.data() + t.size(), x);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size() || !std::isfinite(x)) {
      pos_ = at;
      fail("malformed number '" + t + "'");
    }
    return x;
  }
  mpq_class rational() {
    std::size_t at = pos_;
    std::string t = token();
    mpq_class q;
    if (q.set_str(t, 10) != 0 || sgn(q.get_den()) == 0) {
      pos_ = at;
      fail("malformed rational '" + t + "'");
    }
    q.canonicalize();
    return q;
  }

  MatrixMapId parse_map() {
    std::size_t at = pos_;
    std::string w = word();
    for (const auto& leaf : kLeaves)
      if (w == leaf.name) return MatrixMapId::leaf(leaf.kind);
    if (w == "heatKernel") {
      expect('(');
      double t = number();
      expect(')');
      return MatrixMapId::heat_kernel(t);
    }
    if (w == "projection") {
      expect('(');
      MatrixMapId base = parse_map();
      expect(',');
      double lambda = number();
      expect(')');
      return MatrixMapId::projection(base, lambda);
    }
    if (w == "sum" || w == "product") {
      expect('(');
      MatrixMapId a = parse_map();
      expect(',');
      MatrixMapId b = parse_map();
      expect(')');
      return w == "sum" ? MatrixMapId::sum(a, b) : MatrixMapId::product(a, b);
    }
    if (w == "transpose" || w == "inverse") {
      expect('(');
      MatrixMapId a = parse_map();
      expect(')');
      return w == "transpose" ? MatrixMapId::transpose(a) : MatrixMapId::inverse(a);
    }
    if (w == "scale") {
      expect('(');
      MatrixMapId a = parse_map();
      expect(',');
      mpq_class f = rational();
      expect(')');
      return MatrixMapId::scale(a, f);
    }
    pos_ = at;
    fail("unknown map '" + w + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

std::vector<double> checked_degrees(const Graph& g) {
  std::vector<double> d(g.order());
  for (int v = 0; v < g.order(); ++v) {
    if (g.degree(v) == 0) throw NumericError("vertex " + std::to_string(v) + " is isolated; D^-1 is undefined");
    d[v] = g.degree(v);
  }
  return d;
}

RationalMatrix exact_leaf(Kind kind, const Graph& g) {
  int n = g.order();
  RationalMatrix a = adjacency_matrix(g);
  RationalMatrix d = degree_matrix(g);
  RationalMatrix i = RationalMatrix::identity(n);
  RationalMatrix j(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) j(r, c) = 1;
  switch (kind) {
    case Kind::Adjacency: return a;
    case Kind::Degree: return d;
    case Kind::Laplacian: return d - a;
    case Kind::SignlessLaplacian: return d + a;
    case Kind::ComplementAdjacency: return j - a - i;
    case Kind::Seidel: return j - i - a.scaled(2);
    case Kind::Identity: return i;
    case Kind::AllOnes: return j;
    case Kind::EdgeCount: return i.scaled(g.edge_count());
    case Kind::RandomWalk: {
      checked_degrees(g);
      RationalMatrix m(n, n);
      for (int r = 0; r < n; ++r)
        for (int c : g.neighbours(r)) m(r, c) = mpq_class(1, g.degree(r));
      return m;
    }
    default: throw ContractError("not an exact leaf");
  }
}

MatrixValue float_value(Eigen::MatrixXd m) {
  MatrixValue v;
  v.layer = MatrixValue::Layer::Float;
  v.real = std::move(m);
  return v;
}

MatrixValue exact_value(RationalMatrix m) {
  MatrixValue v;
  v.layer = MatrixValue::Layer::Exact;
  v.exact = std::move(m);
  return v;
}

}  // namespace

MatrixMapId MatrixMapId::leaf(Kind kind) {
  for (const auto& l : kLeaves)
    if (l.kind == kind) return MatrixMapId(std::make_shared<const Node>(Node{kind, {}, 0, 0}));
  throw ArgumentError("kind is not a leaf map");
}

MatrixMapId MatrixMapId::heat_kernel(double t) {
  return MatrixMapId(std::make_shared<const Node>(Node{Kind::HeatKernel, {}, t, 0}));
}

MatrixMapId MatrixMapId::projection(MatrixMapId base, double lambda) {
  return MatrixMapId(std::make_shared<const Node>(Node{Kind::Projection, {std::move(base)}, lambda, 0}));
}

MatrixMapId MatrixMapId::sum(MatrixMapId a, MatrixMapId b) {
  return MatrixMapId(std::make_shared<const Node>(Node{Kind::Sum, {std::move(a), std::move(b)}, 0, 0}));
}

MatrixMapId MatrixMapId::product(MatrixMapId a, MatrixMapId b) {
  return MatrixMapId(std::make_shared<const Node>(Node{Kind::Product, {std::move(a), std::move(b)}, 0, 0}));
}

MatrixMapId MatrixMapId::transpose(MatrixMapId a) {
  return MatrixMapId(std::make_shared<const Node>(Node{Kind::Transpose, {std::move(a)}, 0, 0}));
}

MatrixMapId MatrixMapId::scale(MatrixMapId a, mpq_class factor) {
  factor.canonicalize();
  return MatrixMapId(std::make_shared<const Node>(Node{Kind::Scale, {std::move(a)}, 0, std::move(factor)}));
}

MatrixMapId MatrixMapId::inverse(MatrixMapId a) {
  return MatrixMapId(std::make_shared<const Node>(Node{Kind::Inverse, {std::move(a)}, 0, 0}));
}

MatrixMapId MatrixMapId::parse(std::string_view text) { return Parser(text).parse_all(); }

std::vector<MatrixMapId> MatrixMapId::integer_maps() {
  return {leaf(Kind::Adjacency), leaf(Kind::Degree), leaf(Kind::Laplacian), leaf(Kind::SignlessLaplacian),
          leaf(Kind::ComplementAdjacency), leaf(Kind::Seidel)};
}

std::string MatrixMapId::name() const {
  for (const auto& l : kLeaves)
    if (l.kind == kind()) return l.name;
  const auto& ch = children();
  switch (kind()) {
    case Kind::HeatKernel: return "heatKernel(" + format_double(parameter()) + ")";
    case Kind::Projection: return "projection(" + ch[0].name() + "," + format_double(parameter()) + ")";
    case Kind::Sum: return "sum(" + ch[0].name() + "," + ch[1].name() + ")";
    case Kind::Product: return "product(" + ch[0].name() + "," + ch[1].name() + ")";
    case Kind::Transpose: return "transpose(" + ch[0].name() + ")";
    case Kind::Scale: return "scale(" + ch[0].name() + "," + factor().get_str() + ")";
    case Kind::Inverse: return "inverse(" + ch[0].name() + ")";
    default: return "?";
  }
}

bool MatrixMapId::exact() const {
  switch (kind()) {
    case Kind::SymmetricLaplacian:
    case Kind::HeatKernel:
    case Kind::Projection: return false;
    default:
      for (const auto& c : children())
        if (!c.exact()) return false;
      return true;
  }
}

int MatrixValue::size() const { return layer == Layer::Exact ? exact.rows() : static_cast<int>(real.rows()); }

Eigen::MatrixXd MatrixValue::to_double() const { return layer == Layer::Exact ? detail::to_eigen(exact) : real; }

RationalMatrix adjacency_matrix(const Graph& g) {
  RationalMatrix a(g.order(), g.order());
  for (auto [u, v] : g.edges()) a(u, v) = a(v, u) = 1;
  return a;
}

RationalMatrix degree_matrix(const Graph& g) {
  RationalMatrix d(g.order(), g.order());
  for (int v = 0; v < g.order(); ++v) d(v, v) = g.degree(v);
  return d;
}

MatrixValue evaluate(const MatrixMapId& id, const Graph& g, const SpectralOptions& opts) {
  int n = g.order();
  const auto& ch = id.children();
  switch (id.kind()) {
    case Kind::SymmetricLaplacian: {
      auto d = checked_degrees(g);
      Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
      for (auto [u, v] : g.edges()) m(u, v) = m(v, u) = -1.0 / std::sqrt(d[u] * d[v]);
      return float_value(std::move(m));
    }
    case Kind::HeatKernel: {
      Eigen::MatrixXd l = detail::to_eigen(exact_leaf(Kind::Laplacian, g));
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(l);
      if (es.info() != Eigen::Success) throw NumericError("eigensolver failed on the Laplacian");
      Eigen::VectorXd w = (-id.parameter() * es.eigenvalues().array()).exp();
      return float_value(es.eigenvectors() * w.asDiagonal() * es.eigenvectors().transpose());
    }
    case Kind::Projection: {
      MatrixValue base = evaluate(ch[0], g, opts);
      detail::RealEigen e = detail::real_eigendecomposition(ch[0], base, g);
      Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
      for (const auto& group : detail::group_eigenvalues(e.values, opts.eigen_tolerance)) {
        if (std::abs(group.value - id.parameter()) <= opts.eigen_tolerance * std::max(1.0, std::abs(group.value))) {
          p = detail::group_projection(e, group);
        }
      }
      return float_value(std::move(p));
    }
    case Kind::Sum:
    case Kind::Product: {
      MatrixValue a = evaluate(ch[0], g, opts);
      MatrixValue b = evaluate(ch[1], g, opts);
      bool sum = id.kind() == Kind::Sum;
      if (a.layer == MatrixValue::Layer::Exact && b.layer == MatrixValue::Layer::Exact) {
        return exact_value(sum ? a.exact + b.exact : a.exact * b.exact);
      }
      Eigen::MatrixXd x = a.to_double(), y = b.to_double();
      return float_value(sum ? Eigen::MatrixXd(x + y) : Eigen::MatrixXd(x * y));
    }
    case Kind::Transpose: {
      MatrixValue a = evaluate(ch[0], g, opts);
      if (a.layer == MatrixValue::Layer::Exact) return exact_value(a.exact.transpose());
      return float_value(a.real.transpose());
    }
    case Kind::Scale: {
      MatrixValue a = evaluate(ch[0], g, opts);
      if (a.layer == MatrixValue::Layer::Exact) return exact_value(a.exact.scaled(id.factor()));
      return float_value(a.real * id.factor().get_d());
    }
    case Kind::Inverse: {
      MatrixValue a = evaluate(ch[0], g, opts);
      if (a.layer == MatrixValue::Layer::Exact) {
        auto inv = a.exact.inverse();
        return exact_value(inv ? *inv : RationalMatrix(n, n));
      }
      Eigen::FullPivLU<Eigen::MatrixXd> lu(a.real);
      if (!lu.isInvertible()) return float_value(Eigen::MatrixXd::Zero(n, n));
      return float_value(lu.inverse());
    }
    default: return exact_value(exact_leaf(id.kind(), g));
  }
}

}  // namespace wlspec
