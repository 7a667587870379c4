#include <map>
#include <set>
#include <tuple>

#include "wlspec/errors.hpp"
#include "wlspec/wlkd.hpp"

namespace wlspec {

namespace {

std::uint64_t tuple_count(int n, int len, std::uint64_t cap) {
  std::uint64_t c = 1;
  for (int i = 0; i < len; ++i) {
    c *= static_cast<std::uint64_t>(n);
    if (c > cap) return cap + 1;
  }
  return c;
}

// Generator matrix as a 0/1 mask applied to vectors, with block sums for joins.
struct Operator {
  std::vector<char> mask;
  std::size_t block = 1;
  bool join = false;

  std::vector<std::int64_t> apply(const std::vector<std::int64_t>& v) const {
    std::vector<std::int64_t> out(v.size(), 0);
    if (!join) {
      for (std::size_t x = 0; x < v.size(); ++x)
        if (mask[x]) out[x] = v[x];
      return out;
    }
    for (std::size_t start = 0; start < v.size(); start += block) {
      std::int64_t s = 0;
      for (std::size_t y = start; y < start + block; ++y) s = checked_add(s, v[y]);
      for (std::size_t x = start; x < start + block; ++x)
        if (mask[x]) out[x] = s;
    }
    return out;
  }
};

Operator make_operator(const GeneratorId& gen, const Graph& g) {
  HomMatrix m = generator_matrix(gen, g);
  Operator op;
  op.join = gen.kind == GeneratorId::Kind::Join;
  if (op.join)
    for (int i = gen.ell; i < gen.k + gen.d; ++i) op.block *= static_cast<std::size_t>(g.order());
  op.mask.assign(m.rows(), 0);
  for (std::size_t x = 0; x < m.rows(); ++x) op.mask[x] = m(x, x) != 0;
  return op;
}

using StructureKey = std::tuple<int, std::vector<int>, int, int, int>;

StructureKey structure_of(const GeneratorId& g) { return {static_cast<int>(g.kind), g.h, g.i, g.j, g.ell}; }

std::int64_t sum(const std::vector<std::int64_t>& v) {
  std::int64_t s = 0;
  for (auto x : v) s = checked_add(s, x);
  return s;
}

}  // namespace

WordSoeVerdict word_soe_test(const Graph& g, const Graph& h, int k, int d, const WordSoeOptions& opts) {
  const int len = k + d;
  if (tuple_count(g.order(), len, opts.max_tuples) > opts.max_tuples ||
      tuple_count(h.order(), len, opts.max_tuples) > opts.max_tuples)
    throw SizeError("n^(k+d) exceeds the word test tuple cap of " + std::to_string(opts.max_tuples));
  const auto gens = enumerate_generators(k, d);
  const std::set<GeneratorId> present(gens.begin(), gens.end());

  std::vector<Letter> letters;
  for (const auto& gen : gens) letters.push_back({gen, false});
  for (const auto& gen : gens) {
    GeneratorId rev = gen;
    std::swap(rev.p_in, rev.p_out);
    if (!present.count(rev)) letters.push_back({gen, true});
  }

  std::map<StructureKey, std::pair<Operator, Operator>> ops;
  for (const auto& gen : gens) {
    auto key = structure_of(gen);
    if (!ops.count(key)) ops.emplace(key, std::pair(make_operator(gen, g), make_operator(gen, h)));
  }
  // All generator matrices are symmetric, so starred letters reuse the same operator.
  std::vector<const std::pair<Operator, Operator>*> letter_ops;
  for (const auto& l : letters) letter_ops.push_back(&ops.at(structure_of(l.generator)));
  auto tag_in = [&](std::size_t i) -> const std::vector<int>& {
    return letters[i].starred ? letters[i].generator.p_out : letters[i].generator.p_in;
  };
  auto tag_out = [&](std::size_t i) -> const std::vector<int>& {
    return letters[i].starred ? letters[i].generator.p_in : letters[i].generator.p_out;
  };

  WordSoeVerdict verdict;
  verdict.max_length = opts.max_length;
  verdict.alphabet_size = static_cast<int>(letters.size());
  const std::size_t ng = tuple_count(g.order(), len, opts.max_tuples);
  const std::size_t nh = tuple_count(h.order(), len, opts.max_tuples);

  std::vector<std::size_t> word;
  bool stop = false;
  auto dfs = [&](auto&& self, int target, const std::vector<std::int64_t>& vg, const std::vector<std::int64_t>& vh) -> void {
    for (std::size_t i = 0; i < letters.size() && !stop; ++i) {
      if (!word.empty() && tag_out(word.back()) != tag_in(i)) continue;
      auto wg = letter_ops[i]->first.apply(vg);
      auto wh = letter_ops[i]->second.apply(vh);
      word.push_back(i);
      if (static_cast<int>(word.size()) == target) {
        ++verdict.words_checked;
        std::int64_t sg = sum(wg), sh = sum(wh);
        if (sg != sh) {
          verdict.witness_found = true;
          verdict.soe_g = sg;
          verdict.soe_h = sh;
          for (auto w : word) verdict.word.push_back(letters[w]);
          stop = true;
        } else if (verdict.words_checked >= opts.max_words) {
          stop = true;
        }
      } else {
        self(self, target, wg, wh);
      }
      word.pop_back();
    }
  };
  const std::vector<std::int64_t> ones_g(ng, 1), ones_h(nh, 1);
  for (int target = 1; target <= opts.max_length && !stop; ++target) dfs(dfs, target, ones_g, ones_h);
  return verdict;
}

PseudoStochasticVerdict pseudo_stochastic_feasible(const Graph& g, const Graph& h, int k, int d,
                                                   const PseudoStochasticOptions& opts) {
  const int len = k + d;
  const std::uint64_t tags = tuple_count(k + 1, len, UINT32_MAX);
  const std::uint64_t ng = tuple_count(g.order(), len, opts.max_side);
  const std::uint64_t nh = tuple_count(h.order(), len, opts.max_side);
  const std::uint64_t side = std::max(ng, nh) * tags;
  if (side > opts.max_side)
    throw SizeError("pseudo-stochastic system side " + std::to_string(side) + " exceeds cap " +
                    std::to_string(opts.max_side) + "; use word_soe_test instead");
  const std::size_t mg = ng * tags, mh = nh * tags, P = tags;
  auto var = [&](std::size_t tuple_h, std::size_t tag_h, std::size_t tuple_g, std::size_t tag_g) {
    return static_cast<int>((tuple_h * P + tag_h) * mg + tuple_g * P + tag_g);
  };

  SparseRationalSystem sys(static_cast<int>(mh * mg));
  for (const auto& gen : enumerate_generators(k, d)) {
    HomMatrix fg = generator_matrix(gen, g), fh = generator_matrix(gen, h);
    std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> cols_g(ng), rows_h(nh);
    for (std::size_t x = 0; x < ng; ++x)
      for (std::size_t y = 0; y < ng; ++y)
        if (fg(x, y)) cols_g[y].emplace_back(x, fg(x, y));
    for (std::size_t x = 0; x < nh; ++x)
      for (std::size_t y = 0; y < nh; ++y)
        if (fh(x, y)) rows_h[x].emplace_back(y, fh(x, y));
    const std::size_t pin = tag_index(gen.p_in, k), pout = tag_index(gen.p_out, k);
    for (std::size_t tp = 0; tp < P; ++tp)
      for (std::size_t q = 0; q < P; ++q) {
        if (q != pout && tp != pin) continue;
        for (std::size_t xh = 0; xh < nh; ++xh)
          for (std::size_t yg = 0; yg < ng; ++yg) {
            std::vector<SparseRationalSystem::Term> terms;
            if (q == pout)
              for (auto [x, val] : cols_g[yg]) terms.emplace_back(var(xh, tp, x, pin), mpq_class(val));
            if (tp == pin)
              for (auto [y, val] : rows_h[xh]) terms.emplace_back(var(y, pout, yg, q), mpq_class(-val));
            if (!terms.empty()) sys.add_equation(std::move(terms), 0);
          }
      }
  }
  for (std::size_t r = 0; r < mh; ++r) {
    std::vector<SparseRationalSystem::Term> terms;
    for (std::size_t c = 0; c < mg; ++c) terms.emplace_back(static_cast<int>(r * mg + c), 1);
    sys.add_equation(std::move(terms), 1);
  }
  for (std::size_t c = 0; c < mg; ++c) {
    std::vector<SparseRationalSystem::Term> terms;
    for (std::size_t r = 0; r < mh; ++r) terms.emplace_back(static_cast<int>(r * mg + c), 1);
    sys.add_equation(std::move(terms), 1);
  }

  PseudoStochasticVerdict verdict;
  verdict.variables = sys.variables();
  verdict.equations = sys.equations();
  auto sol = sys.solve();
  verdict.feasible = sol.consistent;
  verdict.rank = sol.rank;
  if (sol.consistent) {
    RationalMatrix x(static_cast<int>(mh), static_cast<int>(mg));
    for (std::size_t r = 0; r < mh; ++r)
      for (std::size_t c = 0; c < mg; ++c) x(static_cast<int>(r), static_cast<int>(c)) = sol.values[r * mg + c];
    verdict.x = std::move(x);
  }
  return verdict;
}

}  // namespace wlspec
