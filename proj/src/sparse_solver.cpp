#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include "wlspec/errors.hpp"
#include "wlspec/rational.hpp"

namespace wlspec {

SparseRationalSystem::SparseRationalSystem(int variables) : variables_(variables) {
  if (variables < 0) throw ArgumentError("negative variable count");
}

void SparseRationalSystem::add_equation(std::vector<Term> terms, mpq_class rhs) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
  Row row;
  for (auto& [var, coef] : terms) {
    if (var < 0 || var >= variables_) throw ArgumentError("variable index out of range");
    if (!row.terms.empty() && row.terms.back().first == var) {
      row.terms.back().second += coef;
    } else {
      row.terms.emplace_back(var, coef);
    }
  }
  std::erase_if(row.terms, [](const Term& t) { return sgn(t.second) == 0; });
  row.rhs = std::move(rhs);
  rows_.push_back(std::move(row));
}

namespace {

using Terms = std::vector<SparseRationalSystem::Term>;

// a - f * b over sorted sparse vectors, dropping zeros.
Terms axpy(const Terms& a, const mpq_class& f, const Terms& b) {
  Terms out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, -f * b[j].second);
      ++j;
    } else {
      mpq_class v = a[i].second - f * b[j].second;
      if (sgn(v) != 0) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

std::size_t bit_size(const mpq_class& q) {
  return mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
}

}  // namespace

SparseRationalSystem::Solution SparseRationalSystem::solve() const {
  Solution sol;
  std::vector<std::size_t> order(rows_.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return rows_[a].terms.size() < rows_[b].terms.size(); });

  struct Pivot {
    int var;
    Terms terms;  // includes var with coefficient 1
    mpq_class rhs;
  };
  std::vector<Pivot> pivots;
  std::vector<int> pivot_of(variables_, -1);
  std::vector<std::set<int>> occurs(variables_);  // pivot rows holding var as a non-pivot term

  for (std::size_t idx : order) {
    const Row& row = rows_[idx];
    std::map<int, mpq_class> acc;
    mpq_class rhs = row.rhs;
    for (const auto& [var, coef] : row.terms) {
      int p = pivot_of[var];
      if (p < 0) {
        acc[var] += coef;
        continue;
      }
      rhs -= coef * pivots[p].rhs;
      for (const auto& [u, b] : pivots[p].terms)
        if (u != var) acc[u] -= coef * b;
    }
    Terms reduced;
    for (auto& [var, coef] : acc)
      if (sgn(coef) != 0) reduced.emplace_back(var, coef);
    if (reduced.empty()) {
      if (sgn(rhs) != 0) return sol;  // inconsistent
      continue;
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < reduced.size(); ++i) {
      auto key = [&](std::size_t t) {
        return std::tuple(occurs[reduced[t].first].size(), bit_size(reduced[t].second), reduced[t].first);
      };
      if (key(i) < key(best)) best = i;
    }
    int q = reduced[best].first;
    mpq_class lead = reduced[best].second;
    for (auto& t : reduced) t.second /= lead;
    rhs /= lead;

    int new_index = static_cast<int>(pivots.size());
    std::vector<int> holders(occurs[q].begin(), occurs[q].end());
    for (int r : holders) {
      Pivot& other = pivots[r];
      auto it = std::find_if(other.terms.begin(), other.terms.end(), [&](const Term& t) { return t.first == q; });
      mpq_class f = it->second;
      other.terms = axpy(other.terms, f, reduced);
      other.rhs -= f * rhs;
      for (const auto& [u, _] : reduced) {
        if (u == q) continue;
        bool present = std::binary_search(other.terms.begin(), other.terms.end(), Term(u, 0),
                                          [](const Term& a, const Term& b) { return a.first < b.first; });
        if (present) {
          occurs[u].insert(r);
        } else {
          occurs[u].erase(r);
        }
      }
    }
    occurs[q].clear();
    for (const auto& [u, _] : reduced)
      if (u != q) occurs[u].insert(new_index);
    pivot_of[q] = new_index;
    pivots.push_back({q, std::move(reduced), std::move(rhs)});
  }

  sol.consistent = true;
  sol.rank = static_cast<int>(pivots.size());
  sol.values.assign(variables_, 0);
  for (const auto& p : pivots) sol.values[p.var] = p.rhs;
  return sol;
}

bool SparseRationalSystem::satisfied_by(const std::vector<mpq_class>& x) const {
  if (static_cast<int>(x.size()) != variables_) return false;
  for (const auto& row : rows_) {
    mpq_class s = 0;
    for (const auto& [var, coef] : row.terms) s += coef * x[var];
    if (s != row.rhs) return false;
  }
  return true;
}

}  // namespace wlspec
