#pragma once

// Brute-force LP oracle for tests: enumerates every basis of the standard
// form and keeps the feasible ones. Independent of the simplex code.

#include "typesched/lp.hpp"

#include <optional>
#include <vector>

namespace typesched::testing {

struct VertexEnumeration {
  std::vector<std::vector<Rational>> vertices;  // structural parts only
  std::optional<Rational> best_objective;       // min over vertices, if any
};

inline VertexEnumeration enumerate_vertices(const LinearProgram& lp) {
  const std::size_t n = lp.num_variables();
  const std::size_t m = lp.num_constraints();
  std::size_t slacks = 0;
  for (const auto& c : lp.constraints())
    if (c.relation != Relation::Equal) ++slacks;
  const std::size_t cols = n + slacks;
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(cols + 1, Rational(0)));
  std::size_t s = n;
  for (std::size_t r = 0; r < m; ++r) {
    const auto& c = lp.constraint(r);
    for (const auto& t : c.terms) a[r][t.var] += t.coef;
    if (c.relation == Relation::LessEqual) a[r][s++] = 1;
    if (c.relation == Relation::GreaterEqual) a[r][s++] = -1;
    a[r][cols] = c.rhs;
  }
  // Row-reduce [A|b] to drop dependent rows and detect inconsistency.
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < m; ++col) {
    std::size_t piv = rank;
    while (piv < m && sgn(a[piv][col]) == 0) ++piv;
    if (piv == m) continue;
    std::swap(a[piv], a[rank]);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == rank || sgn(a[r][col]) == 0) continue;
      Rational f = a[r][col] / a[rank][col];
      for (std::size_t k = 0; k <= cols; ++k) a[r][k] -= f * a[rank][k];
    }
    ++rank;
  }
  VertexEnumeration out;
  for (std::size_t r = rank; r < m; ++r)
    if (sgn(a[r][cols]) != 0) return out;  // inconsistent equalities
  a.resize(rank);

  std::vector<Rational> cost(cols, Rational(0));
  for (const auto& t : lp.objective()) cost[t.var] += t.coef;

  std::vector<std::size_t> pick(rank);
  auto solve_basis = [&]() -> std::optional<std::vector<Rational>> {
    std::vector<std::vector<Rational>> sys(rank, std::vector<Rational>(rank + 1));
    for (std::size_t r = 0; r < rank; ++r) {
      for (std::size_t k = 0; k < rank; ++k) sys[r][k] = a[r][pick[k]];
      sys[r][rank] = a[r][cols];
    }
    for (std::size_t col = 0; col < rank; ++col) {
      std::size_t piv = col;
      while (piv < rank && sgn(sys[piv][col]) == 0) ++piv;
      if (piv == rank) return std::nullopt;
      std::swap(sys[piv], sys[col]);
      for (std::size_t r = 0; r < rank; ++r) {
        if (r == col || sgn(sys[r][col]) == 0) continue;
        Rational f = sys[r][col] / sys[col][col];
        for (std::size_t k = col; k <= rank; ++k) sys[r][k] -= f * sys[col][k];
      }
    }
    std::vector<Rational> full(cols, Rational(0));
    for (std::size_t k = 0; k < rank; ++k) {
      full[pick[k]] = sys[k][rank] / sys[k][k];
      if (sgn(full[pick[k]]) < 0) return std::nullopt;
    }
    return full;
  };
  auto record = [&](const std::vector<Rational>& full) {
    std::vector<Rational> structural(full.begin(), full.begin() + static_cast<std::ptrdiff_t>(n));
    Rational z(0);
    for (std::size_t k = 0; k < cols; ++k) z += cost[k] * full[k];
    if (!out.best_objective || z < *out.best_objective) out.best_objective = z;
    out.vertices.push_back(std::move(structural));
  };
  if (rank == 0) {
    record(std::vector<Rational>(cols, Rational(0)));
    return out;
  }
  // iterate over all rank-subsets of the columns
  for (std::size_t k = 0; k < rank; ++k) pick[k] = k;
  for (;;) {
    if (auto sol = solve_basis()) record(*sol);
    std::size_t i = rank;
    while (i > 0 && pick[i - 1] == cols - rank + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t k = i; k < rank; ++k) pick[k] = pick[k - 1] + 1;
  }
  return out;
}

}  // namespace typesched::testing
