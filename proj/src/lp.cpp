#include "typesched/lp.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace typesched {

std::size_t LinearProgram::add_variable(std::string name) {
  if (name.empty()) name = "x" + std::to_string(names_.size());
  names_.push_back(std::move(name));
  return names_.size() - 1;
}

std::size_t LinearProgram::add_constraint(std::vector<LinearTerm> terms, Relation relation,
                                          Rational rhs, std::string name) {
  if (name.empty()) name = "r" + std::to_string(constraints_.size());
  constraints_.push_back({std::move(terms), relation, std::move(rhs), std::move(name)});
  return constraints_.size() - 1;
}

void LinearProgram::set_objective(Sense sense, std::vector<LinearTerm> terms) {
  sense_ = sense;
  objective_ = std::move(terms);
}

void LinearProgram::validate() const {
  auto check = [&](const std::vector<LinearTerm>& terms, const std::string& where) {
    for (const auto& t : terms)
      if (t.var >= names_.size())
        throw std::invalid_argument(where + " references undeclared variable " +
                                    std::to_string(t.var));
  };
  for (const auto& c : constraints_) check(c.terms, "constraint " + c.name);
  check(objective_, "objective");
}

bool LinearProgram::is_feasible(const std::vector<Rational>& x) const {
  if (x.size() != names_.size()) return false;
  for (const auto& v : x)
    if (v < 0) return false;
  for (const auto& c : constraints_) {
    Rational lhs(0);
    for (const auto& t : c.terms) lhs += t.coef * x[t.var];
    switch (c.relation) {
      case Relation::LessEqual:
        if (lhs > c.rhs) return false;
        break;
      case Relation::Equal:
        if (lhs != c.rhs) return false;
        break;
      case Relation::GreaterEqual:
        if (lhs < c.rhs) return false;
        break;
    }
  }
  return true;
}

Rational LinearProgram::objective_value(const std::vector<Rational>& x) const {
  Rational z(0);
  for (const auto& t : objective_) z += t.coef * x[t.var];
  return z;
}

std::string LinearProgram::to_lp_format() const {
  std::ostringstream out;
  auto write_terms = [&](const std::vector<LinearTerm>& terms) {
    if (terms.empty()) {
      out << " 0 " << (names_.empty() ? std::string("x0") : names_[0]);
      return;
    }
    for (const auto& t : terms) {
      out << (t.coef < 0 ? " - " : " + ") << to_string(abs(t.coef)) << ' ' << names_[t.var];
    }
  };
  out << (sense_ == Sense::Minimize ? "Minimize\n obj:" : "Minimize\n obj: 0 x0");
  if (sense_ == Sense::Minimize) write_terms(objective_);
  out << "\nSubject To\n";
  for (const auto& c : constraints_) {
    out << ' ' << c.name << ':';
    write_terms(c.terms);
    switch (c.relation) {
      case Relation::LessEqual: out << " <= "; break;
      case Relation::Equal: out << " = "; break;
      case Relation::GreaterEqual: out << " >= "; break;
    }
    out << to_string(c.rhs) << '\n';
  }
  out << "End\n";
  return out.str();
}

std::size_t ExtremePointSolution::positive_count() const {
  return static_cast<std::size_t>(
      std::count_if(value.begin(), value.end(), [](const Rational& v) { return sgn(v) > 0; }));
}

std::size_t ExtremePointSolution::fractional_count() const {
  return static_cast<std::size_t>(std::count_if(value.begin(), value.end(), [](const Rational& v) {
    return sgn(v) != 0 && v != 1;
  }));
}

std::string to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal: return "Optimal";
    case LpStatus::Infeasible: return "Infeasible";
    case LpStatus::Unbounded: return "Unbounded";
  }
  return "Unknown";
}

// Dense tableau in canonical form with respect to the current basis.
struct VertexOracle::Tableau {
  std::size_t structural = 0;
  std::vector<BasisEntry> column_kind;
  std::vector<bool> allowed;
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  std::vector<std::size_t> basis;
  std::vector<Rational> reduced;
  Rational objective;
  bool feasible = false;
  std::size_t pivots = 0;

  std::size_t num_columns() const { return column_kind.size(); }

  void pivot(std::size_t r, std::size_t col) {
    ++pivots;
    auto& prow = rows[r];
    const Rational p = prow[col];
    std::vector<std::size_t> nz;
    for (std::size_t k = 0; k < prow.size(); ++k) {
      if (sgn(prow[k]) != 0) {
        prow[k] /= p;
        nz.push_back(k);
      }
    }
    rhs[r] /= p;
    Rational tmp;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r) continue;
      auto& row = rows[i];
      if (sgn(row[col]) == 0) continue;
      const Rational f = row[col];
      for (std::size_t k : nz) {
        tmp = f * prow[k];
        row[k] -= tmp;
      }
      tmp = f * rhs[r];
      rhs[i] -= tmp;
    }
    if (sgn(reduced[col]) != 0) {
      const Rational f = reduced[col];
      objective += f * rhs[r];
      for (std::size_t k : nz) {
        tmp = f * prow[k];
        reduced[k] -= tmp;
      }
    }
    basis[r] = col;
  }

  void price(const std::vector<Rational>& cost) {
    reduced = cost;
    objective = 0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const Rational& cb = cost[basis[r]];
      if (sgn(cb) == 0) continue;
      objective += cb * rhs[r];
      for (std::size_t k = 0; k < rows[r].size(); ++k)
        if (sgn(rows[r][k]) != 0) reduced[k] -= cb * rows[r][k];
    }
  }

  // Bland's rule; returns false when unbounded.
  bool optimize() {
    for (;;) {
      std::size_t enter = num_columns();
      for (std::size_t k = 0; k < num_columns(); ++k) {
        if (allowed[k] && sgn(reduced[k]) < 0) {
          enter = k;
          break;
        }
      }
      if (enter == num_columns()) return true;
      std::size_t leave = rows.size();
      Rational best_ratio;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (sgn(rows[r][enter]) <= 0) continue;
        Rational ratio = rhs[r] / rows[r][enter];
        if (leave == rows.size() || ratio < best_ratio ||
            (ratio == best_ratio && basis[r] < basis[leave])) {
          leave = r;
          best_ratio = std::move(ratio);
        }
      }
      if (leave == rows.size()) return false;
      pivot(leave, enter);
    }
  }

  ExtremePointSolution extract() const {
    ExtremePointSolution sol;
    sol.value.assign(structural, Rational(0));
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const auto col = basis[r];
      sol.basis.push_back(column_kind[col]);
      if (column_kind[col].kind == BasisEntry::Kind::Structural) sol.value[col] = rhs[r];
    }
    sol.objective_value = objective;
    return sol;
  }
};

VertexOracle::VertexOracle(const LinearProgram& lp) : tableau_(std::make_unique<Tableau>()) {
  lp.validate();
  auto& t = *tableau_;
  const std::size_t n = lp.num_variables();
  const std::size_t m = lp.num_constraints();
  t.structural = n;
  for (std::size_t j = 0; j < n; ++j) t.column_kind.push_back({BasisEntry::Kind::Structural, j});

  // Normalize to non-negative right-hand sides.
  std::vector<Relation> rel(m);
  std::vector<int> flip(m, 1);
  for (std::size_t r = 0; r < m; ++r) {
    const auto& c = lp.constraint(r);
    rel[r] = c.relation;
    if (sgn(c.rhs) < 0) {
      flip[r] = -1;
      if (rel[r] == Relation::LessEqual) rel[r] = Relation::GreaterEqual;
      else if (rel[r] == Relation::GreaterEqual) rel[r] = Relation::LessEqual;
    }
  }
  std::vector<std::size_t> slack_col(m, SIZE_MAX), art_col(m, SIZE_MAX);
  for (std::size_t r = 0; r < m; ++r) {
    if (rel[r] != Relation::Equal) {
      slack_col[r] = t.column_kind.size();
      t.column_kind.push_back({BasisEntry::Kind::Slack, r});
    }
  }
  for (std::size_t r = 0; r < m; ++r) {
    if (rel[r] != Relation::LessEqual) {
      art_col[r] = t.column_kind.size();
      t.column_kind.push_back({BasisEntry::Kind::Artificial, r});
    }
  }
  const std::size_t cols = t.column_kind.size();
  t.allowed.assign(cols, true);
  t.rows.assign(m, std::vector<Rational>(cols, Rational(0)));
  t.rhs.resize(m);
  t.basis.resize(m);
  for (std::size_t r = 0; r < m; ++r) {
    const auto& c = lp.constraint(r);
    for (const auto& term : c.terms) t.rows[r][term.var] += term.coef * flip[r];
    t.rhs[r] = c.rhs * flip[r];
    if (slack_col[r] != SIZE_MAX)
      t.rows[r][slack_col[r]] = rel[r] == Relation::LessEqual ? 1 : -1;
    if (art_col[r] != SIZE_MAX) {
      t.rows[r][art_col[r]] = 1;
      t.basis[r] = art_col[r];
    } else {
      t.basis[r] = slack_col[r];
    }
  }

  // Phase 1: minimize the sum of artificials.
  std::vector<Rational> phase1(cols, Rational(0));
  bool any_artificial = false;
  for (std::size_t k = 0; k < cols; ++k)
    if (t.column_kind[k].kind == BasisEntry::Kind::Artificial) {
      phase1[k] = 1;
      any_artificial = true;
    }
  if (any_artificial) {
    t.price(phase1);
    t.optimize();
    if (sgn(t.objective) > 0) {
      t.feasible = false;
      return;
    }
    // Drive zero-level artificials out of the basis; drop redundant rows.
    for (std::size_t r = 0; r < t.rows.size();) {
      if (t.column_kind[t.basis[r]].kind != BasisEntry::Kind::Artificial) {
        ++r;
        continue;
      }
      std::size_t col = cols;
      for (std::size_t k = 0; k < cols; ++k) {
        if (t.column_kind[k].kind != BasisEntry::Kind::Artificial && sgn(t.rows[r][k]) != 0) {
          col = k;
          break;
        }
      }
      if (col != cols) {
        t.pivot(r, col);
        ++r;
      } else {
        t.rows.erase(t.rows.begin() + static_cast<std::ptrdiff_t>(r));
        t.rhs.erase(t.rhs.begin() + static_cast<std::ptrdiff_t>(r));
        t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(r));
      }
    }
    for (std::size_t k = 0; k < cols; ++k)
      if (t.column_kind[k].kind == BasisEntry::Kind::Artificial) t.allowed[k] = false;
  }
  t.feasible = true;
  t.reduced.assign(cols, Rational(0));
  t.objective = 0;
}

VertexOracle::~VertexOracle() = default;
VertexOracle::VertexOracle(VertexOracle&&) noexcept = default;
VertexOracle& VertexOracle::operator=(VertexOracle&&) noexcept = default;

bool VertexOracle::feasible() const { return tableau_->feasible; }

ExtremePointSolution VertexOracle::current() const {
  auto sol = tableau_->extract();
  sol.objective_value = 0;
  return sol;
}

LpResult VertexOracle::minimize(const std::vector<Rational>& objective) {
  auto& t = *tableau_;
  LpResult result;
  if (!t.feasible) {
    result.status = LpStatus::Infeasible;
    return result;
  }
  if (objective.size() != t.structural)
    throw std::invalid_argument("objective size does not match the variable count");
  std::vector<Rational> cost(t.num_columns(), Rational(0));
  std::copy(objective.begin(), objective.end(), cost.begin());
  const auto before = t.pivots;
  t.price(cost);
  const bool bounded = t.optimize();
  result.pivots = t.pivots - before;
  if (!bounded) {
    result.status = LpStatus::Unbounded;
    return result;
  }
  result.status = LpStatus::Optimal;
  result.solution = t.extract();
  return result;
}

LpResult solve_extreme_point(const LinearProgram& lp) {
  VertexOracle oracle(lp);
  LpResult result;
  if (!oracle.feasible()) {
    result.status = LpStatus::Infeasible;
    return result;
  }
  if (lp.sense() == Sense::Feasibility) {
    result.status = LpStatus::Optimal;
    result.solution = oracle.current();
    return result;
  }
  std::vector<Rational> cost(lp.num_variables(), Rational(0));
  for (const auto& term : lp.objective()) cost[term.var] += term.coef;
  return oracle.minimize(cost);
}

}  // namespace typesched
