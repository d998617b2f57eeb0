#pragma once

#include "typesched/rational.hpp"

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace typesched {

enum class Relation { LessEqual, Equal, GreaterEqual };
enum class Sense { Minimize, Feasibility };

struct LinearTerm {
  std::size_t var;
  Rational coef;
};

struct Constraint {
  std::vector<LinearTerm> terms;
  Relation relation = Relation::LessEqual;
  Rational rhs;
  std::string name;
};

// Variables are implicitly bounded below by zero.
class LinearProgram {
 public:
  std::size_t add_variable(std::string name = {});
  std::size_t add_constraint(std::vector<LinearTerm> terms, Relation relation, Rational rhs,
                             std::string name = {});
  void set_objective(Sense sense, std::vector<LinearTerm> terms = {});

  std::size_t num_variables() const { return names_.size(); }
  std::size_t num_constraints() const { return constraints_.size(); }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const Constraint& constraint(std::size_t row) const { return constraints_[row]; }
  const std::string& variable_name(std::size_t var) const { return names_[var]; }
  Sense sense() const { return sense_; }
  const std::vector<LinearTerm>& objective() const { return objective_; }

  // Throws std::invalid_argument when a term references an undeclared variable.
  void validate() const;

  // Exact feasibility check of a point against every row and x >= 0.
  bool is_feasible(const std::vector<Rational>& x) const;
  Rational objective_value(const std::vector<Rational>& x) const;

  // CPLEX-style LP text for cross-checking with external solvers.
  std::string to_lp_format() const;

 private:
  std::vector<std::string> names_;
  std::vector<Constraint> constraints_;
  Sense sense_ = Sense::Feasibility;
  std::vector<LinearTerm> objective_;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct BasisEntry {
  enum class Kind { Structural, Slack, Artificial } kind;
  std::size_t index;  // variable index, or constraint row for slack/artificial
};

struct ExtremePointSolution {
  std::vector<Rational> value;
  std::vector<BasisEntry> basis;
  Rational objective_value;

  std::size_t positive_count() const;
  // value not in {0, 1}
  std::size_t fractional_count() const;
};

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  ExtremePointSolution solution;
  std::size_t pivots = 0;
};

// Two-phase simplex in exact arithmetic with Bland's rule. The returned point
// is always a basic feasible solution.
LpResult solve_extreme_point(const LinearProgram& lp);

// Repeatedly minimizes different linear objectives over one fixed polytope,
// warm-starting each solve from the previous optimal basis.
class VertexOracle {
 public:
  explicit VertexOracle(const LinearProgram& constraints);
  ~VertexOracle();
  VertexOracle(VertexOracle&&) noexcept;
  VertexOracle& operator=(VertexOracle&&) noexcept;

  bool feasible() const;
  // Vertex of the polytope, available when feasible().
  ExtremePointSolution current() const;
  // dense objective over the structural variables
  LpResult minimize(const std::vector<Rational>& objective);

 private:
  struct Tableau;
  std::unique_ptr<Tableau> tableau_;
};

std::string to_string(LpStatus status);

}  // namespace typesched
