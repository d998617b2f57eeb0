#pragma once

#include "typesched/lp.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace typesched {

struct ConvexObjective {
  std::function<double(std::span<const double>)> value;
  // writes the gradient into the second argument
  std::function<void(std::span<const double>, std::span<double>)> gradient;
};

struct ConvexOptions {
  double additive_tol = 1e-6;
  std::size_t max_iterations = 20000;
};

enum class ConvexStatus { Converged, ToleranceNotReached, InfeasibleRegion };

struct ConvexSolveResult {
  ConvexStatus status = ConvexStatus::InfeasibleRegion;
  // Exact convex combination of polytope vertices, hence exactly feasible.
  std::vector<Rational> x;
  std::vector<double> x_approx;
  double objective_value = 0.0;
  // Frank-Wolfe gap at x; bounds objective_value - optimum from above.
  double duality_gap = 0.0;
  std::size_t iterations = 0;
  std::vector<double> objective_history;
};

// Minimizes a convex differentiable function over the polytope described by
// the constraints of `region` (its objective is ignored). Pairwise
// Frank-Wolfe with exact line search; every linear minimization is solved by
// the exact simplex, so the iterate stays inside the polytope.
ConvexSolveResult solve_convex_over_polytope(const LinearProgram& region,
                                             const ConvexObjective& objective,
                                             const ConvexOptions& options);

std::string to_string(ConvexStatus status);

}  // namespace typesched
