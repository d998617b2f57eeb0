#pragma once

#include "typesched/model.hpp"

#include <optional>
#include <stdexcept>

namespace typesched {

struct Objective {
  enum class Kind { Makespan, LpNorm };
  Kind kind = Kind::Makespan;
  Rational p{2};

  static Objective makespan() { return {}; }
  static Objective lp_norm(Rational p) { return {Kind::LpNorm, std::move(p)}; }
};

struct OracleOptions {
  std::size_t max_jobs = 8;
  std::size_t max_machines = 5;
  // Branch and bound; off gives a plain enumeration of canonical assignments.
  bool prune = true;
};

struct OracleResult {
  // Makespan, or the sum of load^p. Exact except for non-integer p, where
  // only `value` is meaningful.
  std::optional<Rational> optimum;
  double value = 0.0;
  Schedule witness;
  std::size_t explored = 0;  // complete canonical assignments reached
};

class TooLarge : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Exhaustive search. Within a type a job may only open the first empty
// machine, so machines of one type receive their job sets in order of the
// smallest job index and each assignment is visited once up to symmetry.
OracleResult exact_solve(const Instance& inst, const Objective& objective, const OracleOptions& options = {});

}  // namespace typesched
