#pragma once

#include "typesched/audit.hpp"
#include "typesched/convex.hpp"
#include "typesched/patterns.hpp"
#include "typesched/rounding.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace typesched {

// Smallest f with 1 + 2^p / f <= (1+eps)^p. Any multiset G of at least f
// positive reals then has sum g^p + (2 min G)^p <= (1+eps)^p sum g^p.
long f_threshold(const Rational& p, const Rational& eps);

// Largest eps_user / 2^k with (1+3eps)(1+eps)^2 <= 1 + eps_user.
Rational calibrate_lp_eps(const Rational& eps_user);

// Structural guess for one machine type. Huge machines run a single job
// longer than c_max; the very huge ones run the listed jobs, the others
// form the pool that the LP fills with jobs no longer than the shortest
// very huge job.
struct TypeGuess {
  std::size_t huge = 0;
  std::vector<std::size_t> very_huge;  // jobs, longest first
  std::optional<Rational> c_max;       // none: the remaining machines stay empty
  long alpha = 1;                      // non-huge loads lie in [alpha c_max, (alpha+2) c_max]
};

struct Guess {
  std::vector<TypeGuess> types;
  PatternProfile profile;  // large jobs on the non-huge machines
};

class GuessInconsistent : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Size classes of the large jobs of one type under a guess. A job is large
// when eps*alpha*c_max < c <= c_max; its size is rounded down to
// eps*alpha*c_max*(1+eps)^k.
struct LargeClasses {
  Rational threshold;                              // eps * alpha * c_max
  std::vector<long> exponents;                     // k of each local class
  std::vector<std::optional<std::size_t>> of_job;  // [job] -> local class
  PatternSpace space;
};

std::vector<LargeClasses> large_classes(const Instance& inst, const Rational& eps,
                                        const std::vector<TypeGuess>& types);

// Empty when every non-huge machine of the schedule carries at least c_max
// and same-type non-huge loads differ by at most c_max; else a description.
// Huge machines are single-job machines whose job is longer than every job
// sharing a machine with another job on that type.
std::string load_structure_violation(const Instance& inst, const Schedule& s);

// Reads the guess off a schedule. Throws GuessInconsistent when the
// schedule lacks the load structure above or its profile overflows.
Guess guess_from_schedule(const Instance& inst, const Rational& p, const Rational& eps, const Schedule& s);

// Lazy walk over guesses: per type the number of huge machines, the very
// huge jobs, c_max and alpha, then the large-job profiles of each skeleton.
class GuessStream {
 public:
  GuessStream(const Instance& inst, const Rational& p, const Rational& eps, std::size_t budget);
  std::optional<Guess> next();
  // The remaining profiles of the current skeleton are not yielded.
  void skip_skeleton() { profiles_.reset(); }
  bool budget_exhausted() const { return budget_hit_; }
  std::size_t yielded() const { return yielded_; }
  std::size_t skeletons() const { return skeletons_; }
  // Called on every skeleton; returning true skips it.
  std::function<bool(const std::vector<TypeGuess>&)> prune;

 private:
  bool advance_skeleton();
  const Instance* inst_;
  Rational p_, eps_;
  std::size_t budget_;
  std::vector<std::vector<TypeGuess>> options_;  // [type]
  std::vector<std::size_t> choice_;
  bool started_ = false, done_ = false, budget_hit_ = false;
  std::vector<TypeGuess> current_;
  std::optional<ProfileEnumerator> profiles_;
  std::size_t yielded_ = 0, skeletons_ = 0;
};

GuessStream enumerate_guesses(const Instance& inst, const Rational& p, const Rational& eps, std::size_t budget);

// Machines of type l in flat order: the non-huge ones first, then the very
// huge ones, then the pool.
struct GuessLayout {
  std::vector<std::size_t> type_of;       // [flat]
  std::vector<bool> non_huge;             // [flat]
  std::vector<std::size_t> first;         // [type] first flat machine
  std::vector<std::size_t> non_huge_count;
};

struct CpModel {
  RoundingProblem problem;                   // capacity rows left at zero
  std::vector<std::size_t> job_of;           // problem job -> instance job
  std::vector<std::optional<std::size_t>> very_huge_machine;  // [instance job]
  GuessLayout layout;
  std::vector<Rational> large_load;          // [flat] B_i, rounded
  std::vector<Rational> lower;               // [flat] lower bound on t_i
  std::vector<Rational> upper;               // [flat] upper bound on t_i
  std::vector<Rational> threshold;           // [flat] small-job bound
  std::vector<std::size_t> group_type;       // [group]
  Rational very_huge_cost;                   // sum of c^p over pinned jobs
  Rational p;
  Rational eps;
};

// Throws GuessInconsistent when the guess does not match the instance.
CpModel build_cp_model(const Instance& inst, const Rational& p, const Rational& eps, const Guess& guess);

struct CpSolution {
  ConvexSolveResult solve;
  std::vector<Rational> x;        // over problem.lp_variables()
  std::vector<Rational> t_star;   // [flat], zero on huge machines
  double objective = 0.0;         // at (x, t*), constants included
  Rational huge_term;             // sum of c^p x over pool variables
  double additive_tol = 0.0;
};

// Frank-Wolfe on the convex program. Empty when the region is empty.
std::optional<CpSolution> solve_slot_cp(const CpModel& model, std::optional<double> tol_override = {},
                                        double incumbent = 0.0);

// The linear program with the t* frozen: same columns as the convex
// program's x, capacity rows with right-hand side t*, pool cost objective.
RoundingProblem build_lp_from_cp(const CpModel& model, const CpSolution& cp);

struct GuessEvaluation {
  Schedule schedule;
  double cost = 0.0;              // sum of load^p
  std::optional<Rational> exact;  // same, when p is an integer
  double cp_objective = 0.0;
  double additive_tol = 0.0;
  std::size_t rounding_iterations = 0;
  std::vector<Rational> lp_optima;  // per rounding step
  std::string forest_dot;
};

// Runs the convex program, the rounding and the untangling for one guess at
// internal precision eps. Empty when the guess admits no fractional solution.
std::optional<GuessEvaluation> evaluate_guess(const Instance& inst, const Rational& p, const Rational& eps,
                                              const Guess& guess, AuditLog* log = nullptr,
                                              std::optional<double> tol_override = {}, double incumbent = 0.0);

struct LpNormMode {
  enum class Kind { Full, Guided };
  Kind kind = Kind::Guided;
  std::size_t budget = 1000000;  // guesses, full mode
  std::optional<Schedule> certificate;
  std::optional<double> cp_tol_override;
};

struct LpNormResult {
  Schedule schedule;
  double cost = 0.0;  // sum of load^p
  std::optional<Rational> exact;
  Rational eps_int;
  std::size_t guesses_tried = 0;
  std::size_t skeletons = 0;
  std::size_t rounding_iterations = 0;
  double cp_objective = 0.0;  // of the guess that produced the schedule
  double additive_tol = 0.0;
  bool fell_back = false;  // guided mode had to enumerate
  std::string forest_dot;
};

// Guided mode reads the guess off the certificate and falls back to the
// full enumeration when that guess fails. Throws BudgetExhausted.
LpNormResult lpnorm_ptas(const Instance& inst, const Rational& p, const Rational& eps_user, const LpNormMode& mode,
                         AuditLog* log = nullptr);

}  // namespace typesched
