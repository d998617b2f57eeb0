#pragma once

#include "typesched/audit.hpp"
#include "typesched/forest.hpp"
#include "typesched/lp.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace typesched {

// Where a (possibly artificial) job ends up: in the remaining capacity of a
// machine, in a slot, or alone on a huge machine of some group.
struct Position {
  enum class Kind { Machine, Slot, Huge };
  Kind kind = Kind::Machine;
  std::size_t index = 0;    // machine, slot or group
  std::size_t machine = 0;  // flat machine the job runs on
  auto operator<=>(const Position&) const = default;
};

struct JobOptions {
  std::map<std::size_t, std::vector<Rational>> machines;  // machine -> cost per dimension
  std::map<std::size_t, Rational> slots;                  // slot -> cost used to pick leaves
  std::map<std::size_t, Rational> huge;                   // group -> objective coefficient
};

// One column of the assignment LP.
struct LpVariable {
  std::size_t job;
  Position::Kind kind;
  std::size_t index;  // machine, slot or group
};

struct HugeGroup {
  std::vector<std::size_t> machines;  // free huge machines; the budget is their count
};

// The assignment LP shared by both schemes: job rows (= 1), slot rows
// (<= 1), capacity rows (<= capacity) and one budget row per huge group.
struct RoundingProblem {
  std::size_t dims = 1;
  std::vector<std::vector<Rational>> capacity;  // [machine][dim]
  std::vector<Rational> small_bound;            // [machine]: max cost of a job in its capacity
  std::vector<std::size_t> slot_machine;        // [slot]
  std::vector<HugeGroup> groups;
  std::vector<JobOptions> jobs;
  bool minimize_huge_cost = false;
  // Nonzero: feasibility LPs minimize a pseudo-random positive objective
  // instead, which steers the solver to other vertices. Tests use it to
  // reach fractional extreme points.
  std::uint64_t vertex_seed = 0;
  // Order in which the reductions are tried: 'a' drop a machine's capacity
  // rows, 'b' release or merge a slot, 'c' close a huge group. Any order is
  // valid; ties go to the lowest index.
  std::array<char, 3> reduction_order{'a', 'b', 'c'};

  std::size_t num_machines() const { return capacity.size(); }
  LinearProgram to_lp() const;
  // columns of to_lp(), in order
  std::vector<LpVariable> lp_variables() const;
};

class CountingViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ForestInconsistent : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct RoundingStep {
  std::size_t rows = 0;
  std::size_t fractional = 0;
  std::size_t fractional_bound = 0;  // 2s' + 2Dm' + 2h'
  char reduction = '-';              // 'a', 'b', 'c' or '-' when finished
  std::size_t target = kNone;
  Rational objective;                // LP optimum plus fixed huge cost
};

struct RoundingOutcome {
  bool feasible = false;
  SubsumptionForest forest;
  std::vector<JobOptions> node_options;         // creation-time options of every forest node
  std::vector<std::optional<Position>> position;  // final position of every root
  std::vector<RoundingStep> steps;
  LinearProgram first_lp;
  std::optional<ExtremePointSolution> first_solution;
  // loads on each machine's capacity from the integral x-bar
  std::vector<std::vector<Rational>> capacity_load;
};

RoundingOutcome iterative_round(const RoundingProblem& problem, AuditLog* log);

// Turns the integral assignment of roots into one of original jobs only.
// Returns the position of every original job.
std::vector<Position> untangle(const RoundingProblem& problem, const RoundingOutcome& outcome, AuditLog* log);

// position -> job placement of one merge tree: the child holding `target`
// follows the parent, the other child goes to the slot the merge disposed.
void place_tree(const RoundingProblem& problem, const SubsumptionForest& forest, std::size_t node,
                const Position& where, std::size_t target, std::vector<std::optional<Position>>& out,
                AuditLog* log);

}  // namespace typesched
