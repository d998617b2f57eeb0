#pragma once

#include "typesched/audit.hpp"
#include "typesched/patterns.hpp"
#include "typesched/rounding.hpp"

#include <optional>
#include <string>

namespace typesched {

struct SlotSystem {
  std::vector<std::size_t> slot_machine;      // flat machine of each slot
  std::vector<std::size_t> slot_class;        // local class on that machine's type
  std::vector<std::vector<Rational>> rem;     // [machine][dim]
};

struct SlotLp {
  RoundingProblem problem;
  SlotSystem system;
  LinearProgram lp;
};

// Assignment rows per job, one row per slot and D capacity rows per machine
// with right-hand side rem. Small jobs enter the capacity rows with their
// unrounded scaled cost.
SlotLp build_slot_lp(const ScaledInstance& scaled, const MakespanCatalog& catalog, const PatternProfile& profile);

struct DecisionMode {
  enum class Kind { Full, Guided };
  Kind kind = Kind::Guided;
  std::size_t budget = 1000000;          // profiles per decision, full mode
  std::optional<Schedule> certificate;   // guided mode
};

enum class DecisionStatus { Accepted, Infeasible, BudgetExhausted };
std::string to_string(DecisionStatus status);

struct DecisionResult {
  DecisionStatus status = DecisionStatus::Infeasible;
  std::optional<Schedule> schedule;
  Rational makespan;
  std::size_t profiles_tried = 0;
  std::size_t rounding_iterations = 0;
  std::string forest_dot;
};

DecisionResult makespan_decision(const Instance& inst, const Rational& target, const Rational& eps,
                                 const DecisionMode& mode, AuditLog* log = nullptr);

// max_j min_l max_d c and sum_j min_l max_d c
Rational makespan_lower_bound(const Instance& inst);
Rational makespan_upper_bound(const Instance& inst);

struct MakespanResult {
  Schedule schedule;
  Rational makespan;
  Rational eps_int;
  Rational accepted_target;
  std::size_t decisions = 0;
  std::size_t profiles_tried = 0;
  std::size_t rounding_iterations = 0;
  std::string forest_dot;
};

// Binary search over T = LB * (1+eps_int)^k. Throws BudgetExhausted when a
// full-mode decision runs out of profiles.
MakespanResult makespan_ptas(const Instance& inst, const Rational& eps_user, const DecisionMode& mode,
                             AuditLog* log = nullptr);

Schedule schedule_from_positions(const Instance& inst, const std::vector<Position>& positions);

}  // namespace typesched
