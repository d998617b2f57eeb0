#pragma once

#include "typesched/rational.hpp"

#include <compare>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace typesched {

struct MachineType {
  std::size_t machine_count = 0;
};

struct Job {
  // costs[type][dim]
  std::vector<std::vector<Rational>> costs;
};

// Jobs on unrelated machines that fall into K types; machines of one type
// are identical. Costs are kept exact so that scaling never rounds.
struct Instance {
  std::size_t dims = 1;
  std::vector<MachineType> types;
  std::vector<Job> jobs;

  std::size_t num_types() const { return types.size(); }
  std::size_t num_jobs() const { return jobs.size(); }
  std::size_t num_machines() const;

  const Rational& cost(std::size_t job, std::size_t type, std::size_t dim = 0) const {
    return jobs[job].costs[type][dim];
  }
  // max over dimensions of the job's cost on the type
  Rational max_cost(std::size_t job, std::size_t type) const;
};

struct MachineId {
  std::size_t type = 0;
  std::size_t index = 0;
  auto operator<=>(const MachineId&) const = default;
};

struct Schedule {
  std::vector<MachineId> assignment;  // job -> machine
};

enum class ValidationErrorKind {
  NonPositiveCost,
  MissingCostEntry,
  EmptyMachineSet,
  EmptyJobSet,
  NoDimensions,
  NoTypes,
};

struct ValidationError {
  ValidationErrorKind kind;
  std::string message;
};

// Empty result means the instance is valid.
std::vector<ValidationError> validate_instance(const Instance& inst);
std::string to_string(ValidationErrorKind kind);

class InvalidSchedule : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
class BadExponent : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Machines enumerated type by type; this order defines flat machine indices.
std::vector<MachineId> all_machines(const Instance& inst);
std::size_t flat_index(const Instance& inst, MachineId id);

void check_schedule(const Instance& inst, const Schedule& s);

// load[flat machine][dim]
using LoadVector = std::vector<std::vector<Rational>>;

LoadVector compute_loads(const Instance& inst, const Schedule& s);

// Incrementally maintained loads; used by search code that assigns and
// unassigns jobs one at a time.
class LoadTracker {
 public:
  explicit LoadTracker(const Instance& inst);
  void assign(std::size_t job, MachineId machine);
  void unassign(std::size_t job, MachineId machine);
  const LoadVector& loads() const { return loads_; }

 private:
  const Instance* inst_;
  LoadVector loads_;
};

Rational evaluate_makespan(const Instance& inst, const Schedule& s);
Rational makespan_of_loads(const LoadVector& loads);

// Sum of load^p. Exact when p is an integer, otherwise `exact` is empty and
// `value` is a double with relative tolerance 1e-9.
struct NormPower {
  std::optional<Rational> exact;
  double value = 0.0;
};

NormPower evaluate_lp_norm_pow(const Instance& inst, const Schedule& s, const Rational& p);
NormPower norm_power_of_loads(const LoadVector& loads, const Rational& p);

// load^p for a single non-negative value; exact for integer p.
NormPower power_of(const Rational& value, const Rational& p);

}  // namespace typesched
