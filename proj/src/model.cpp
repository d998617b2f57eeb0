#include "typesched/model.hpp"

#include <algorithm>
#include <cmath>

namespace typesched {

std::size_t Instance::num_machines() const {
  std::size_t total = 0;
  for (const auto& t : types) total += t.machine_count;
  return total;
}

Rational Instance::max_cost(std::size_t job, std::size_t type) const {
  const auto& row = jobs[job].costs[type];
  Rational best = row.front();
  for (const auto& c : row)
    if (c > best) best = c;
  return best;
}

std::string to_string(ValidationErrorKind kind) {
  switch (kind) {
    case ValidationErrorKind::NonPositiveCost: return "NonPositiveCost";
    case ValidationErrorKind::MissingCostEntry: return "MissingCostEntry";
    case ValidationErrorKind::EmptyMachineSet: return "EmptyMachineSet";
    case ValidationErrorKind::EmptyJobSet: return "EmptyJobSet";
    case ValidationErrorKind::NoDimensions: return "NoDimensions";
    case ValidationErrorKind::NoTypes: return "NoTypes";
  }
  return "Unknown";
}

std::vector<ValidationError> validate_instance(const Instance& inst) {
  std::vector<ValidationError> errors;
  auto add = [&](ValidationErrorKind kind, std::string msg) {
    errors.push_back({kind, std::move(msg)});
  };
  if (inst.dims == 0) add(ValidationErrorKind::NoDimensions, "D must be at least 1");
  if (inst.types.empty()) add(ValidationErrorKind::NoTypes, "at least one machine type is required");
  if (inst.num_machines() == 0) add(ValidationErrorKind::EmptyMachineSet, "no machines");
  if (inst.jobs.empty()) add(ValidationErrorKind::EmptyJobSet, "no jobs");
  for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
    const auto& costs = inst.jobs[j].costs;
    if (costs.size() != inst.types.size()) {
      add(ValidationErrorKind::MissingCostEntry,
          "job " + std::to_string(j) + " has " + std::to_string(costs.size()) +
              " type entries, expected " + std::to_string(inst.types.size()));
    }
    for (std::size_t l = 0; l < costs.size(); ++l) {
      if (costs[l].size() != inst.dims) {
        add(ValidationErrorKind::MissingCostEntry,
            "job " + std::to_string(j) + " type " + std::to_string(l) + " has " +
                std::to_string(costs[l].size()) + " dimensions, expected " +
                std::to_string(inst.dims));
      }
      for (std::size_t d = 0; d < costs[l].size(); ++d) {
        if (costs[l][d] <= 0) {
          add(ValidationErrorKind::NonPositiveCost,
              "job " + std::to_string(j) + " type " + std::to_string(l) + " dim " +
                  std::to_string(d) + " cost " + to_string(costs[l][d]));
        }
      }
    }
  }
  return errors;
}

std::vector<MachineId> all_machines(const Instance& inst) {
  std::vector<MachineId> out;
  out.reserve(inst.num_machines());
  for (std::size_t l = 0; l < inst.types.size(); ++l)
    for (std::size_t k = 0; k < inst.types[l].machine_count; ++k) out.push_back({l, k});
  return out;
}

std::size_t flat_index(const Instance& inst, MachineId id) {
  std::size_t offset = 0;
  for (std::size_t l = 0; l < id.type; ++l) offset += inst.types[l].machine_count;
  return offset + id.index;
}

void check_schedule(const Instance& inst, const Schedule& s) {
  if (s.assignment.size() != inst.jobs.size())
    throw InvalidSchedule("schedule assigns " + std::to_string(s.assignment.size()) +
                          " jobs, instance has " + std::to_string(inst.jobs.size()));
  for (std::size_t j = 0; j < s.assignment.size(); ++j) {
    const auto& m = s.assignment[j];
    if (m.type >= inst.types.size() || m.index >= inst.types[m.type].machine_count)
      throw InvalidSchedule("job " + std::to_string(j) + " assigned to a machine out of range");
  }
}

LoadVector compute_loads(const Instance& inst, const Schedule& s) {
  check_schedule(inst, s);
  LoadVector loads(inst.num_machines(), std::vector<Rational>(inst.dims, Rational(0)));
  for (std::size_t j = 0; j < s.assignment.size(); ++j) {
    const auto m = s.assignment[j];
    auto& row = loads[flat_index(inst, m)];
    for (std::size_t d = 0; d < inst.dims; ++d) row[d] += inst.cost(j, m.type, d);
  }
  return loads;
}

LoadTracker::LoadTracker(const Instance& inst)
    : inst_(&inst),
      loads_(inst.num_machines(), std::vector<Rational>(inst.dims, Rational(0))) {}

void LoadTracker::assign(std::size_t job, MachineId machine) {
  auto& row = loads_[flat_index(*inst_, machine)];
  for (std::size_t d = 0; d < inst_->dims; ++d) row[d] += inst_->cost(job, machine.type, d);
}

void LoadTracker::unassign(std::size_t job, MachineId machine) {
  auto& row = loads_[flat_index(*inst_, machine)];
  for (std::size_t d = 0; d < inst_->dims; ++d) row[d] -= inst_->cost(job, machine.type, d);
}

Rational makespan_of_loads(const LoadVector& loads) {
  Rational best(0);
  for (const auto& row : loads)
    for (const auto& v : row)
      if (v > best) best = v;
  return best;
}

Rational evaluate_makespan(const Instance& inst, const Schedule& s) {
  return makespan_of_loads(compute_loads(inst, s));
}

NormPower power_of(const Rational& value, const Rational& p) {
  NormPower out;
  if (is_integer(p) && p >= 0 && p.get_num().fits_ulong_p()) {
    out.exact = pow(value, static_cast<unsigned>(p.get_num().get_ui()));
    out.value = out.exact->get_d();
  } else {
    out.value = std::pow(value.get_d(), p.get_d());
  }
  return out;
}

NormPower norm_power_of_loads(const LoadVector& loads, const Rational& p) {
  if (p <= 1) throw BadExponent("p must exceed 1, got " + to_string(p));
  NormPower total;
  bool exact = is_integer(p);
  Rational sum(0);
  double approx = 0.0;
  for (const auto& row : loads) {
    if (row.size() != 1) throw DimensionMismatch("L_p objective requires D = 1");
    auto term = power_of(row[0], p);
    if (exact) sum += *term.exact;
    approx += term.value;
  }
  if (exact) {
    total.exact = sum;
    total.value = sum.get_d();
  } else {
    total.value = approx;
  }
  return total;
}

NormPower evaluate_lp_norm_pow(const Instance& inst, const Schedule& s, const Rational& p) {
  if (inst.dims != 1) throw DimensionMismatch("L_p objective requires D = 1");
  if (p <= 1) throw BadExponent("p must exceed 1, got " + to_string(p));
  return norm_power_of_loads(compute_loads(inst, s), p);
}

}  // namespace typesched
