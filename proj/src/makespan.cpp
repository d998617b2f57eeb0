#include "typesched/makespan.hpp"

#include <stdexcept>

namespace typesched {

std::string to_string(DecisionStatus status) {
  switch (status) {
    case DecisionStatus::Accepted: return "Accepted";
    case DecisionStatus::Infeasible: return "Infeasible";
    case DecisionStatus::BudgetExhausted: return "BudgetExhausted";
  }
  return "Unknown";
}

SlotLp build_slot_lp(const ScaledInstance& scaled, const MakespanCatalog& catalog, const PatternProfile& profile) {
  const Instance& inst = *scaled.base;
  const auto machines = all_machines(inst);
  SlotLp out;
  auto& p = out.problem;
  auto& sys = out.system;
  p.dims = inst.dims;
  p.small_bound.assign(machines.size(), scaled.eps);
  const Rational cap = machine_capacity(scaled.eps);
  for (std::size_t i = 0; i < machines.size(); ++i) {
    const auto m = machines[i];
    const auto& space = catalog.spaces[m.type];
    const Pattern& pattern = profile.machines.at(m.type).at(m.index);
    std::vector<Rational> rem(inst.dims);
    for (std::size_t d = 0; d < inst.dims; ++d) rem[d] = cap - pattern_mass(space, pattern, d);
    sys.rem.push_back(rem);
    for (std::size_t c = 0; c < pattern.size(); ++c)
      for (std::size_t k = 0; k < pattern[c]; ++k) {
        sys.slot_machine.push_back(i);
        sys.slot_class.push_back(c);
      }
  }
  p.capacity = sys.rem;
  p.slot_machine = sys.slot_machine;
  p.jobs.resize(inst.num_jobs());
  for (std::size_t j = 0; j < inst.num_jobs(); ++j) {
    auto& o = p.jobs[j];
    for (std::size_t i = 0; i < machines.size(); ++i) {
      const auto l = machines[i].type;
      if (!scaled.is_large(j, l)) o.machines[i] = scaled.entry(j, l).scaled;
    }
    for (std::size_t s = 0; s < sys.slot_machine.size(); ++s) {
      const auto l = machines[sys.slot_machine[s]].type;
      if (catalog.job_class[j][l] == sys.slot_class[s]) o.slots[s] = inst.max_cost(j, l);
    }
  }
  out.lp = p.to_lp();
  return out;
}

Schedule schedule_from_positions(const Instance& inst, const std::vector<Position>& positions) {
  const auto machines = all_machines(inst);
  Schedule s;
  for (const auto& pos : positions) s.assignment.push_back(machines.at(pos.machine));
  return s;
}

namespace {

// Rounds one profile; nullopt when its Slot-LP is infeasible.
std::optional<DecisionResult> try_profile(const Instance& inst, const ScaledInstance& scaled,
                                          const MakespanCatalog& catalog, const PatternProfile& profile,
                                          AuditLog* log) {
  if (!profile_fits(catalog.spaces, profile)) return std::nullopt;
  SlotLp slot = build_slot_lp(scaled, catalog, profile);
  auto outcome = iterative_round(slot.problem, log);
  if (!outcome.feasible) return std::nullopt;
  auto positions = untangle(slot.problem, outcome, log);
  DecisionResult r;
  r.status = DecisionStatus::Accepted;
  r.schedule = schedule_from_positions(inst, positions);
  r.makespan = evaluate_makespan(inst, *r.schedule);
  r.rounding_iterations = outcome.steps.size();
  r.forest_dot = outcome.forest.to_dot();
  const Rational bound = makespan_bound_factor(scaled.eps, inst.dims) * scaled.target;
  audit(log, invariant::kMakespanBound, r.makespan <= bound,
        "makespan " + to_string(r.makespan) + " exceeds " + to_string(bound));
  return r;
}

}  // namespace

DecisionResult makespan_decision(const Instance& inst, const Rational& target, const Rational& eps,
                                 const DecisionMode& mode, AuditLog* log) {
  auto scaled = make_scaled_instance(inst, target, eps);
  auto catalog = build_makespan_catalog(scaled);
  DecisionResult none;
  if (mode.kind == DecisionMode::Kind::Guided) {
    if (!mode.certificate) throw std::invalid_argument("guided mode needs a certificate schedule");
    PatternProfile profile;
    try {
      profile = profile_from_schedule(scaled, catalog, *mode.certificate);
    } catch (const PatternOverflow&) {
      return none;
    }
    none.profiles_tried = 1;
    auto r = try_profile(inst, scaled, catalog, profile, log);
    if (!r) return none;
    r->profiles_tried = 1;
    return *r;
  }
  ProfileEnumerator profiles(catalog.spaces, inst.num_jobs(), mode.budget);
  while (auto profile = profiles.next()) {
    auto r = try_profile(inst, scaled, catalog, *profile, log);
    if (r) {
      r->profiles_tried = profiles.yielded();
      return *r;
    }
  }
  none.profiles_tried = profiles.yielded();
  if (profiles.budget_exhausted()) none.status = DecisionStatus::BudgetExhausted;
  return none;
}

Rational makespan_lower_bound(const Instance& inst) {
  Rational lb(0);
  for (std::size_t j = 0; j < inst.num_jobs(); ++j) {
    std::optional<Rational> best;
    for (std::size_t l = 0; l < inst.num_types(); ++l) {
      if (inst.types[l].machine_count == 0) continue;
      Rational c = inst.max_cost(j, l);
      if (!best || c < *best) best = c;
    }
    if (*best > lb) lb = *best;
  }
  return lb;
}

Rational makespan_upper_bound(const Instance& inst) {
  Rational ub(0);
  for (std::size_t j = 0; j < inst.num_jobs(); ++j) {
    std::optional<Rational> best;
    for (std::size_t l = 0; l < inst.num_types(); ++l) {
      if (inst.types[l].machine_count == 0) continue;
      Rational c = inst.max_cost(j, l);
      if (!best || c < *best) best = c;
    }
    ub += *best;
  }
  return ub;
}

MakespanResult makespan_ptas(const Instance& inst, const Rational& eps_user, const DecisionMode& mode,
                             AuditLog* log) {
  MakespanResult result;
  result.eps_int = calibrate_eps(eps_user, inst.dims);
  const Rational step = 1 + result.eps_int;
  const Rational lb = makespan_lower_bound(inst);
  const Rational ub = makespan_upper_bound(inst);
  long top = 0;
  for (Rational t = lb; t < ub; t *= step) ++top;

  std::optional<DecisionResult> best;
  Rational best_target;
  auto decide = [&](long k) {
    Rational target = lb * int_power(step, k);
    auto r = makespan_decision(inst, target, result.eps_int, mode, log);
    ++result.decisions;
    result.profiles_tried += r.profiles_tried;
    result.rounding_iterations += r.rounding_iterations;
    if (r.status == DecisionStatus::BudgetExhausted)
      throw BudgetExhausted("profile budget exhausted at T = " + to_string(target));
    if (r.status != DecisionStatus::Accepted) return false;
    // keep the schedule of the smallest accepted target
    if (!best || target < best_target) {
      best = std::move(r);
      best_target = target;
    }
    return true;
  };
  if (!decide(top)) throw std::logic_error("decision rejected the upper bound");
  long lo = -1, hi = top;
  while (hi - lo > 1) {
    long mid = lo + (hi - lo) / 2;
    if (decide(mid)) hi = mid;
    else lo = mid;
  }
  result.schedule = *best->schedule;
  result.makespan = best->makespan;
  result.accepted_target = best_target;
  result.forest_dot = best->forest_dot;
  return result;
}

}  // namespace typesched
