#include "typesched/oracle.hpp"

#include <cmath>

namespace typesched {

namespace {

struct Search {
  const Instance& inst;
  Objective obj;
  bool prune;
  bool exact;          // objective tracked in rationals
  unsigned p_int = 0;  // integer exponent when exact L_p
  double p_real = 0.0;

  Search(const Instance& i, const Objective& o, bool pr) : inst(i), obj(o), prune(pr), exact(true) {}

  std::vector<std::vector<std::vector<Rational>>> load;  // [type][index][dim]
  std::vector<std::size_t> opened;
  std::vector<MachineId> assignment;
  std::vector<Rational> remaining_min;  // max over jobs >= j of min_l max_d c

  std::optional<Rational> best_exact;
  double best_real = 0.0;
  bool have_best = false;
  Schedule best_schedule;
  std::size_t explored = 0;

  Rational machine_value(const std::vector<Rational>& l) const {
    if (obj.kind == Objective::Kind::Makespan) {
      Rational m = l[0];
      for (const auto& v : l) if (v > m) m = v;
      return m;
    }
    return pow(l[0], p_int);
  }

  // objective of the partial assignment; it can only grow as jobs are added
  Rational partial_exact() const {
    Rational acc(0);
    for (const auto& type : load)
      for (const auto& l : type) {
        Rational v = machine_value(l);
        if (obj.kind == Objective::Kind::Makespan) {
          if (v > acc) acc = v;
        } else {
          acc += v;
        }
      }
    return acc;
  }

  double partial_real() const {
    double acc = 0.0;
    for (const auto& type : load)
      for (const auto& l : type) acc += std::pow(l[0].get_d(), p_real);
    return acc;
  }

  void record() {
    ++explored;
    if (exact) {
      Rational v = partial_exact();
      if (!have_best || v < *best_exact) {
        best_exact = v;
        have_best = true;
        best_schedule.assignment = assignment;
      }
    } else {
      double v = partial_real();
      if (!have_best || v < best_real) {
        best_real = v;
        have_best = true;
        best_schedule.assignment = assignment;
      }
    }
  }

  bool pruned(std::size_t next_job) const {
    if (!prune || !have_best) return false;
    if (exact) {
      Rational bound = partial_exact();
      if (obj.kind == Objective::Kind::Makespan && next_job < remaining_min.size() &&
          remaining_min[next_job] > bound)
        bound = remaining_min[next_job];
      return bound >= *best_exact;
    }
    return partial_real() >= best_real;
  }

  void dfs(std::size_t j) {
    if (j == inst.num_jobs()) {
      record();
      return;
    }
    if (pruned(j)) return;
    for (std::size_t l = 0; l < inst.num_types(); ++l) {
      const std::size_t limit = std::min(opened[l] + 1, inst.types[l].machine_count);
      for (std::size_t k = 0; k < limit; ++k) {
        const bool opens = k == opened[l];
        if (opens) ++opened[l];
        for (std::size_t d = 0; d < inst.dims; ++d) load[l][k][d] += inst.cost(j, l, d);
        assignment[j] = {l, k};
        dfs(j + 1);
        for (std::size_t d = 0; d < inst.dims; ++d) load[l][k][d] -= inst.cost(j, l, d);
        if (opens) --opened[l];
      }
    }
  }
};

}  // namespace

OracleResult exact_solve(const Instance& inst, const Objective& objective, const OracleOptions& options) {
  if (!validate_instance(inst).empty()) throw std::invalid_argument("invalid instance");
  if (inst.num_jobs() > options.max_jobs || inst.num_machines() > options.max_machines)
    throw TooLarge("instance exceeds the oracle caps (" + std::to_string(options.max_jobs) + " jobs, " +
                   std::to_string(options.max_machines) + " machines)");
  Search s(inst, objective, options.prune);
  if (objective.kind == Objective::Kind::LpNorm) {
    if (inst.dims != 1) throw DimensionMismatch("L_p objective needs D = 1");
    if (objective.p <= 1) throw BadExponent("p must exceed 1");
    s.exact = is_integer(objective.p);
    if (s.exact) s.p_int = static_cast<unsigned>(objective.p.get_num().get_ui());
    s.p_real = objective.p.get_d();
  }
  s.load.resize(inst.num_types());
  for (std::size_t l = 0; l < inst.num_types(); ++l)
    s.load[l].assign(inst.types[l].machine_count, std::vector<Rational>(inst.dims, Rational(0)));
  s.opened.assign(inst.num_types(), 0);
  s.assignment.resize(inst.num_jobs());
  s.remaining_min.assign(inst.num_jobs(), Rational(0));
  for (std::size_t j = inst.num_jobs(); j-- > 0;) {
    std::optional<Rational> best;
    for (std::size_t l = 0; l < inst.num_types(); ++l) {
      if (inst.types[l].machine_count == 0) continue;
      Rational c = inst.max_cost(j, l);
      if (!best || c < *best) best = c;
    }
    s.remaining_min[j] = *best;
    if (j + 1 < inst.num_jobs() && s.remaining_min[j + 1] > s.remaining_min[j]) s.remaining_min[j] = s.remaining_min[j + 1];
  }
  s.dfs(0);
  OracleResult r;
  r.witness = s.best_schedule;
  r.explored = s.explored;
  if (s.exact) {
    r.optimum = s.best_exact;
    r.value = s.best_exact->get_d();
  } else {
    r.value = s.best_real;
  }
  return r;
}

}  // namespace typesched
