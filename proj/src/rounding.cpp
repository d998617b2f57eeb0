#include "typesched/rounding.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <tuple>

namespace typesched {

namespace {

struct BuiltLp {
  LinearProgram lp;
  std::vector<LpVariable> vars;
  std::size_t slot_rows = 0, machine_rows = 0, group_rows = 0;
  std::vector<std::size_t> machines, slots, groups;  // whose rows are present
};

struct State {
  const RoundingProblem* p = nullptr;
  std::vector<JobOptions> live;
  std::vector<bool> active;
  std::vector<bool> machine_row;
  std::vector<std::vector<Rational>> fixed_load;
  std::vector<bool> slot_row, slot_open;
  std::vector<bool> group_row;
  std::vector<std::size_t> group_used;
  Rational fixed_cost{0};
};

BuiltLp build_lp(const State& st) {
  const RoundingProblem& p = *st.p;
  BuiltLp b;
  std::vector<std::vector<LinearTerm>> machine_terms(p.num_machines() * p.dims);
  std::vector<std::vector<LinearTerm>> slot_terms(p.slot_machine.size());
  std::vector<std::vector<LinearTerm>> group_terms(p.groups.size());
  std::vector<LinearTerm> objective;
  for (std::size_t v = 0; v < st.live.size(); ++v) {
    if (!st.active[v]) continue;
    const auto& o = st.live[v];
    std::vector<LinearTerm> row;
    for (const auto& [i, cost] : o.machines) {
      auto var = b.lp.add_variable("x_m" + std::to_string(i) + "_j" + std::to_string(v));
      b.vars.push_back({v, Position::Kind::Machine, i});
      row.push_back({var, 1});
      if (st.machine_row[i])
        for (std::size_t d = 0; d < p.dims; ++d) machine_terms[i * p.dims + d].push_back({var, cost[d]});
    }
    for (const auto& [s, w] : o.slots) {
      auto var = b.lp.add_variable("x_s" + std::to_string(s) + "_j" + std::to_string(v));
      b.vars.push_back({v, Position::Kind::Slot, s});
      row.push_back({var, 1});
      if (st.slot_row[s]) slot_terms[s].push_back({var, 1});
    }
    for (const auto& [g, coef] : o.huge) {
      auto var = b.lp.add_variable("x_h" + std::to_string(g) + "_j" + std::to_string(v));
      b.vars.push_back({v, Position::Kind::Huge, g});
      row.push_back({var, 1});
      if (st.group_row[g]) group_terms[g].push_back({var, 1});
      if (p.minimize_huge_cost) objective.push_back({var, coef});
    }
    b.lp.add_constraint(std::move(row), Relation::Equal, 1, "assign_j" + std::to_string(v));
  }
  for (std::size_t s = 0; s < slot_terms.size(); ++s) {
    if (slot_terms[s].empty()) continue;
    b.lp.add_constraint(std::move(slot_terms[s]), Relation::LessEqual, 1, "slot_" + std::to_string(s));
    b.slots.push_back(s);
  }
  for (std::size_t i = 0; i < p.num_machines(); ++i) {
    if (machine_terms[i * p.dims].empty()) continue;
    for (std::size_t d = 0; d < p.dims; ++d)
      b.lp.add_constraint(std::move(machine_terms[i * p.dims + d]), Relation::LessEqual,
                          p.capacity[i][d] - st.fixed_load[i][d],
                          "cap_m" + std::to_string(i) + "_d" + std::to_string(d));
    b.machines.push_back(i);
  }
  for (std::size_t g = 0; g < group_terms.size(); ++g) {
    if (group_terms[g].empty()) continue;
    const long budget = static_cast<long>(p.groups[g].machines.size() - st.group_used[g]);
    b.lp.add_constraint(std::move(group_terms[g]), Relation::LessEqual, Rational(budget), "huge_" + std::to_string(g));
    b.groups.push_back(g);
  }
  b.slot_rows = b.slots.size();
  b.machine_rows = b.machines.size();
  b.group_rows = b.groups.size();
  if (!p.minimize_huge_cost && p.vertex_seed != 0) {
    std::mt19937_64 rng(p.vertex_seed + st.live.size() * 7919 + b.vars.size());
    for (std::size_t k = 0; k < b.vars.size(); ++k)
      objective.push_back({k, Rational(static_cast<long>(rng() % 101) - 50)});
    b.lp.set_objective(Sense::Minimize, std::move(objective));
  } else {
    b.lp.set_objective(p.minimize_huge_cost ? Sense::Minimize : Sense::Feasibility, std::move(objective));
  }
  return b;
}

State initial_state(const RoundingProblem& p) {
  State st;
  st.p = &p;
  st.live = p.jobs;
  st.active.assign(p.jobs.size(), true);
  st.machine_row.assign(p.num_machines(), true);
  st.fixed_load.assign(p.num_machines(), std::vector<Rational>(p.dims, Rational(0)));
  st.slot_row.assign(p.slot_machine.size(), true);
  st.slot_open.assign(p.slot_machine.size(), true);
  st.group_row.assign(p.groups.size(), true);
  st.group_used.assign(p.groups.size(), 0);
  return st;
}

template <class K, class V>
std::map<K, V> without_key(std::map<K, V> m, const K& k) {
  m.erase(k);
  return m;
}

std::string describe(const char* what, std::size_t a, std::size_t b) {
  std::ostringstream out;
  out << what << " " << a << " > " << b;
  return out.str();
}

}  // namespace

LinearProgram RoundingProblem::to_lp() const { return build_lp(initial_state(*this)).lp; }

std::vector<LpVariable> RoundingProblem::lp_variables() const { return build_lp(initial_state(*this)).vars; }

RoundingOutcome iterative_round(const RoundingProblem& p, AuditLog* log) {
  RoundingOutcome out;
  State st = initial_state(p);
  out.forest = SubsumptionForest(p.jobs.size());
  out.node_options = p.jobs;
  out.position.assign(p.jobs.size(), std::nullopt);

  const std::size_t max_iterations = p.num_machines() + p.slot_machine.size() + p.groups.size() + 1;
  std::optional<Rational> previous_objective;
  for (std::size_t iter = 0;; ++iter) {
    if (iter >= max_iterations) throw CountingViolation("iterative rounding did not terminate in time");
    BuiltLp b = build_lp(st);
    auto res = solve_extreme_point(b.lp);
    if (res.status != LpStatus::Optimal) {
      if (iter == 0 && res.status == LpStatus::Infeasible) return out;
      audit(log, invariant::kReductionFeasible, false, "reduced LP is " + to_string(res.status));
      throw std::logic_error("reduced LP became " + to_string(res.status));
    }
    if (iter == 0) {
      out.feasible = true;
      out.first_lp = b.lp;
      out.first_solution = res.solution;
    } else {
      audit(log, invariant::kReductionFeasible, true);
    }
    const auto& x = res.solution.value;
    RoundingStep step;
    step.rows = b.lp.num_constraints();
    step.fractional = res.solution.fractional_count();
    step.fractional_bound = 2 * b.slot_rows + 2 * p.dims * b.machine_rows + 2 * b.group_rows;
    step.objective = res.solution.objective_value + st.fixed_cost;
    audit(log, invariant::kExtremePointSparsity, res.solution.positive_count() <= step.rows,
          describe("positive variables", res.solution.positive_count(), step.rows));
    audit(log, invariant::kFractionalCount, step.fractional <= step.fractional_bound,
          describe("fractional variables", step.fractional, step.fractional_bound));
    if (p.minimize_huge_cost) {
      if (previous_objective)
        audit(log, invariant::kLpObjectiveMonotone, step.objective <= *previous_objective,
              "objective went from " + to_string(*previous_objective) + " to " + to_string(step.objective));
      previous_objective = step.objective;
    }

    // Fix integral variables.
    std::map<std::tuple<std::size_t, Position::Kind, std::size_t>, Rational> value;
    for (std::size_t k = 0; k < b.vars.size(); ++k) {
      const auto& v = b.vars[k];
      if (!st.active[v.job]) continue;
      auto& o = st.live[v.job];
      if (sgn(x[k]) == 0) {
        if (v.kind == Position::Kind::Machine) o.machines.erase(v.index);
        else if (v.kind == Position::Kind::Slot) o.slots.erase(v.index);
        else o.huge.erase(v.index);
        continue;
      }
      if (x[k] != 1) {
        value[{v.job, v.kind, v.index}] = x[k];
        continue;
      }
      Position pos{v.kind, v.index, 0};
      if (v.kind == Position::Kind::Machine) {
        pos.machine = v.index;
        for (std::size_t d = 0; d < p.dims; ++d) st.fixed_load[v.index][d] += o.machines.at(v.index)[d];
      } else if (v.kind == Position::Kind::Slot) {
        pos.machine = p.slot_machine[v.index];
        st.slot_open[v.index] = false;
        st.slot_row[v.index] = false;
      } else {
        pos.machine = p.groups[v.index].machines.at(st.group_used[v.index]++);
        st.fixed_cost += o.huge.at(v.index);
      }
      out.position[v.job] = pos;
      st.active[v.job] = false;
      o = JobOptions{};
    }
    // Fractional values recorded before the job was fixed elsewhere are stale.
    std::erase_if(value, [&](const auto& kv) { return !st.active[std::get<0>(kv.first)]; });

    bool any_active = false;
    for (std::size_t v = 0; v < st.active.size(); ++v) any_active = any_active || st.active[v];
    if (!any_active) {
      out.steps.push_back(step);
      break;
    }

    // Count the fractional jobs on every live row.
    std::vector<std::vector<std::size_t>> on_machine(p.num_machines()), on_slot(p.slot_machine.size()),
        on_group(p.groups.size());
    for (std::size_t v = 0; v < st.live.size(); ++v) {
      if (!st.active[v]) continue;
      for (const auto& [i, c] : st.live[v].machines) on_machine[i].push_back(v);
      for (const auto& [s, w] : st.live[v].slots) on_slot[s].push_back(v);
      for (const auto& [g, c] : st.live[v].huge) on_group[g].push_back(v);
    }
    auto merge_slot = [&](std::size_t s, std::size_t a, std::size_t c) {
      const JobOptions& oa = st.live[a];
      const JobOptions& oc = st.live[c];
      JobOptions merged;
      std::map<std::size_t, std::array<Rational, 2>> mw, hw;
      auto weights = [&](Position::Kind kind, std::size_t idx, bool has_a, bool has_c) {
        std::array<Rational, 2> w{Rational(0), Rational(0)};
        if (has_a && has_c) {
          const Rational& xa = value.at({a, kind, idx});
          const Rational& xc = value.at({c, kind, idx});
          w = {xa / (xa + xc), xc / (xa + xc)};
        } else if (has_a) {
          w[0] = 1;
        } else {
          w[1] = 1;
        }
        return w;
      };
      std::set<std::size_t> machines;
      for (const auto& [i, cost] : oa.machines) machines.insert(i);
      for (const auto& [i, cost] : oc.machines) machines.insert(i);
      for (auto i : machines) {
        bool ha = oa.machines.count(i), hc = oc.machines.count(i);
        auto w = weights(Position::Kind::Machine, i, ha, hc);
        std::vector<Rational> cost(p.dims, Rational(0));
        for (std::size_t d = 0; d < p.dims; ++d) {
          if (ha) cost[d] += w[0] * oa.machines.at(i)[d];
          if (hc) cost[d] += w[1] * oc.machines.at(i)[d];
        }
        merged.machines[i] = std::move(cost);
        mw[i] = w;
      }
      std::set<std::size_t> groups;
      for (const auto& [g, coef] : oa.huge) groups.insert(g);
      for (const auto& [g, coef] : oc.huge) groups.insert(g);
      for (auto g : groups) {
        bool ha = oa.huge.count(g), hc = oc.huge.count(g);
        auto w = weights(Position::Kind::Huge, g, ha, hc);
        Rational coef(0);
        if (ha) coef += w[0] * oa.huge.at(g);
        if (hc) coef += w[1] * oc.huge.at(g);
        merged.huge[g] = coef;
        hw[g] = w;
      }
      for (const auto& [t, w] : oa.slots)
        if (t != s) merged.slots[t] = 0;
      for (const auto& [t, w] : oc.slots)
        if (t != s) merged.slots[t] = 0;

      const std::size_t id = out.forest.merge(a, c, s, mw, hw);
      // artificial costs must stay inside the hull of the subsumed leaves
      for (const auto& [i, cost] : merged.machines) {
        for (std::size_t d = 0; d < p.dims; ++d) {
          std::optional<Rational> lo, hi;
          for (auto leaf : out.forest.leaves_of(id)) {
            auto it = p.jobs[leaf].machines.find(i);
            if (it == p.jobs[leaf].machines.end()) continue;
            if (!lo || it->second[d] < *lo) lo = it->second[d];
            if (!hi || it->second[d] > *hi) hi = it->second[d];
          }
          audit(log, invariant::kArtificialCostConvex, lo && *lo <= cost[d] && cost[d] <= *hi,
                "artificial cost outside the leaves' range");
        }
      }
      out.node_options.push_back(merged);
      out.position.emplace_back();
      st.live.push_back(std::move(merged));
      st.active.push_back(true);
      st.active[a] = false;
      st.active[c] = false;
      st.live[a] = JobOptions{};
      st.live[c] = JobOptions{};
      st.slot_row[s] = false;
      st.slot_open[s] = false;
    };
    bool reduced = false;
    auto try_machine = [&] {
      for (auto i : b.machines) {
        if (!st.machine_row[i] || on_machine[i].empty() || on_machine[i].size() > 2 * p.dims) continue;
        st.machine_row[i] = false;
        step.reduction = 'a';
        step.target = i;
        return true;
      }
      return false;
    };
    auto try_slot = [&] {
      for (auto s : b.slots) {
        if (!st.slot_row[s] || on_slot[s].empty() || on_slot[s].size() > 2) continue;
        step.reduction = 'b';
        step.target = s;
        if (on_slot[s].size() == 1) {
          st.slot_row[s] = false;
          return true;
        }
        merge_slot(s, on_slot[s][0], on_slot[s][1]);
        return true;
      }
      return false;
    };
    auto try_group = [&] {
      for (auto g : b.groups) {
        if (!st.group_row[g] || on_group[g].empty() || on_group[g].size() > 2) continue;
        // the leftover fractional huge jobs share one improper machine
        const std::size_t improper = p.groups[g].machines.at(st.group_used[g]);
        for (auto v : on_group[g]) {
          out.position[v] = Position{Position::Kind::Huge, g, improper};
          st.active[v] = false;
          st.live[v] = JobOptions{};
        }
        st.group_row[g] = false;
        step.reduction = 'c';
        step.target = g;
        return true;
      }
      return false;
    };
    for (char r : p.reduction_order) {
      if (reduced) break;
      if (r == 'a') reduced = try_machine();
      else if (r == 'b') reduced = try_slot();
      else if (r == 'c') reduced = try_group();
    }
    audit(log, invariant::kCountingCase, reduced, "no machine, slot or huge group qualifies for a reduction");
    out.steps.push_back(step);
    if (!reduced) throw CountingViolation("no reduction applies to the current extreme point");
  }

  // Loads of x-bar against the original capacities.
  out.capacity_load.assign(p.num_machines(), std::vector<Rational>(p.dims, Rational(0)));
  std::set<std::size_t> used_slots;
  bool slots_ok = true;
  for (std::size_t v = 0; v < out.position.size(); ++v) {
    if (!out.forest.is_root(v)) {
      slots_ok = slots_ok && !out.position[v];
      continue;
    }
    const auto& pos = out.position[v];
    if (!pos) {
      slots_ok = false;
      continue;
    }
    if (pos->kind == Position::Kind::Machine)
      for (std::size_t d = 0; d < p.dims; ++d) out.capacity_load[pos->index][d] += out.node_options[v].machines.at(pos->index)[d];
    if (pos->kind == Position::Kind::Slot) slots_ok = slots_ok && used_slots.insert(pos->index).second;
  }
  for (std::size_t v = p.jobs.size(); v < out.forest.size(); ++v)
    slots_ok = slots_ok && !used_slots.count(out.forest.node(v).disposed_slot);
  const std::string forest_error = out.forest.validate();
  audit(log, invariant::kForestStructure, forest_error.empty() && slots_ok,
        forest_error.empty() ? "slot reused or subsumed job assigned" : forest_error);
  for (std::size_t i = 0; i < p.num_machines(); ++i)
    for (std::size_t d = 0; d < p.dims; ++d) {
      Rational bound = p.capacity[i][d] + 2 * Rational(static_cast<long>(p.dims)) * p.small_bound[i];
      audit(log, invariant::kRoundingOvershoot, out.capacity_load[i][d] <= bound,
            "machine " + std::to_string(i) + " load " + to_string(out.capacity_load[i][d]) + " > " + to_string(bound));
    }
  return out;
}

namespace {

bool compatible(const RoundingProblem& p, std::size_t leaf, const Position& where) {
  const auto& o = p.jobs[leaf];
  switch (where.kind) {
    case Position::Kind::Machine: return o.machines.count(where.index) > 0;
    case Position::Kind::Slot: return o.slots.count(where.index) > 0;
    case Position::Kind::Huge: return o.huge.count(where.index) > 0;
  }
  return false;
}

// compatible leaf with the largest slot cost, ties to the lowest index
std::size_t leaf_for_slot(const RoundingProblem& p, const SubsumptionForest& f, std::size_t node, std::size_t slot) {
  std::size_t best = kNone;
  for (auto leaf : f.leaves_of(node)) {
    auto it = p.jobs[leaf].slots.find(slot);
    if (it == p.jobs[leaf].slots.end()) continue;
    if (best == kNone || it->second > p.jobs[best].slots.at(slot)) best = leaf;
  }
  if (best == kNone) throw ForestInconsistent("no leaf of node " + std::to_string(node) + " fits slot " + std::to_string(slot));
  return best;
}

// compatible leaf with the smallest coefficient, so the real cost never
// exceeds the merged one
std::size_t leaf_for_group(const RoundingProblem& p, const SubsumptionForest& f, std::size_t node, std::size_t group) {
  std::size_t best = kNone;
  for (auto leaf : f.leaves_of(node)) {
    auto it = p.jobs[leaf].huge.find(group);
    if (it == p.jobs[leaf].huge.end()) continue;
    if (best == kNone || it->second < p.jobs[best].huge.at(group)) best = leaf;
  }
  if (best == kNone) throw ForestInconsistent("no leaf of node " + std::to_string(node) + " fits huge group " + std::to_string(group));
  return best;
}

}  // namespace

void place_tree(const RoundingProblem& p, const SubsumptionForest& f, std::size_t node, const Position& where,
                std::size_t target, std::vector<std::optional<Position>>& out, AuditLog* log) {
  if (!f.contains(node, target)) throw ForestInconsistent("target leaf is outside the tree");
  const auto& n = f.node(node);
  if (!n.artificial()) {
    const bool ok = compatible(p, node, where);
    audit(log, invariant::kPlacementCompatible, ok, "job " + std::to_string(node) + " placed on an incompatible position");
    if (!ok) throw ForestInconsistent("job " + std::to_string(node) + " cannot take its position");
    out[node] = where;
    return;
  }
  const std::size_t follow = f.contains(n.children[0], target) ? 0 : 1;
  const std::size_t other = n.children[1 - follow];
  place_tree(p, f, n.children[follow], where, target, out, log);
  Position slot{Position::Kind::Slot, n.disposed_slot, p.slot_machine[n.disposed_slot]};
  place_tree(p, f, other, slot, leaf_for_slot(p, f, other, n.disposed_slot), out, log);
}

std::vector<Position> untangle(const RoundingProblem& p, const RoundingOutcome& outcome, AuditLog* log) {
  const auto& f = outcome.forest;
  std::vector<std::optional<Position>> placed(p.jobs.size());
  std::map<std::size_t, std::vector<std::size_t>> artificial_on;  // machine -> artificial roots
  for (auto r : f.roots()) {
    const auto& pos = outcome.position[r];
    if (!pos) throw ForestInconsistent("root " + std::to_string(r) + " has no position");
    if (!f.node(r).artificial()) {
      place_tree(p, f, r, *pos, r, placed, log);
      continue;
    }
    switch (pos->kind) {
      case Position::Kind::Slot: place_tree(p, f, r, *pos, leaf_for_slot(p, f, r, pos->index), placed, log); break;
      case Position::Kind::Huge: place_tree(p, f, r, *pos, leaf_for_group(p, f, r, pos->index), placed, log); break;
      case Position::Kind::Machine: artificial_on[pos->index].push_back(r); break;
    }
  }

  const Rational dims(static_cast<long>(p.dims));
  for (const auto& [i, roots] : artificial_on) {
    // capacity left for the subsumed jobs after the real jobs already on i
    std::vector<Rational> rhs(p.dims);
    for (std::size_t d = 0; d < p.dims; ++d) rhs[d] = p.capacity[i][d] + 2 * dims * p.small_bound[i];
    for (std::size_t j = 0; j < p.jobs.size(); ++j)
      if (f.is_root(j) && outcome.position[j] && outcome.position[j]->kind == Position::Kind::Machine &&
          outcome.position[j]->index == i)
        for (std::size_t d = 0; d < p.dims; ++d) rhs[d] -= p.jobs[j].machines.at(i)[d];

    LinearProgram art;
    std::vector<std::pair<std::size_t, std::size_t>> var_leaf;  // (root, leaf)
    std::vector<std::vector<LinearTerm>> cap_terms(p.dims);
    std::vector<LinearTerm> objective;
    std::map<std::size_t, std::size_t> var_of_leaf;
    for (auto r : roots) {
      std::vector<LinearTerm> cover;
      for (auto leaf : f.leaves_of(r)) {
        auto it = p.jobs[leaf].machines.find(i);
        if (it == p.jobs[leaf].machines.end()) continue;
        auto v = art.add_variable("x_j" + std::to_string(leaf));
        var_leaf.push_back({r, leaf});
        var_of_leaf[leaf] = v;
        cover.push_back({v, 1});
        objective.push_back({v, 1});
        for (std::size_t d = 0; d < p.dims; ++d) cap_terms[d].push_back({v, it->second[d]});
      }
      if (cover.empty()) throw ForestInconsistent("artificial job on a machine none of its leaves can use");
      art.add_constraint(std::move(cover), Relation::GreaterEqual, 1, "cover_" + std::to_string(r));
    }
    for (std::size_t d = 0; d < p.dims; ++d)
      art.add_constraint(std::move(cap_terms[d]), Relation::LessEqual, rhs[d], "cap_d" + std::to_string(d));
    art.set_objective(Sense::Minimize, std::move(objective));

    // seed: split each artificial job's unit weight down its tree
    std::vector<Rational> seed(art.num_variables(), Rational(0));
    bool seed_ok = true;
    for (auto r : roots) {
      std::vector<std::pair<std::size_t, Rational>> stack{{r, Rational(1)}};
      while (!stack.empty()) {
        auto [v, w] = stack.back();
        stack.pop_back();
        if (sgn(w) == 0) continue;
        const auto& n = f.node(v);
        if (!n.artificial()) {
          auto it = var_of_leaf.find(v);
          if (it == var_of_leaf.end()) seed_ok = false;
          else seed[it->second] += w;
          continue;
        }
        auto wit = n.machine_weights.find(i);
        if (wit == n.machine_weights.end()) {
          seed_ok = false;
          continue;
        }
        stack.push_back({n.children[0], w * wit->second[0]});
        stack.push_back({n.children[1], w * wit->second[1]});
      }
    }
    seed_ok = seed_ok && art.is_feasible(seed);
    audit(log, invariant::kArtLpSeedFeasible, seed_ok, "decomposed weights violate the machine LP on " + std::to_string(i));

    auto res = solve_extreme_point(art);
    if (res.status != LpStatus::Optimal) throw ForestInconsistent("machine LP infeasible on machine " + std::to_string(i));
    audit(log, invariant::kArtLpSparsity, res.solution.positive_count() <= roots.size() + p.dims,
          describe("machine LP positives", res.solution.positive_count(), roots.size() + p.dims));

    for (auto r : roots) {
      std::size_t best = kNone;
      std::vector<std::size_t> positive;
      for (std::size_t k = 0; k < var_leaf.size(); ++k) {
        if (var_leaf[k].first != r || sgn(res.solution.value[k]) == 0) continue;
        positive.push_back(var_leaf[k].second);
        if (best == kNone || res.solution.value[k] > res.solution.value[var_of_leaf[best]]) best = var_leaf[k].second;
      }
      if (best == kNone) throw ForestInconsistent("cover row without a positive leaf");
      place_tree(p, f, r, Position{Position::Kind::Machine, i, i}, best, placed, log);
      for (auto leaf : positive) placed[leaf] = Position{Position::Kind::Machine, i, i};
    }
  }

  std::vector<Position> result(p.jobs.size());
  std::vector<std::vector<Rational>> load(p.num_machines(), std::vector<Rational>(p.dims, Rational(0)));
  for (std::size_t j = 0; j < p.jobs.size(); ++j) {
    if (!placed[j]) throw ForestInconsistent("job " + std::to_string(j) + " left unplaced");
    result[j] = *placed[j];
    if (result[j].kind == Position::Kind::Machine)
      for (std::size_t d = 0; d < p.dims; ++d) load[result[j].index][d] += p.jobs[j].machines.at(result[j].index)[d];
  }
  for (std::size_t i = 0; i < p.num_machines(); ++i)
    for (std::size_t d = 0; d < p.dims; ++d) {
      Rational bound = p.capacity[i][d] + 3 * dims * p.small_bound[i];
      audit(log, invariant::kUntangleOvershoot, load[i][d] <= bound,
            "machine " + std::to_string(i) + " load " + to_string(load[i][d]) + " > " + to_string(bound));
    }
  return result;
}

}  // namespace typesched
