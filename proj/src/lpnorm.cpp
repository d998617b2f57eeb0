#include "typesched/lpnorm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace typesched {

namespace {

Rational pow_coef(const Rational& c, const Rational& p) {
  auto np = power_of(c, p);
  return np.exact ? *np.exact : from_double(np.value);
}

double pow_d(double v, double p) { return v <= 0.0 ? 0.0 : std::pow(v, p); }

// Jobs per machine of one type, in machine order.
std::vector<std::vector<std::vector<std::size_t>>> jobs_by_machine(const Instance& inst, const Schedule& s) {
  std::vector<std::vector<std::vector<std::size_t>>> out(inst.num_types());
  for (std::size_t l = 0; l < inst.num_types(); ++l) out[l].resize(inst.types[l].machine_count);
  for (std::size_t j = 0; j < s.assignment.size(); ++j) out[s.assignment[j].type][s.assignment[j].index].push_back(j);
  return out;
}

struct TypeStructure {
  std::optional<Rational> c_max;
  std::vector<std::size_t> huge_machines, other_machines;
};

TypeStructure structure_of(const Instance& inst, std::size_t l, const std::vector<std::vector<std::size_t>>& machines) {
  TypeStructure ts;
  for (const auto& js : machines) {
    if (js.size() < 2) continue;
    for (auto j : js)
      if (!ts.c_max || inst.cost(j, l) > *ts.c_max) ts.c_max = inst.cost(j, l);
  }
  for (std::size_t i = 0; i < machines.size(); ++i) {
    const auto& js = machines[i];
    bool huge = js.size() == 1 && (!ts.c_max || inst.cost(js[0], l) > *ts.c_max);
    (huge ? ts.huge_machines : ts.other_machines).push_back(i);
  }
  return ts;
}

Rational machine_load(const Instance& inst, std::size_t l, const std::vector<std::size_t>& js) {
  Rational sum(0);
  for (auto j : js) sum += inst.cost(j, l);
  return sum;
}

void require_one_dim(const Instance& inst) {
  if (inst.dims != 1) throw DimensionMismatch("the L_p scheme takes one-dimensional jobs");
}

std::string str(const Rational& r) { return to_string(r); }

}  // namespace

long f_threshold(const Rational& p, const Rational& eps) {
  if (sgn(eps) <= 0) throw std::invalid_argument("eps must be positive");
  if (p <= 1) throw BadExponent("p must exceed 1");
  if (is_integer(p)) {
    const long k = p.get_num().get_si();
    Rational f = pow(Rational(2), k) / (pow(1 + eps, k) - 1);
    return std::max(1L, ceil_to_long(f));
  }
  const double pd = p.get_d();
  const double f = std::pow(2.0, pd) / (std::pow(1.0 + eps.get_d(), pd) - 1.0);
  return std::max(1L, static_cast<long>(std::ceil(f - 1e-12)));
}

Rational calibrate_lp_eps(const Rational& eps_user) {
  if (sgn(eps_user) <= 0) throw std::invalid_argument("eps must be positive");
  Rational e = eps_user;
  while ((1 + 3 * e) * (1 + e) * (1 + e) > 1 + eps_user) e /= 2;
  return e;
}

std::vector<LargeClasses> large_classes(const Instance& inst, const Rational& eps, const std::vector<TypeGuess>& types) {
  std::set<std::size_t> pinned;
  for (const auto& t : types) pinned.insert(t.very_huge.begin(), t.very_huge.end());
  std::vector<LargeClasses> out(inst.num_types());
  for (std::size_t l = 0; l < inst.num_types(); ++l) {
    const auto& g = types[l];
    auto& lc = out[l];
    lc.of_job.assign(inst.num_jobs(), std::nullopt);
    lc.space.machines = inst.types[l].machine_count - g.huge;
    lc.space.capacity = {Rational(0)};
    if (!g.c_max || lc.space.machines == 0) continue;
    const Rational& c = *g.c_max;
    lc.threshold = eps * g.alpha * c;
    lc.space.capacity = {(g.alpha + 2) * c};
    lc.space.max_slots = static_cast<std::size_t>(floor_to_long(Rational(g.alpha + 2) / (eps * g.alpha)));
    std::map<long, std::size_t> count;
    std::vector<std::optional<long>> k_of(inst.num_jobs());
    for (std::size_t j = 0; j < inst.num_jobs(); ++j) {
      if (pinned.count(j)) continue;
      const Rational& cj = inst.cost(j, l);
      if (cj <= lc.threshold || cj > c) continue;
      // largest k with threshold * (1+eps)^k <= cj
      long k = round_up_exponent(lc.threshold / cj, eps);
      k_of[j] = k;
      ++count[k];
    }
    for (const auto& [k, n] : count) {
      lc.exponents.push_back(k);
      lc.space.classes.push_back({{lc.threshold * int_power(1 + eps, k)}, n});
    }
    for (std::size_t j = 0; j < inst.num_jobs(); ++j) {
      if (!k_of[j]) continue;
      auto it = std::lower_bound(lc.exponents.begin(), lc.exponents.end(), *k_of[j]);
      lc.of_job[j] = static_cast<std::size_t>(it - lc.exponents.begin());
    }
  }
  return out;
}

std::string load_structure_violation(const Instance& inst, const Schedule& s) {
  check_schedule(inst, s);
  auto by = jobs_by_machine(inst, s);
  for (std::size_t l = 0; l < inst.num_types(); ++l) {
    auto ts = structure_of(inst, l, by[l]);
    if (!ts.c_max) continue;
    std::optional<Rational> lo, hi;
    for (auto i : ts.other_machines) {
      Rational load = machine_load(inst, l, by[l][i]);
      if (load < *ts.c_max)
        return "type " + std::to_string(l) + " machine " + std::to_string(i) + " has load " + str(load) +
               " below c_max " + str(*ts.c_max);
      if (!lo || load < *lo) lo = load;
      if (!hi || load > *hi) hi = load;
    }
    if (*hi - *lo > *ts.c_max)
      return "type " + std::to_string(l) + " non-huge loads span " + str(*lo) + ".." + str(*hi) + ", more than c_max " +
             str(*ts.c_max);
  }
  return {};
}

Guess guess_from_schedule(const Instance& inst, const Rational& p, const Rational& eps, const Schedule& s) {
  require_one_dim(inst);
  if (auto why = load_structure_violation(inst, s); !why.empty()) throw GuessInconsistent(why);
  const long f = f_threshold(p, eps);
  auto by = jobs_by_machine(inst, s);
  Guess g;
  g.types.resize(inst.num_types());
  std::vector<TypeStructure> structure;
  for (std::size_t l = 0; l < inst.num_types(); ++l) {
    auto ts = structure_of(inst, l, by[l]);
    auto& tg = g.types[l];
    tg.huge = ts.huge_machines.size();
    std::vector<std::size_t> huge_jobs;
    for (auto i : ts.huge_machines) huge_jobs.push_back(by[l][i][0]);
    std::sort(huge_jobs.begin(), huge_jobs.end(), [&](std::size_t a, std::size_t b) {
      if (inst.cost(a, l) != inst.cost(b, l)) return inst.cost(a, l) > inst.cost(b, l);
      return a < b;
    });
    huge_jobs.resize(std::min<std::size_t>(huge_jobs.size(), static_cast<std::size_t>(f)));
    tg.very_huge = huge_jobs;
    tg.c_max = ts.c_max;
    if (ts.c_max) {
      std::optional<Rational> lo;
      for (auto i : ts.other_machines) {
        Rational load = machine_load(inst, l, by[l][i]);
        if (!lo || load < *lo) lo = load;
      }
      tg.alpha = std::clamp(floor_to_long(*lo / *ts.c_max), 1L, static_cast<long>(inst.num_jobs()));
    }
    structure.push_back(std::move(ts));
  }
  auto classes = large_classes(inst, eps, g.types);
  std::vector<PatternSpace> spaces;
  std::vector<std::vector<std::vector<std::size_t>>> machine_classes(inst.num_types());
  for (std::size_t l = 0; l < inst.num_types(); ++l) {
    spaces.push_back(classes[l].space);
    for (auto i : structure[l].other_machines) {
      std::vector<std::size_t> local;
      for (auto j : by[l][i])
        if (classes[l].of_job[j]) local.push_back(*classes[l].of_job[j]);
      machine_classes[l].push_back(std::move(local));
    }
  }
  try {
    g.profile = profile_from_classes(spaces, machine_classes);
  } catch (const PatternOverflow& e) {
    throw GuessInconsistent(e.what());
  }
  if (!profile_fits(spaces, g.profile)) throw GuessInconsistent("a non-huge machine exceeds (alpha+2) c_max");
  return g;
}

GuessStream::GuessStream(const Instance& inst, const Rational& p, const Rational& eps, std::size_t budget)
    : inst_(&inst), p_(p), eps_(eps), budget_(budget) {
  require_one_dim(inst);
  const std::size_t n = inst.num_jobs();
  const std::size_t f = static_cast<std::size_t>(f_threshold(p, eps));
  options_.resize(inst.num_types());
  for (std::size_t l = 0; l < inst.num_types(); ++l) {
    const std::size_t m = inst.types[l].machine_count;
    for (std::size_t h = 0; h <= m; ++h) {
      const std::size_t v = std::min(f, h);
      if (v > n) continue;
      // subsets of v jobs, as increasing index vectors
      std::vector<std::size_t> pick(v);
      for (std::size_t k = 0; k < v; ++k) pick[k] = k;
      for (;;) {
        std::vector<std::size_t> vh = pick;
        std::sort(vh.begin(), vh.end(), [&](std::size_t a, std::size_t b) {
          if (inst.cost(a, l) != inst.cost(b, l)) return inst.cost(a, l) > inst.cost(b, l);
          return a < b;
        });
        std::optional<Rational> shortest;
        if (!vh.empty()) shortest = inst.cost(vh.back(), l);
        std::set<std::size_t> in_vh(vh.begin(), vh.end());
        const std::size_t pool = h - v;
        std::set<Rational> costs;
        Rational rest(0);
        for (std::size_t j = 0; j < n; ++j) {
          if (in_vh.count(j)) continue;
          rest += inst.cost(j, l);
          if (!shortest || inst.cost(j, l) < *shortest) costs.insert(inst.cost(j, l));
        }
        auto pool_ok = [&](const std::optional<Rational>& c) {
          if (pool == 0) return true;
          for (std::size_t j = 0; j < n; ++j)
            if (!in_vh.count(j) && (!c || inst.cost(j, l) > *c) && inst.cost(j, l) <= *shortest) return true;
          return false;
        };
        if (pool_ok(std::nullopt)) options_[l].push_back({h, vh, std::nullopt, 1});
        if (m > h) {
          for (const auto& c : costs) {
            if (!pool_ok(c)) continue;
            for (long a = 1; a <= static_cast<long>(n); ++a) {
              if (Rational(static_cast<long>(m - h)) * a * c > rest) break;
              options_[l].push_back({h, vh, c, a});
            }
          }
        }
        // next combination
        std::size_t k = v;
        while (k > 0 && pick[k - 1] == n - v + k - 1) --k;
        if (k == 0) break;
        ++pick[k - 1];
        for (std::size_t r = k; r < v; ++r) pick[r] = pick[r - 1] + 1;
      }
    }
  }
  choice_.assign(inst.num_types(), 0);
}

bool GuessStream::advance_skeleton() {
  for (;;) {
    if (done_) return false;
    if (!started_) {
      started_ = true;
      for (const auto& o : options_)
        if (o.empty()) {
          done_ = true;
          return false;
        }
    } else {
      std::size_t t = 0;
      while (t < choice_.size() && ++choice_[t] == options_[t].size()) choice_[t++] = 0;
      if (t == choice_.size()) {
        done_ = true;
        return false;
      }
    }
    current_.clear();
    std::set<std::size_t> seen;
    bool disjoint = true;
    for (std::size_t t = 0; t < choice_.size(); ++t) {
      current_.push_back(options_[t][choice_[t]]);
      for (auto j : current_.back().very_huge) disjoint = seen.insert(j).second && disjoint;
    }
    if (!disjoint) continue;
    if (prune && prune(current_)) continue;
    ++skeletons_;
    auto classes = large_classes(*inst_, eps_, current_);
    std::vector<PatternSpace> spaces;
    for (auto& c : classes) spaces.push_back(std::move(c.space));
    profiles_.emplace(std::move(spaces), inst_->num_jobs(), std::numeric_limits<std::size_t>::max());
    return true;
  }
}

std::optional<Guess> GuessStream::next() {
  for (;;) {
    if (!profiles_ && !advance_skeleton()) return std::nullopt;
    auto prof = profiles_->next();
    if (!prof) {
      profiles_.reset();
      continue;
    }
    if (yielded_ >= budget_) {
      budget_hit_ = true;
      done_ = true;
      profiles_.reset();
      return std::nullopt;
    }
    ++yielded_;
    return Guess{current_, std::move(*prof)};
  }
}

GuessStream enumerate_guesses(const Instance& inst, const Rational& p, const Rational& eps, std::size_t budget) {
  return GuessStream(inst, p, eps, budget);
}

CpModel build_cp_model(const Instance& inst, const Rational& p, const Rational& eps, const Guess& guess) {
  require_one_dim(inst);
  const std::size_t K = inst.num_types();
  if (guess.types.size() != K || guess.profile.machines.size() != K)
    throw GuessInconsistent("guess and instance disagree on the number of types");
  CpModel model;
  model.p = p;
  model.eps = eps;
  auto& lay = model.layout;
  const std::size_t M = inst.num_machines();
  lay.type_of.resize(M);
  lay.non_huge.assign(M, false);
  model.very_huge_machine.assign(inst.num_jobs(), std::nullopt);
  std::set<std::size_t> pinned;
  for (std::size_t l = 0; l < K; ++l) {
    const auto& g = guess.types[l];
    const std::size_t m = inst.types[l].machine_count;
    if (g.huge > m || g.very_huge.size() > g.huge) throw GuessInconsistent("too many huge machines");
    const std::size_t first = flat_index(inst, {l, 0});
    lay.first.push_back(first);
    lay.non_huge_count.push_back(m - g.huge);
    for (std::size_t r = 0; r < m; ++r) {
      lay.type_of[first + r] = l;
      lay.non_huge[first + r] = r < m - g.huge;
    }
    for (std::size_t k = 0; k < g.very_huge.size(); ++k) {
      const std::size_t j = g.very_huge[k];
      if (j >= inst.num_jobs() || !pinned.insert(j).second) throw GuessInconsistent("very huge jobs overlap");
      if (g.c_max && inst.cost(j, l) <= *g.c_max) throw GuessInconsistent("a very huge job is not longer than c_max");
      model.very_huge_machine[j] = first + (m - g.huge) + k;
      model.very_huge_cost += pow_coef(inst.cost(j, l), p);
    }
  }
  auto classes = large_classes(inst, eps, guess.types);

  auto& prob = model.problem;
  prob.dims = 1;
  prob.minimize_huge_cost = true;
  prob.capacity.assign(M, {Rational(0)});
  prob.small_bound.assign(M, Rational(0));
  model.large_load.assign(M, Rational(0));
  model.lower.assign(M, Rational(0));
  model.upper.assign(M, Rational(0));
  model.threshold.assign(M, Rational(0));
  std::vector<std::size_t> slot_class;
  std::vector<std::optional<std::size_t>> group_of(K);
  for (std::size_t l = 0; l < K; ++l) {
    const auto& g = guess.types[l];
    const auto& lc = classes[l];
    const std::size_t s = lay.non_huge_count[l];
    const auto& pats = guess.profile.machines[l];
    if (pats.size() != s) throw GuessInconsistent("profile does not cover the non-huge machines");
    for (std::size_t r = 0; r < s; ++r) {
      const std::size_t i = lay.first[l] + r;
      if (pats[r].size() != lc.space.classes.size()) throw GuessInconsistent("pattern does not match the size classes");
      for (std::size_t c = 0; c < pats[r].size(); ++c) {
        model.large_load[i] += Rational(static_cast<long>(pats[r][c])) * lc.space.classes[c].size[0];
        for (std::size_t k = 0; k < pats[r][c]; ++k) {
          prob.slot_machine.push_back(i);
          slot_class.push_back(c);
        }
      }
      if (g.c_max) {
        // true large load is below (1+eps) B_i, so this keeps the CP a relaxation
        Rational lb = g.alpha * *g.c_max - (1 + eps) * model.large_load[i];
        model.lower[i] = sgn(lb) > 0 ? lb : Rational(0);
        model.threshold[i] = lc.threshold;
        prob.small_bound[i] = lc.threshold;
      }
    }
    const std::size_t pool = g.huge - g.very_huge.size();
    if (pool > 0) {
      HugeGroup hg;
      for (std::size_t k = 0; k < pool; ++k) hg.machines.push_back(lay.first[l] + s + g.very_huge.size() + k);
      group_of[l] = prob.groups.size();
      prob.groups.push_back(std::move(hg));
      model.group_type.push_back(l);
    }
  }

  for (std::size_t j = 0; j < inst.num_jobs(); ++j) {
    if (pinned.count(j)) continue;
    JobOptions o;
    for (std::size_t l = 0; l < K; ++l) {
      const auto& g = guess.types[l];
      const Rational& c = inst.cost(j, l);
      const std::size_t s = lay.non_huge_count[l];
      if (g.c_max && s > 0 && c <= *g.c_max) {
        if (c <= classes[l].threshold) {
          for (std::size_t r = 0; r < s; ++r) {
            o.machines[lay.first[l] + r] = {c};
            model.upper[lay.first[l] + r] += c;
          }
        } else if (auto cls = classes[l].of_job[j]) {
          for (std::size_t t = 0; t < prob.slot_machine.size(); ++t)
            if (lay.type_of[prob.slot_machine[t]] == l && slot_class[t] == *cls) o.slots[t] = c;
        }
        continue;
      }
      if (group_of[l] && (!g.c_max || c > *g.c_max) && c <= inst.cost(g.very_huge.back(), l))
        o.huge[*group_of[l]] = pow_coef(c, p);
    }
    model.job_of.push_back(j);
    prob.jobs.push_back(std::move(o));
  }
  for (std::size_t i = 0; i < M; ++i) model.upper[i] = std::max(model.upper[i], model.lower[i]);
  return model;
}

std::optional<CpSolution> solve_slot_cp(const CpModel& model, std::optional<double> tol_override, double incumbent) {
  const auto& prob = model.problem;
  for (const auto& o : prob.jobs)
    if (o.machines.empty() && o.slots.empty() && o.huge.empty()) return std::nullopt;
  const auto vars = prob.lp_variables();
  const std::size_t N = vars.size();
  const std::size_t M = prob.num_machines();
  const double p = model.p.get_d();

  LinearProgram region;
  for (std::size_t k = 0; k < N; ++k) region.add_variable("x" + std::to_string(k));
  std::vector<std::vector<LinearTerm>> job_rows(prob.jobs.size()), slot_rows(prob.slot_machine.size()),
      group_rows(prob.groups.size()), cap_rows(M);
  std::vector<LinearTerm> huge_objective;
  for (std::size_t k = 0; k < N; ++k) {
    const auto& v = vars[k];
    job_rows[v.job].push_back({k, 1});
    const auto& o = prob.jobs[v.job];
    if (v.kind == Position::Kind::Machine) cap_rows[v.index].push_back({k, o.machines.at(v.index)[0]});
    else if (v.kind == Position::Kind::Slot) slot_rows[v.index].push_back({k, 1});
    else {
      group_rows[v.index].push_back({k, 1});
      huge_objective.push_back({k, o.huge.at(v.index)});
    }
  }
  for (auto& r : job_rows) region.add_constraint(std::move(r), Relation::Equal, 1);
  for (auto& r : slot_rows)
    if (!r.empty()) region.add_constraint(std::move(r), Relation::LessEqual, 1);
  for (std::size_t g = 0; g < group_rows.size(); ++g)
    if (!group_rows[g].empty())
      region.add_constraint(std::move(group_rows[g]), Relation::LessEqual,
                            Rational(static_cast<long>(prob.groups[g].machines.size())));
  std::vector<std::optional<std::size_t>> t_var(M);
  for (std::size_t i = 0; i < M; ++i) {
    if (cap_rows[i].empty()) continue;
    const std::size_t t = region.add_variable("t" + std::to_string(i));
    t_var[i] = t;
    auto row = std::move(cap_rows[i]);
    row.push_back({t, -1});
    region.add_constraint(std::move(row), Relation::LessEqual, 0);
    region.add_constraint({{t, 1}}, Relation::GreaterEqual, model.lower[i]);
    region.add_constraint({{t, 1}}, Relation::LessEqual, model.upper[i]);
  }

  // constant part: machines whose t is pinned to its lower bound, pinned jobs
  double constant = model.very_huge_cost.get_d();
  std::vector<double> B(M);
  for (std::size_t i = 0; i < M; ++i) {
    B[i] = model.large_load[i].get_d();
    if (model.layout.non_huge[i] && !t_var[i]) constant += pow_d(model.lower[i].get_d() + B[i], p);
  }
  std::vector<double> huge_coef(region.num_variables(), 0.0);
  for (const auto& term : huge_objective) huge_coef[term.var] = term.coef.get_d();

  ConvexObjective obj;
  obj.value = [&](std::span<const double> z) {
    double v = constant;
    for (std::size_t i = 0; i < M; ++i)
      if (t_var[i]) v += pow_d(z[*t_var[i]] + B[i], p);
    for (std::size_t k = 0; k < N; ++k) v += huge_coef[k] * z[k];
    return v;
  };
  obj.gradient = [&](std::span<const double> z, std::span<double> g) {
    for (std::size_t k = 0; k < g.size(); ++k) g[k] = huge_coef[k];
    for (std::size_t i = 0; i < M; ++i)
      if (t_var[i]) g[*t_var[i]] = p * pow_d(z[*t_var[i]] + B[i], p - 1);
  };

  CpSolution sol;
  if (tol_override) {
    sol.additive_tol = *tol_override;
  } else {
    std::optional<Rational> scale;
    for (std::size_t i = 0; i < M; ++i)
      if (model.layout.non_huge[i] && sgn(model.threshold[i]) > 0) {
        // threshold = eps * alpha * c_max
        Rational ac = model.threshold[i] / model.eps;
        if (!scale || ac < *scale) scale = ac;
      }
    double tol = scale ? pow_d(model.eps.get_d() * scale->get_d(), p) / 4 : 0.0;
    sol.additive_tol = std::max({tol, 1e-6 * incumbent, 1e-9});
  }

  if (region.num_variables() == 0) {
    if (!prob.jobs.empty()) return std::nullopt;
    sol.solve.status = ConvexStatus::Converged;
  } else {
    ConvexOptions opts;
    opts.additive_tol = sol.additive_tol;
    sol.solve = solve_convex_over_polytope(region, obj, opts);
    if (sol.solve.status == ConvexStatus::InfeasibleRegion) return std::nullopt;
  }
  sol.x.assign(sol.solve.x.begin(), sol.solve.x.begin() + static_cast<long>(N));
  sol.t_star.assign(M, Rational(0));
  std::vector<Rational> small(M, Rational(0));
  for (std::size_t k = 0; k < N; ++k) {
    const auto& v = vars[k];
    if (v.kind == Position::Kind::Machine) small[v.index] += prob.jobs[v.job].machines.at(v.index)[0] * sol.x[k];
    if (v.kind == Position::Kind::Huge) sol.huge_term += prob.jobs[v.job].huge.at(v.index) * sol.x[k];
  }
  double value = model.very_huge_cost.get_d() + sol.huge_term.get_d();
  for (std::size_t i = 0; i < M; ++i) {
    if (!model.layout.non_huge[i]) continue;
    sol.t_star[i] = std::max(model.lower[i], small[i]);
    value += pow_d(Rational(sol.t_star[i] + model.large_load[i]).get_d(), p);
  }
  sol.objective = value;
  return sol;
}

RoundingProblem build_lp_from_cp(const CpModel& model, const CpSolution& cp) {
  RoundingProblem prob = model.problem;
  for (std::size_t i = 0; i < prob.num_machines(); ++i)
    if (model.layout.non_huge[i]) prob.capacity[i] = {cp.t_star[i]};
  return prob;
}

std::optional<GuessEvaluation> evaluate_guess(const Instance& inst, const Rational& p, const Rational& eps,
                                              const Guess& guess, AuditLog* log,
                                              std::optional<double> tol_override, double incumbent) {
  CpModel model = build_cp_model(inst, p, eps, guess);
  auto cp = solve_slot_cp(model, tol_override, incumbent);
  if (!cp) return std::nullopt;
  audit(log, invariant::kConvexGap, cp->solve.status == ConvexStatus::Converged,
        "Frank-Wolfe gap " + std::to_string(cp->solve.duality_gap) + " above " + std::to_string(cp->additive_tol));
  if (!cp->solve.objective_history.empty()) {
    bool monotone = true;
    for (std::size_t k = 1; k < cp->solve.objective_history.size(); ++k)
      monotone = monotone && cp->solve.objective_history[k] <= cp->solve.objective_history[k - 1];
    audit(log, invariant::kConvexMonotone, monotone);
  }

  RoundingProblem lp = build_lp_from_cp(model, *cp);
  const LinearProgram first = lp.to_lp();
  audit(log, invariant::kCpPointFeasible, first.is_feasible(cp->x));
  RoundingOutcome out = iterative_round(lp, log);
  if (!out.feasible) return std::nullopt;
  audit(log, invariant::kLpBelowCp, out.steps.front().objective <= cp->huge_term,
        "LP optimum " + str(out.steps.front().objective) + " above CP pool cost " + str(cp->huge_term));
  auto positions = untangle(lp, out, log);

  const std::size_t M = inst.num_machines();
  const auto machines = all_machines(inst);
  GuessEvaluation ev;
  ev.schedule.assignment.resize(inst.num_jobs());
  std::vector<Rational> small(M, Rational(0));
  for (std::size_t j = 0; j < inst.num_jobs(); ++j)
    if (model.very_huge_machine[j]) ev.schedule.assignment[j] = machines[*model.very_huge_machine[j]];
  for (std::size_t v = 0; v < positions.size(); ++v) {
    const std::size_t j = model.job_of[v];
    ev.schedule.assignment[j] = machines[positions[v].machine];
    if (positions[v].kind == Position::Kind::Machine) small[positions[v].machine] += inst.cost(j, machines[positions[v].machine].type);
  }
  const auto loads = compute_loads(inst, ev.schedule);

  // per-machine bounds on the non-huge machines
  const Rational grow = (1 + eps) * (1 + 3 * eps);
  for (std::size_t i = 0; i < M; ++i) {
    if (!model.layout.non_huge[i]) continue;
    const Rational small_cap = cp->t_star[i] + 3 * model.threshold[i];
    audit(log, invariant::kSmallMachineBound, small[i] <= small_cap,
          "machine " + std::to_string(i) + " small load " + str(small[i]) + " above " + str(small_cap));
    const Rational total_cap = grow * (cp->t_star[i] + model.large_load[i]);
    audit(log, invariant::kSmallMachineBound, loads[i][0] <= total_cap,
          "machine " + std::to_string(i) + " load " + str(loads[i][0]) + " above " + str(total_cap));
  }

  // huge machines per type
  const auto lp_vars = lp.lp_variables();
  for (std::size_t l = 0; l < inst.num_types(); ++l) {
    const auto& g = guess.types[l];
    if (g.very_huge.empty()) continue;
    const Rational shortest = inst.cost(g.very_huge.back(), l);
    Rational pinned(0);
    for (auto j : g.very_huge) pinned += pow_coef(inst.cost(j, l), p);
    const Rational spare = pow_coef(2 * shortest, p);
    Rational relaxed(0);
    for (std::size_t k = 0; k < lp_vars.size(); ++k) {
      const auto& var = lp_vars[k];
      if (var.kind == Position::Kind::Huge && model.group_type[var.index] == l)
        relaxed += lp.jobs[var.job].huge.at(var.index) * out.first_solution->value[k];
    }
    Rational huge_cost(0);
    const std::size_t s = model.layout.non_huge_count[l];
    for (std::size_t r = s; r < inst.types[l].machine_count; ++r) {
      const std::size_t i = model.layout.first[l] + r;
      huge_cost += pow_coef(loads[i][0], p);
      if (r >= s + g.very_huge.size())
        audit(log, invariant::kImproperBound, loads[i][0] <= 2 * shortest,
              "pool machine " + std::to_string(i) + " load " + str(loads[i][0]) + " above twice " + str(shortest));
    }
    const Rational slack = is_integer(p) ? Rational(0) : pinned * ratio(1, 1000000);
    audit(log, invariant::kHugeCostBound, huge_cost <= pinned + spare + relaxed + slack,
          "type " + std::to_string(l) + " huge cost " + str(huge_cost) + " above " + str(pinned + spare + relaxed));
    if (g.very_huge.size() >= static_cast<std::size_t>(f_threshold(p, eps)))
      audit(log, invariant::kImproperBound,
            Rational(pinned + spare).get_d() <= pow_d(Rational(1 + eps).get_d(), p.get_d()) * pinned.get_d() * (1 + 1e-12));
  }

  auto np = norm_power_of_loads(loads, p);
  ev.cost = np.value;
  ev.exact = np.exact;
  const double bound = pow_d(grow.get_d(), p.get_d()) * (cp->objective + cp->additive_tol);
  audit(log, invariant::kTotalCostBound, ev.cost <= bound * (1 + 1e-9),
        "cost " + std::to_string(ev.cost) + " above " + std::to_string(bound));
  ev.cp_objective = cp->objective;
  ev.additive_tol = cp->additive_tol;
  ev.rounding_iterations = out.steps.size();
  for (const auto& st : out.steps) ev.lp_optima.push_back(st.objective);
  ev.forest_dot = out.forest.to_dot();
  return ev;
}

namespace {

// Cost every schedule matching the skeleton pays at least: the pinned jobs,
// alpha c_max on each non-huge machine and c_max on each pool machine.
double skeleton_bound(const Instance& inst, const Rational& p, const std::vector<TypeGuess>& types,
                      const PatternProfile* profile, const std::vector<LargeClasses>* classes) {
  const double pd = p.get_d();
  double lb = 0.0;
  for (std::size_t l = 0; l < types.size(); ++l) {
    const auto& g = types[l];
    for (auto j : g.very_huge) lb += pow_d(inst.cost(j, l).get_d(), pd);
    if (!g.c_max) continue;
    const double ac = Rational(g.alpha * *g.c_max).get_d();
    const std::size_t s = inst.types[l].machine_count - g.huge;
    for (std::size_t r = 0; r < s; ++r) {
      double load = ac;
      if (profile) {
        Rational b(0);
        const auto& pat = profile->machines[l][r];
        for (std::size_t c = 0; c < pat.size(); ++c)
          b += Rational(static_cast<long>(pat[c])) * (*classes)[l].space.classes[c].size[0];
        load = std::max(load, b.get_d());
      }
      lb += pow_d(load, pd);
    }
    lb += static_cast<double>(g.huge - g.very_huge.size()) * pow_d(g.c_max->get_d(), pd);
  }
  return lb;
}

void keep_best(LpNormResult& best, bool& have, GuessEvaluation&& ev) {
  if (have && !(ev.cost < best.cost)) return;
  have = true;
  best.schedule = std::move(ev.schedule);
  best.cost = ev.cost;
  best.exact = ev.exact;
  best.cp_objective = ev.cp_objective;
  best.additive_tol = ev.additive_tol;
  best.forest_dot = std::move(ev.forest_dot);
}

}  // namespace

LpNormResult lpnorm_ptas(const Instance& inst, const Rational& p, const Rational& eps_user, const LpNormMode& mode,
                         AuditLog* log) {
  require_one_dim(inst);
  if (p <= 1) throw BadExponent("p must exceed 1");
  if (sgn(eps_user) <= 0 || eps_user > 1) throw std::invalid_argument("eps must lie in (0, 1]");
  LpNormResult best;
  best.eps_int = calibrate_lp_eps(eps_user);
  const Rational& eps = best.eps_int;
  bool have = false;

  if (mode.kind == LpNormMode::Kind::Guided && mode.certificate) {
    try {
      Guess g = guess_from_schedule(inst, p, eps, *mode.certificate);
      best.guesses_tried = 1;
      if (auto ev = evaluate_guess(inst, p, eps, g, log, mode.cp_tol_override)) {
        best.rounding_iterations = ev->rounding_iterations;
        keep_best(best, have, std::move(*ev));
        return best;
      }
    } catch (const GuessInconsistent&) {
    }
    best.fell_back = true;
  }

  GuessStream stream(inst, p, eps, mode.budget);
  stream.prune = [&](const std::vector<TypeGuess>& types) {
    return have && skeleton_bound(inst, p, types, nullptr, nullptr) > best.cost * (1 + 1e-9);
  };
  while (auto g = stream.next()) {
    if (have) {
      auto classes = large_classes(inst, eps, g->types);
      if (skeleton_bound(inst, p, g->types, &g->profile, &classes) > best.cost * (1 + 1e-9)) continue;
    }
    auto ev = evaluate_guess(inst, p, eps, *g, log, mode.cp_tol_override, have ? best.cost : 0.0);
    if (!ev) continue;
    best.rounding_iterations += ev->rounding_iterations;
    keep_best(best, have, std::move(*ev));
  }
  best.guesses_tried += stream.yielded();
  best.skeletons = stream.skeletons();
  if (stream.budget_exhausted()) throw BudgetExhausted("guess budget of " + std::to_string(mode.budget) + " exhausted");
  if (!have) throw std::logic_error("no guess produced a schedule");
  return best;
}

}  // namespace typesched
