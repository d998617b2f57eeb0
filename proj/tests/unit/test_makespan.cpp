#include <doctest.h>

#include "support/instances.hpp"
#include "typesched/experiment.hpp"
#include "typesched/makespan.hpp"
#include "typesched/oracle.hpp"

#include <random>

using namespace typesched;
using typesched::testing::one_dim;

namespace {

DecisionMode guided(const Schedule& s) {
  DecisionMode m;
  m.kind = DecisionMode::Kind::Guided;
  m.certificate = s;
  return m;
}

DecisionMode full(std::size_t budget = 1000000) {
  DecisionMode m;
  m.kind = DecisionMode::Kind::Full;
  m.budget = budget;
  return m;
}

}  // namespace

TEST_CASE("slot LP of a single small job") {
  auto inst = one_dim({1}, {{1}});
  auto s = make_scaled_instance(inst, Rational(10), ratio(1, 2));
  auto cat = build_makespan_catalog(s);
  PatternProfile empty;
  empty.machines = {{Pattern(cat.spaces[0].classes.size(), 0)}};
  auto slp = build_slot_lp(s, cat, empty);
  CHECK(slp.lp.num_constraints() == 2);  // one job row, one capacity row
  auto r = solve_extreme_point(slp.lp);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.solution.value[0] == 1);
}

TEST_CASE("slot LP forces a large job into its slot") {
  auto inst = one_dim({1}, {{8}});
  auto s = make_scaled_instance(inst, Rational(10), ratio(1, 2));
  auto cat = build_makespan_catalog(s);
  PatternProfile prof;
  prof.machines = {{Pattern{1}}};
  auto slp = build_slot_lp(s, cat, prof);
  // n + s' + D*m' rows, less the capacity row left without variables
  CHECK(slp.lp.num_constraints() == 1 + 1);
  auto r = solve_extreme_point(slp.lp);
  REQUIRE(r.status == LpStatus::Optimal);
  REQUIRE(slp.problem.jobs[0].slots.count(0) == 1);
  CHECK(slp.problem.jobs[0].machines.empty());
}

TEST_CASE("decision at the cost of a single job") {
  auto inst = one_dim({1}, {{7}});
  auto r = makespan_decision(inst, Rational(7), ratio(1, 4), full());
  REQUIRE(r.status == DecisionStatus::Accepted);
  CHECK(r.makespan == 7);
  CHECK(makespan_decision(inst, Rational(6), ratio(1, 4), full()).status == DecisionStatus::Infeasible);
}

TEST_CASE("below the lower bound nothing is accepted") {
  auto inst = one_dim({1, 1}, {{4, 6}, {3, 9}});
  CHECK(makespan_lower_bound(inst) == 4);
  CHECK(makespan_upper_bound(inst) == 7);
  auto r = makespan_decision(inst, ratio(39, 10), ratio(1, 4), full());
  CHECK(r.status == DecisionStatus::Infeasible);
}

TEST_CASE("zero budget is reported as exhausted, not infeasible") {
  auto inst = one_dim({1, 1}, {{4, 6}, {3, 9}});
  auto r = makespan_decision(inst, Rational(8), ratio(1, 4), full(0));
  CHECK(r.status == DecisionStatus::BudgetExhausted);
  CHECK_THROWS_AS(makespan_ptas(inst, ratio(1, 2), full(0)), BudgetExhausted);
}

TEST_CASE("one machine is solved exactly") {
  auto inst = one_dim({1}, {{3}, {4}, {2}});
  auto r = makespan_ptas(inst, ratio(1, 2), full());
  CHECK(r.makespan == 9);
}

TEST_CASE("unit jobs on identical machines reach the balanced makespan") {
  for (std::size_t m = 1; m <= 3; ++m) {
    for (std::size_t n = 1; n <= 6; ++n) {
      CAPTURE(m);
      CAPTURE(n);
      auto inst = one_dim({m}, std::vector<std::vector<long>>(n, {1}));
      auto opt = exact_solve(inst, Objective::makespan());
      const long balanced = static_cast<long>((n + m - 1) / m);
      CHECK(*opt.optimum == balanced);
      auto r = makespan_ptas(inst, ratio(1, 2), guided(opt.witness));
      CHECK(r.makespan == balanced);
    }
  }
}

TEST_CASE("guided decision at the optimum respects the bound factor") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 25; ++trial) {
    GeneratorSpec spec;
    spec.jobs = bounded_draw(rng(), 3, 6);
    spec.machines = {bounded_draw(rng(), 1, 2), bounded_draw(rng(), 1, 2)};
    spec.dims = bounded_draw(rng(), 1, 2);
    auto inst = generate_instance(spec, rng());
    auto opt = exact_solve(inst, Objective::makespan());
    const Rational eps = ratio(1, 8);
    AuditLog log;
    auto d = makespan_decision(inst, *opt.optimum, eps, guided(opt.witness), &log);
    REQUIRE(d.status == DecisionStatus::Accepted);
    CHECK(d.makespan <= makespan_bound_factor(eps, inst.dims) * *opt.optimum);
    CHECK(evaluate_makespan(inst, *d.schedule) == d.makespan);
    CHECK(log.clean());
  }
}

TEST_CASE("full-mode decisions are monotone in the target") {
  auto inst = one_dim({2, 1}, {{3, 5}, {4, 2}, {6, 6}, {2, 7}});
  const Rational eps = ratio(1, 4);
  bool accepted = false;
  for (long k = 4; k <= 16; ++k) {
    auto r = makespan_decision(inst, Rational(k), eps, full());
    REQUIRE(r.status != DecisionStatus::BudgetExhausted);
    if (accepted) CHECK(r.status == DecisionStatus::Accepted);
    accepted = accepted || r.status == DecisionStatus::Accepted;
  }
  CHECK(accepted);
}

TEST_CASE("ptas against the oracle in both modes") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 12; ++trial) {
    GeneratorSpec spec;
    spec.jobs = bounded_draw(rng(), 2, 4);
    spec.machines = {bounded_draw(rng(), 1, 2), 1};
    auto inst = generate_instance(spec, rng());
    auto opt = exact_solve(inst, Objective::makespan());
    AuditLog log;
    auto g = makespan_ptas(inst, ratio(1, 2), guided(opt.witness), &log);
    CHECK(g.makespan <= ratio(3, 2) * *opt.optimum);
    auto f = makespan_ptas(inst, ratio(1, 2), full(), &log);
    CHECK(f.makespan <= ratio(3, 2) * *opt.optimum);
    CHECK(f.makespan >= *opt.optimum);
    CHECK(log.clean());
  }
}
