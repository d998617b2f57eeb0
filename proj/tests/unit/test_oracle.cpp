#include <doctest.h>

#include "support/instances.hpp"
#include "typesched/experiment.hpp"
#include "typesched/oracle.hpp"

#include <cmath>
#include <random>

using namespace typesched;
using typesched::testing::one_dim;

namespace {

// Number of ways to spread n labelled jobs over machines of several types,
// identical within a type: sum over type choices of prod S(|J_l|, <= m_l).
std::size_t canonical_count(std::size_t n, const std::vector<std::size_t>& machines) {
  // partitions of k labelled items into at most m unlabelled blocks
  auto bell_upto = [](std::size_t k, std::size_t m) {
    std::vector<std::vector<std::size_t>> s(k + 1, std::vector<std::size_t>(k + 1, 0));
    s[0][0] = 1;
    for (std::size_t i = 1; i <= k; ++i)
      for (std::size_t j = 1; j <= i; ++j) s[i][j] = j * s[i - 1][j] + s[i - 1][j - 1];
    std::size_t total = 0;
    for (std::size_t j = 0; j <= std::min(k, m); ++j) total += s[k][j];
    return total;
  };
  const std::size_t K = machines.size();
  std::size_t total = 0;
  std::vector<std::size_t> type_of(n, 0);
  for (;;) {
    std::vector<std::size_t> sizes(K, 0);
    for (auto t : type_of) ++sizes[t];
    std::size_t prod = 1;
    for (std::size_t t = 0; t < K; ++t) prod *= bell_upto(sizes[t], machines[t]);
    total += prod;
    std::size_t i = 0;
    while (i < n && ++type_of[i] == K) type_of[i++] = 0;
    if (i == n) break;
  }
  return total;
}

}  // namespace

TEST_CASE("single job is placed on the first machine") {
  auto inst = one_dim({2}, {{5}});
  auto r = exact_solve(inst, Objective::makespan());
  CHECK(*r.optimum == 5);
  CHECK(r.witness.assignment[0] == MachineId{0, 0});
}

TEST_CASE("two unit jobs split under the 2-norm") {
  auto inst = one_dim({2}, {{1}, {1}});
  auto r = exact_solve(inst, Objective::lp_norm(Rational(2)));
  CHECK(*r.optimum == 2);
  CHECK(r.witness.assignment[0] != r.witness.assignment[1]);
}

TEST_CASE("three jobs on two single-machine types") {
  auto inst = one_dim({1, 1}, {{1, 10}, {10, 1}, {5, 5}});
  auto r = exact_solve(inst, Objective::makespan());
  CHECK(*r.optimum == 6);
  CHECK(r.witness.assignment[0].type == 0);
  CHECK(r.witness.assignment[1].type == 1);
}

TEST_CASE("canonical enumeration visits every assignment up to symmetry once") {
  OracleOptions o;
  o.prune = false;
  const std::vector<std::vector<std::size_t>> shapes{{1}, {2}, {3}, {2, 1}, {2, 2}, {1, 1, 1}};
  for (const auto& shape : shapes) {
    for (std::size_t n = 1; n <= 4; ++n) {
      CAPTURE(n);
      auto inst = one_dim(shape, std::vector<std::vector<long>>(n, std::vector<long>(shape.size(), 1)));
      auto r = exact_solve(inst, Objective::makespan(), o);
      CHECK(r.explored == canonical_count(n, shape));
    }
  }
}

TEST_CASE("pruning does not change the optimum") {
  std::mt19937_64 rng(17);
  OracleOptions plain;
  plain.prune = false;
  for (int trial = 0; trial < 40; ++trial) {
    GeneratorSpec spec;
    spec.jobs = bounded_draw(rng(), 1, 6);
    spec.machines = {bounded_draw(rng(), 1, 3), bounded_draw(rng(), 1, 2)};
    spec.dims = bounded_draw(rng(), 1, 2);
    auto inst = generate_instance(spec, rng());
    auto a = exact_solve(inst, Objective::makespan());
    auto b = exact_solve(inst, Objective::makespan(), plain);
    CHECK(*a.optimum == *b.optimum);
    CHECK(evaluate_makespan(inst, a.witness) == *a.optimum);
    if (inst.dims == 1) {
      auto c = exact_solve(inst, Objective::lp_norm(Rational(3)));
      auto d = exact_solve(inst, Objective::lp_norm(Rational(3)), plain);
      CHECK(*c.optimum == *d.optimum);
      CHECK(*evaluate_lp_norm_pow(inst, c.witness, Rational(3)).exact == *c.optimum);
    }
  }
}

TEST_CASE("optimum bounds random schedules") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    GeneratorSpec spec;
    spec.jobs = bounded_draw(rng(), 2, 7);
    spec.machines = {bounded_draw(rng(), 1, 3), bounded_draw(rng(), 1, 2)};
    auto inst = generate_instance(spec, rng());
    auto mk = exact_solve(inst, Objective::makespan());
    auto l2 = exact_solve(inst, Objective::lp_norm(Rational(2)));
    auto machines = all_machines(inst);
    for (int k = 0; k < 50; ++k) {
      Schedule s;
      for (std::size_t j = 0; j < inst.num_jobs(); ++j)
        s.assignment.push_back(machines[bounded_draw(rng(), 0, machines.size() - 1)]);
      CHECK(evaluate_makespan(inst, s) >= *mk.optimum);
      CHECK(*evaluate_lp_norm_pow(inst, s, Rational(2)).exact >= *l2.optimum);
    }
  }
}

TEST_CASE("non-integer exponent uses doubles") {
  auto inst = one_dim({2}, {{1}, {2}});
  auto r = exact_solve(inst, Objective::lp_norm(ratio(5, 2)));
  CHECK_FALSE(r.optimum);
  CHECK(r.value == doctest::Approx(1.0 + std::pow(2.0, 2.5)));
}

TEST_CASE("caps are enforced") {
  auto inst = one_dim({6}, {{1}});
  CHECK_THROWS_AS(exact_solve(inst, Objective::makespan()), TooLarge);
  auto many = one_dim({1}, std::vector<std::vector<long>>(9, {1}));
  CHECK_THROWS_AS(exact_solve(many, Objective::makespan()), TooLarge);
}
