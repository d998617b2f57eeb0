#include <doctest.h>

#include "typesched/rounding.hpp"

#include <algorithm>
#include <array>
#include <random>

using namespace typesched;

namespace {

// Random assignment problem around a planted integral solution so the first
// LP is feasible; capacities are tight to force fractional vertices.
RoundingProblem planted_problem(std::mt19937_64& rng, std::size_t dims, bool with_groups) {
  auto pick = [&](long lo, long hi) { return lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1)); };
  RoundingProblem p;
  p.dims = dims;
  const std::size_t machines = static_cast<std::size_t>(pick(1, 3));
  const std::size_t slots = static_cast<std::size_t>(pick(2, 5));
  const std::size_t jobs = static_cast<std::size_t>(pick(5, 10));
  const Rational bound = ratio(1, 4);
  p.small_bound.assign(machines, bound);
  for (std::size_t s = 0; s < slots; ++s) p.slot_machine.push_back(static_cast<std::size_t>(pick(0, static_cast<long>(machines) - 1)));
  if (with_groups) p.groups.push_back({{static_cast<std::size_t>(pick(0, static_cast<long>(machines) - 1))}});
  p.jobs.resize(jobs);
  p.capacity.assign(machines, std::vector<Rational>(dims, Rational(0)));
  std::vector<bool> slot_used(slots, false);
  std::size_t group_used = 0;
  for (std::size_t j = 0; j < jobs; ++j) {
    auto& o = p.jobs[j];
    for (std::size_t i = 0; i < machines; ++i) {
      if (pick(0, 7) == 0) continue;
      std::vector<Rational> c;
      for (std::size_t d = 0; d < dims; ++d) c.push_back(ratio(pick(1, 8), 32));
      o.machines[i] = c;
    }
    for (std::size_t s = 0; s < slots; ++s)
      if (pick(0, 1) == 0) o.slots[s] = Rational(pick(1, 9));
    if (with_groups && pick(0, 2) == 0) o.huge[0] = Rational(pick(1, 20));
    // planted position
    std::vector<int> choices;
    if (!o.machines.empty()) choices.push_back(0);
    for (const auto& [s, w] : o.slots)
      if (!slot_used[s]) choices.push_back(1);
    if (!o.huge.empty() && group_used < p.groups.size() * 1) choices.push_back(2);
    if (choices.empty()) {
      std::vector<Rational> c(dims, ratio(1, 32));
      o.machines[0] = c;
      choices.push_back(0);
    }
    int kind = choices[static_cast<std::size_t>(pick(0, static_cast<long>(choices.size()) - 1))];
    if (kind == 0) {
      auto it = o.machines.begin();
      std::advance(it, pick(0, static_cast<long>(o.machines.size()) - 1));
      for (std::size_t d = 0; d < dims; ++d) p.capacity[it->first][d] += it->second[d];
    } else if (kind == 1) {
      for (const auto& [s, w] : o.slots)
        if (!slot_used[s]) {
          slot_used[s] = true;
          break;
        }
    } else {
      ++group_used;
    }
  }
  for (auto& cap : p.capacity)
    for (auto& c : cap) c += ratio(pick(0, 1), 64);
  p.minimize_huge_cost = with_groups;
  return p;
}

}  // namespace

TEST_CASE("integral first vertex needs no reduction") {
  RoundingProblem p;
  p.dims = 1;
  p.capacity = {{Rational(1)}};
  p.small_bound = {ratio(1, 2)};
  p.jobs.resize(1);
  p.jobs[0].machines[0] = {ratio(1, 2)};
  AuditLog log;
  auto out = iterative_round(p, &log);
  REQUIRE(out.feasible);
  CHECK(out.steps.size() == 1);
  CHECK(out.steps[0].reduction == '-');
  CHECK(out.position[0] == Position{Position::Kind::Machine, 0, 0});
  CHECK(log.clean());
}

TEST_CASE("infeasible first LP") {
  RoundingProblem p;
  p.dims = 1;
  p.capacity = {{ratio(1, 4)}};
  p.small_bound = {ratio(1, 2)};
  p.jobs.resize(1);
  p.jobs[0].machines[0] = {ratio(1, 2)};
  CHECK_FALSE(iterative_round(p, nullptr).feasible);
}

TEST_CASE("two half-assigned jobs in one slot merge at the mean cost") {
  // costs 1/2 and 1/4 against capacity 3/8 make x = 1/2 everywhere a vertex
  RoundingProblem p;
  p.dims = 1;
  p.capacity = {{ratio(3, 8)}, {Rational(0)}};
  p.small_bound = {ratio(1, 2), ratio(1, 2)};
  p.slot_machine = {1};
  p.jobs.resize(2);
  p.jobs[0].machines[0] = {ratio(1, 2)};
  p.jobs[1].machines[0] = {ratio(1, 4)};
  for (auto& o : p.jobs) o.slots[0] = 1;
  // steer to the fractional vertex x = 1/2 everywhere
  p.reduction_order = {'b', 'a', 'c'};
  bool merged = false;
  for (std::uint64_t seed = 1; seed < 40 && !merged; ++seed) {
    p.vertex_seed = seed;
    AuditLog log;
    auto out = iterative_round(p, &log);
    REQUIRE(out.feasible);
    CHECK(log.clean());
    if (out.forest.size() == 3) {
      merged = true;
      CHECK(out.node_options[2].machines.at(0)[0] == ratio(3, 8));
      CHECK(out.forest.node(2).disposed_slot == 0);
      auto pos = untangle(p, out, &log);
      CHECK(pos[0].kind != pos[1].kind);
      CHECK(log.clean());
    }
  }
  CHECK(merged);
}

TEST_CASE("foreign slot base case of the tree placement") {
  // j0 merges j1, j2 in slot 0; j0 then sits in slot 1 which only j1 fits
  RoundingProblem p;
  p.dims = 1;
  p.slot_machine = {0, 1};
  p.capacity = {{Rational(0)}, {Rational(0)}};
  p.small_bound = {ratio(1, 2), ratio(1, 2)};
  p.jobs.resize(2);
  p.jobs[0].slots = {{0, Rational(1)}, {1, Rational(1)}};
  p.jobs[1].slots = {{0, Rational(1)}};
  SubsumptionForest f(2);
  f.merge(0, 1, 0, {}, {});
  std::vector<std::optional<Position>> out(2);
  place_tree(p, f, 2, Position{Position::Kind::Slot, 1, 1}, 0, out, nullptr);
  CHECK(out[0] == Position{Position::Kind::Slot, 1, 1});
  CHECK(out[1] == Position{Position::Kind::Slot, 0, 0});
  CHECK_THROWS_AS(place_tree(p, f, 2, Position{Position::Kind::Slot, 1, 1}, 1, out, nullptr), ForestInconsistent);
}

TEST_CASE("all huge variables integral gives no improper machine") {
  RoundingProblem p;
  p.dims = 1;
  p.minimize_huge_cost = true;
  p.groups = {{{0, 1}}};
  p.capacity = {{Rational(0)}, {Rational(0)}, {Rational(1)}};
  p.small_bound = {Rational(1), Rational(1), Rational(1)};
  p.jobs.resize(2);
  p.jobs[0].huge[0] = 4;
  p.jobs[1].huge[0] = 9;
  AuditLog log;
  auto out = iterative_round(p, &log);
  REQUIRE(out.feasible);
  CHECK(out.position[0]->machine != out.position[1]->machine);
  for (const auto& s : out.steps) CHECK(s.reduction != 'c');
  CHECK(log.clean());
}

TEST_CASE("two half-assigned huge jobs share the improper machine") {
  // budget one huge machine, two jobs that each fit half of a small machine
  RoundingProblem p;
  p.dims = 1;
  p.minimize_huge_cost = true;
  p.groups = {{{1}}};
  p.capacity = {{ratio(1, 2)}, {Rational(0)}};
  p.small_bound = {Rational(1), Rational(1)};
  p.jobs.resize(2);
  for (auto& o : p.jobs) {
    o.machines[0] = {ratio(1, 2)};
    o.huge[0] = 1;
  }
  AuditLog log;
  auto out = iterative_round(p, &log);
  REQUIRE(out.feasible);
  CHECK(log.clean());
  const bool improper = std::any_of(out.steps.begin(), out.steps.end(), [](const auto& s) { return s.reduction == 'c'; });
  if (improper) {
    CHECK(out.position[0] == Position{Position::Kind::Huge, 0, 1});
    CHECK(out.position[1] == Position{Position::Kind::Huge, 0, 1});
  }
  auto pos = untangle(p, out, &log);
  CHECK(log.clean());
}

TEST_CASE("random planted problems keep every invariant") {
  std::mt19937_64 rng(424242);
  std::map<char, int> reductions;
  int untangled_artificial = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t dims = trial % 3 == 0 ? 2 : 1;
    auto p = planted_problem(rng, dims, trial % 4 == 1);
    if (!p.minimize_huge_cost) p.vertex_seed = rng() | 1;
    static const std::array<std::array<char, 3>, 3> orders{{{'a', 'b', 'c'}, {'b', 'a', 'c'}, {'c', 'b', 'a'}}};
    p.reduction_order = orders[static_cast<std::size_t>(trial / 4) % 3];
    AuditLog log;
    auto out = iterative_round(p, &log);
    CAPTURE(trial);
    REQUIRE(out.feasible);
    for (const auto& s : out.steps) ++reductions[s.reduction];
    auto pos = untangle(p, out, &log);
    if (out.forest.size() > p.jobs.size()) ++untangled_artificial;
    CHECK(log.clean());
    if (!log.clean()) MESSAGE(log.to_json().dump());
    // every slot holds at most one job
    std::map<std::size_t, int> per_slot;
    for (const auto& x : pos)
      if (x.kind == Position::Kind::Slot) CHECK(++per_slot[x.index] == 1);
    CHECK(out.steps.size() <= p.num_machines() + p.slot_machine.size() + p.groups.size() + 1);
  }
  MESSAGE("reductions a=" << reductions['a'] << " b=" << reductions['b'] << " c=" << reductions['c']
          << " artificial trees=" << untangled_artificial);
  CHECK(reductions['a'] > 0);
  CHECK(reductions['b'] > 0);
  CHECK(reductions['c'] > 0);
  CHECK(untangled_artificial > 0);
}
