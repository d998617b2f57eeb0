#include <doctest.h>

#include "support/instances.hpp"
#include "typesched/oracle.hpp"
#include "typesched/patterns.hpp"

#include <set>

using namespace typesched;
using typesched::testing::one_dim;

namespace {

std::vector<PatternProfile> drain(ProfileEnumerator& e) {
  std::vector<PatternProfile> out;
  while (auto p = e.next()) out.push_back(*p);
  return out;
}

}  // namespace

TEST_CASE("no large job yields one empty profile") {
  auto inst = one_dim({2, 1}, {{1, 1}, {2, 1}});
  auto s = make_scaled_instance(inst, Rational(100), ratio(1, 2));
  auto cat = build_makespan_catalog(s);
  ProfileEnumerator e(cat.spaces, inst.num_jobs(), 1000);
  auto all = drain(e);
  REQUIRE(all.size() == 1);
  CHECK(all[0].total_slots() == 0);
  CHECK_FALSE(e.budget_exhausted());
}

TEST_CASE("one machine and one large job yields two profiles") {
  auto inst = one_dim({1}, {{8}});
  auto s = make_scaled_instance(inst, Rational(10), ratio(1, 2));
  auto cat = build_makespan_catalog(s);
  ProfileEnumerator e(cat.spaces, 1, 1000);
  auto all = drain(e);
  REQUIRE(all.size() == 2);
  std::set<std::size_t> slots{all[0].total_slots(), all[1].total_slots()};
  CHECK(slots == std::set<std::size_t>{0, 1});
}

TEST_CASE("profiles respect the slot cap, availability and capacity") {
  auto inst = one_dim({2, 2}, {{6, 9}, {7, 5}, {8, 8}, {5, 6}, {1, 9}});
  const Rational eps = ratio(1, 2);
  auto s = make_scaled_instance(inst, Rational(10), eps);
  auto cat = build_makespan_catalog(s);
  ProfileEnumerator e(cat.spaces, inst.num_jobs(), 1000000);
  auto all = drain(e);
  CHECK(all.size() > 1);
  std::set<PatternProfile> distinct(all.begin(), all.end());
  CHECK(distinct.size() == all.size());
  for (const auto& prof : all) {
    CHECK(prof.total_slots() <= inst.num_jobs());
    CHECK(profile_fits(cat.spaces, prof));
    for (std::size_t t = 0; t < prof.machines.size(); ++t) {
      for (const auto& pat : prof.machines[t]) CHECK(slot_count(pat) <= s.max_large_per_machine());
      std::vector<std::size_t> used(cat.spaces[t].classes.size(), 0);
      for (const auto& pat : prof.machines[t])
        for (std::size_t c = 0; c < pat.size(); ++c) used[c] += pat[c];
      for (std::size_t c = 0; c < used.size(); ++c) CHECK(used[c] <= cat.spaces[t].classes[c].available);
    }
  }
}

TEST_CASE("budget stops the enumeration") {
  auto inst = one_dim({2, 2}, {{6, 9}, {7, 5}, {8, 8}, {5, 6}});
  auto s = make_scaled_instance(inst, Rational(10), ratio(1, 2));
  auto cat = build_makespan_catalog(s);
  ProfileEnumerator e(cat.spaces, inst.num_jobs(), 3);
  CHECK(drain(e).size() == 3);
  CHECK(e.budget_exhausted());
  ProfileEnumerator none(cat.spaces, inst.num_jobs(), 0);
  CHECK_FALSE(none.next());
  CHECK(none.budget_exhausted());
}

TEST_CASE("profile of a schedule") {
  auto inst = one_dim({2}, {{1}, {8}});
  auto s = make_scaled_instance(inst, Rational(10), ratio(1, 2));
  auto cat = build_makespan_catalog(s);
  Schedule small_only{{{0, 0}, {0, 0}}};
  auto small = make_scaled_instance(inst, Rational(100), ratio(1, 2));
  auto small_cat = build_makespan_catalog(small);
  CHECK(profile_from_schedule(small, small_cat, small_only).total_slots() == 0);

  Schedule sched{{{0, 0}, {0, 1}}};
  auto prof = profile_from_schedule(s, cat, sched);
  CHECK(prof.total_slots() == 1);
  auto counts = prof.counts(0);
  CHECK(counts.size() == 2);  // the empty pattern and {q:1}

  // a large job whose rounded size exceeds one has no class
  auto tight = make_scaled_instance(inst, Rational(4), ratio(1, 2));
  auto tight_cat = build_makespan_catalog(tight);
  CHECK_THROWS_AS(profile_from_schedule(tight, tight_cat, sched), PatternOverflow);
}

TEST_CASE("the enumerator produces every schedule-induced profile") {
  auto inst = one_dim({2, 1}, {{6, 9}, {7, 5}, {8, 8}, {5, 6}});
  const Rational eps = ratio(1, 2);
  auto opt = exact_solve(inst, Objective::makespan());
  auto s = make_scaled_instance(inst, *opt.optimum, eps);
  auto cat = build_makespan_catalog(s);
  auto target = profile_from_schedule(s, cat, opt.witness);
  ProfileEnumerator e(cat.spaces, inst.num_jobs(), 1000000);
  bool found = false;
  while (auto p = e.next()) found = found || *p == target;
  CHECK(found);
}
