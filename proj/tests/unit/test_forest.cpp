#include <doctest.h>

#include "support/nested_tree.hpp"
#include "typesched/forest.hpp"
#include "typesched/rounding.hpp"

#include <set>

using namespace typesched;

using namespace typesched::testing;


TEST_CASE("five-leaf nested tree structure") {
  auto f = nested_tree();
  CHECK(f.validate().empty());
  auto roots = f.roots();
  REQUIRE(roots.size() == 1);
  CHECK(f.leaves_of(roots[0]).size() == 5);
  CHECK(f.slots_of(roots[0]).size() == 4);
  CHECK(f.contains(roots[0], 2));
  CHECK_FALSE(f.contains(5, 3));
}

TEST_CASE("every withheld leaf leaves an assignment of the rest to the slots") {
  auto f = nested_tree();
  auto p = nested_tree_problem();
  const std::size_t root = f.roots()[0];
  const Position parent{Position::Kind::Machine, 0, 0};
  for (std::size_t withheld = 0; withheld < 5; ++withheld) {
    CAPTURE(withheld);
    std::vector<std::optional<Position>> out(f.size());
    AuditLog log;
    REQUIRE_NOTHROW(place_tree(p, f, root, parent, withheld, out, &log));
    CHECK(log.clean());
    CHECK(out[withheld] == parent);
    std::set<std::size_t> used;
    for (std::size_t j = 0; j < 5; ++j) {
      if (j == withheld) continue;
      REQUIRE(out[j]);
      REQUIRE(out[j]->kind == Position::Kind::Slot);
      CHECK(p.jobs[j].slots.count(out[j]->index) == 1);
      used.insert(out[j]->index);
    }
    CHECK(used.size() == 4);
  }
}

TEST_CASE("validate catches broken structures") {
  SubsumptionForest f(3);
  f.merge(0, 1, 0, halves(), {});
  CHECK(f.validate().empty());
  SubsumptionForest bad(2);
  bad.merge(0, 1, 0, {{0, {ratio(1, 2), ratio(1, 3)}}}, {});
  CHECK_FALSE(bad.validate().empty());
}

TEST_CASE("forest as graphviz") {
  SubsumptionForest f(3);
  f.merge(0, 1, 4, halves(), {});
  auto dot = f.to_dot();
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("j0 -> s4") != std::string::npos);
  CHECK(dot.find("j1 -> s4") != std::string::npos);
  CHECK(dot.find("s4 -> a3") != std::string::npos);
  CHECK(dot.find("j2") != std::string::npos);
}
