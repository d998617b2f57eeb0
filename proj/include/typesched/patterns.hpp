#pragma once

#include "typesched/scaling.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace typesched {

// Multiplicity of each size class of one machine type on a single machine.
using Pattern = std::vector<std::size_t>;

struct SizeClass {
  std::vector<Rational> size;  // per dimension
  std::size_t available = 0;   // jobs that take this size on the type
};

// Everything needed to enumerate the patterns of one machine type.
struct PatternSpace {
  std::vector<SizeClass> classes;
  std::size_t machines = 0;
  std::size_t max_slots = 0;
  std::vector<Rational> capacity;  // per dimension
};

// One pattern per machine of each type, kept sorted so that profiles that
// differ only by a permutation of identical machines compare equal.
struct PatternProfile {
  std::vector<std::vector<Pattern>> machines;  // [type][machine]

  std::size_t total_slots() const;
  std::map<Pattern, std::size_t> counts(std::size_t type) const;
  auto operator<=>(const PatternProfile&) const = default;
};

class PatternOverflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::size_t slot_count(const Pattern& p);
Rational pattern_mass(const PatternSpace& space, const Pattern& p, std::size_t dim);
bool pattern_fits(const PatternSpace& space, const Pattern& p);
bool profile_fits(const std::vector<PatternSpace>& spaces, const PatternProfile& profile);

// All patterns of a type (the empty one included) respecting the slot cap,
// per-class availability and capacity.
std::vector<Pattern> feasible_patterns(const PatternSpace& space);

// Lazily walks the product over types of per-type pattern multisets. Within a
// type the slots of a class never outnumber its jobs; across types the total
// slot count never exceeds `slot_cap`. Yields at most `budget` profiles.
class ProfileEnumerator {
 public:
  ProfileEnumerator(std::vector<PatternSpace> spaces, std::size_t slot_cap, std::size_t budget);

  std::optional<PatternProfile> next();
  // true when next() stopped because the budget ran out with profiles left
  bool budget_exhausted() const { return budget_hit_; }
  std::size_t yielded() const { return yielded_; }

 private:
  bool advance();
  std::vector<PatternSpace> spaces_;
  std::vector<std::vector<std::vector<Pattern>>> per_type_;  // [type][choice] -> machines
  std::vector<std::size_t> choice_;
  std::size_t slot_cap_;
  std::size_t budget_;
  std::size_t yielded_ = 0;
  bool started_ = false;
  bool done_ = false;
  bool budget_hit_ = false;
};

// Builds the profile induced by assigning the listed large jobs (by class) to
// each machine. Throws PatternOverflow when a machine exceeds the slot cap.
PatternProfile profile_from_classes(const std::vector<PatternSpace>& spaces,
                                    const std::vector<std::vector<std::vector<std::size_t>>>& machine_classes);

// Size classes of the makespan decision at one target T.
struct MakespanCatalog {
  std::vector<LargeJobType> all;                           // Q
  std::vector<std::vector<std::size_t>> type_classes;      // [type] -> indices into all
  std::vector<std::vector<std::optional<std::size_t>>> job_class;  // [job][type] -> local class
  std::vector<PatternSpace> spaces;
};

MakespanCatalog build_makespan_catalog(const ScaledInstance& scaled);

// Profile the schedule induces at the scaled target. Throws PatternOverflow
// when a machine holds more than floor(D/eps) large jobs or a job whose
// rounded size exceeds 1.
PatternProfile profile_from_schedule(const ScaledInstance& scaled, const MakespanCatalog& catalog,
                                     const Schedule& s);

}  // namespace typesched
