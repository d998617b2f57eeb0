#pragma once

#include <json.hpp>

#include <cstddef>
#include <map>
#include <string>
#include <string_view>

namespace typesched {

struct InvariantTally {
  std::size_t checks = 0;
  std::size_t violations = 0;
  std::string first_violation;
};

// Counts runtime checks of the algorithmic invariants. The solvers record
// into it when one is supplied; a null AuditLog* disables recording.
class AuditLog {
 public:
  void record(std::string_view invariant, bool ok, std::string_view detail = {});
  void merge(const AuditLog& other);

  bool clean() const;
  std::size_t checks(std::string_view invariant) const;
  std::size_t violations(std::string_view invariant) const;
  const std::map<std::string, InvariantTally, std::less<>>& tallies() const { return tallies_; }

  nlohmann::json to_json() const;

 private:
  std::map<std::string, InvariantTally, std::less<>> tallies_;
};

inline void audit(AuditLog* log, std::string_view invariant, bool ok, std::string_view detail = {}) {
  if (log) log->record(invariant, ok, detail);
}

// Invariant names shared by the solvers, the CLI and the acceptance suite.
namespace invariant {
inline constexpr std::string_view kExtremePointSparsity = "extreme_point_sparsity";
inline constexpr std::string_view kFractionalCount = "fractional_count";
inline constexpr std::string_view kCountingCase = "counting_case_found";
inline constexpr std::string_view kReductionFeasible = "reduction_feasible";
inline constexpr std::string_view kRoundingOvershoot = "rounding_overshoot";
inline constexpr std::string_view kUntangleOvershoot = "untangle_overshoot";
inline constexpr std::string_view kForestStructure = "forest_structure";
inline constexpr std::string_view kArtificialCostConvex = "artificial_cost_convex";
inline constexpr std::string_view kPlacementCompatible = "placement_compatible";
inline constexpr std::string_view kArtLpSeedFeasible = "art_lp_seed_feasible";
inline constexpr std::string_view kArtLpSparsity = "art_lp_sparsity";
inline constexpr std::string_view kMakespanBound = "makespan_bound";
inline constexpr std::string_view kLpObjectiveMonotone = "lp_objective_monotone";
inline constexpr std::string_view kCpPointFeasible = "cp_point_feasible_for_lp";
inline constexpr std::string_view kLpBelowCp = "lp_optimum_below_cp";
inline constexpr std::string_view kSmallMachineBound = "small_machine_bound";
inline constexpr std::string_view kHugeCostBound = "huge_machine_cost_bound";
inline constexpr std::string_view kImproperBound = "improper_machine_bound";
inline constexpr std::string_view kTotalCostBound = "total_cost_bound";
inline constexpr std::string_view kConvexGap = "convex_gap";
inline constexpr std::string_view kConvexMonotone = "convex_monotone";
}  // namespace invariant

}  // namespace typesched
