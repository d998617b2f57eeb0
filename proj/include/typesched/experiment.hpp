#pragma once

#include "typesched/audit.hpp"
#include "typesched/model.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace typesched {

struct GeneratorSpec {
  std::size_t jobs = 1;
  std::vector<std::size_t> machines{1};  // per type
  std::size_t dims = 1;
  long cost_lo = 1;
  long cost_hi = 10;
};

class BadSpec : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Deterministic for a given (spec, seed) on every platform: draws come from
// mt19937_64 mapped to ranges by modulo rather than by a library
// distribution, whose algorithm the standard leaves open.
Instance generate_instance(const GeneratorSpec& spec, std::uint64_t seed);

std::uint64_t bounded_draw(std::uint64_t word, std::uint64_t lo, std::uint64_t hi);

// Ranges a batch draws its per-trial generator specs from.
struct SpecRange {
  std::size_t jobs_lo = 1, jobs_hi = 7;
  std::vector<std::pair<std::size_t, std::size_t>> machines{{1, 4}, {1, 4}};  // per type
  std::size_t dims_lo = 1, dims_hi = 1;
  long cost_lo = 1, cost_hi = 10;
};

struct ExperimentConfig {
  enum class Objective { Makespan, LpNorm };
  enum class Mode { Full, Guided };
  Objective objective = Objective::Makespan;
  Rational p{2};
  Rational eps_user{1, 2};
  Mode mode = Mode::Guided;
  std::size_t enum_budget = 1000000;
  std::optional<double> cp_tol_override;
  // A file makes every trial run on the same instance.
  std::optional<std::string> instance_file;
  SpecRange range;
  std::uint64_t seed = 1;
  std::size_t trials = 1;
  // Cap on the total number of machines summed over types; draws above it
  // are shrunk type by type.
  std::size_t max_machines = 4;
};

struct TrialRow {
  std::size_t trial = 0;
  std::string digest;
  std::size_t jobs = 0, machines = 0, dims = 0;
  std::string status = "ok";  // ok, BudgetExhausted or an error message
  // The makespan or the L_p norm; ratio = objective / oracle_optimum.
  std::optional<double> oracle_optimum;
  std::optional<double> objective;
  std::optional<double> ratio;
  // Exact makespan or exact sum of load^p, when available.
  std::optional<std::string> oracle_exact;
  std::optional<std::string> objective_exact;
  bool within_bound = false;
  std::size_t iterations = 0;
  std::size_t enumerated = 0;
  nlohmann::json audits = nlohmann::json::object();
  bool audits_clean = true;
};

struct Report {
  ExperimentConfig config;
  std::vector<TrialRow> rows;
  double max_ratio = 0.0;
  double mean_ratio = 0.0;
  std::size_t failures = 0;  // errors, ratio bound misses and audit violations
  bool success() const { return failures == 0; }
};

// Runs every trial; a failing trial is recorded in its row and the batch goes on.
Report run_experiment(const ExperimentConfig& cfg);

nlohmann::json report_to_json(const Report& report);
std::string report_to_table(const Report& report);

// Instance of trial `trial` under the config's generator ranges.
Instance trial_instance(const ExperimentConfig& cfg, std::size_t trial);

}  // namespace typesched
