#pragma once

#include "typesched/audit.hpp"
#include "typesched/model.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace typesched {

// One run of either scheme with its settings as the CLI and the Python
// module spell them.
struct SolveRequest {
  std::string objective = "makespan";  // makespan or lp
  Rational p{2};
  Rational eps{1, 2};
  std::string mode = "guided";         // guided or full
  std::size_t enum_budget = 1000000;
  std::optional<double> cp_tol_override;
  // Guided mode only; the oracle supplies one when absent.
  std::optional<Schedule> certificate;
};

// The schedule, its objective, the search counters and the audit tallies.
// The forest DOT text is under "forest".
nlohmann::json solve_to_json(const Instance& inst, const SolveRequest& req, AuditLog& log);

// Optimum and witness of the exhaustive search.
nlohmann::json oracle_to_json(const Instance& inst, const std::string& objective, const Rational& p);

}  // namespace typesched
