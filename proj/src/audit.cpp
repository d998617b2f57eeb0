#include "typesched/audit.hpp"

namespace typesched {

void AuditLog::record(std::string_view invariant, bool ok, std::string_view detail) {
  auto it = tallies_.find(invariant);
  if (it == tallies_.end()) it = tallies_.emplace(std::string(invariant), InvariantTally{}).first;
  auto& t = it->second;
  ++t.checks;
  if (!ok) {
    if (t.violations == 0) t.first_violation = std::string(detail);
    ++t.violations;
  }
}

void AuditLog::merge(const AuditLog& other) {
  for (const auto& [name, tally] : other.tallies_) {
    auto& t = tallies_[name];
    if (t.violations == 0 && tally.violations > 0) t.first_violation = tally.first_violation;
    t.checks += tally.checks;
    t.violations += tally.violations;
  }
}

bool AuditLog::clean() const {
  for (const auto& [name, t] : tallies_)
    if (t.violations > 0) return false;
  return true;
}

std::size_t AuditLog::checks(std::string_view invariant) const {
  auto it = tallies_.find(invariant);
  return it == tallies_.end() ? 0 : it->second.checks;
}

std::size_t AuditLog::violations(std::string_view invariant) const {
  auto it = tallies_.find(invariant);
  return it == tallies_.end() ? 0 : it->second.violations;
}

nlohmann::json AuditLog::to_json() const {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [name, t] : tallies_) {
    nlohmann::json entry = {{"checks", t.checks}, {"violations", t.violations}};
    if (t.violations > 0) entry["first_violation"] = t.first_violation;
    out[name] = std::move(entry);
  }
  return out;
}

}  // namespace typesched
