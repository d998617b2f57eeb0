#include "typesched/driver.hpp"

#include "typesched/instance_io.hpp"
#include "typesched/lpnorm.hpp"
#include "typesched/makespan.hpp"
#include "typesched/oracle.hpp"

#include <cmath>

namespace typesched {

using nlohmann::json;

namespace {

Objective objective_of(const std::string& name, const Rational& p) {
  if (name == "makespan") return Objective::makespan();
  if (name == "lp") return Objective::lp_norm(p);
  throw std::invalid_argument("objective must be makespan or lp, got " + name);
}

}  // namespace

json solve_to_json(const Instance& inst, const SolveRequest& req, AuditLog& log) {
  if (auto errs = validate_instance(inst); !errs.empty()) throw std::invalid_argument(errs.front().message);
  if (req.mode != "guided" && req.mode != "full") throw std::invalid_argument("mode must be guided or full");
  const Objective objective = objective_of(req.objective, req.p);
  const bool guided = req.mode == "guided";
  std::optional<Schedule> cert = req.certificate;
  if (guided && !cert) cert = exact_solve(inst, objective).witness;

  json out;
  out["digest"] = instance_digest(inst);
  if (objective.kind == Objective::Kind::Makespan) {
    DecisionMode mode;
    mode.kind = guided ? DecisionMode::Kind::Guided : DecisionMode::Kind::Full;
    mode.budget = req.enum_budget;
    if (guided) mode.certificate = cert;
    auto res = makespan_ptas(inst, req.eps, mode, &log);
    out["objective"] = "makespan";
    out["makespan"] = to_string(res.makespan);
    out["eps_int"] = to_string(res.eps_int);
    out["accepted_target"] = to_string(res.accepted_target);
    out["decisions"] = res.decisions;
    out["profiles_tried"] = res.profiles_tried;
    out["rounding_iterations"] = res.rounding_iterations;
    out["schedule"] = schedule_to_json(res.schedule);
    out["forest"] = res.forest_dot;
  } else {
    LpNormMode mode;
    mode.kind = guided ? LpNormMode::Kind::Guided : LpNormMode::Kind::Full;
    mode.budget = req.enum_budget;
    if (guided) mode.certificate = cert;
    mode.cp_tol_override = req.cp_tol_override;
    auto res = lpnorm_ptas(inst, req.p, req.eps, mode, &log);
    out["objective"] = "lp";
    out["p"] = to_string(req.p);
    out["norm"] = std::pow(res.cost, 1.0 / req.p.get_d());
    out["norm_power"] = res.exact ? json(to_string(*res.exact)) : json(res.cost);
    out["eps_int"] = to_string(res.eps_int);
    out["guesses_tried"] = res.guesses_tried;
    out["skeletons"] = res.skeletons;
    out["rounding_iterations"] = res.rounding_iterations;
    out["cp_objective"] = res.cp_objective;
    out["additive_tol"] = res.additive_tol;
    out["fell_back"] = res.fell_back;
    out["schedule"] = schedule_to_json(res.schedule);
    out["forest"] = res.forest_dot;
  }
  out["audits"] = log.to_json();
  out["audits_clean"] = log.clean();
  return out;
}

json oracle_to_json(const Instance& inst, const std::string& objective, const Rational& p) {
  auto res = exact_solve(inst, objective_of(objective, p));
  json out = {{"digest", instance_digest(inst)},
              {"value", res.value},
              {"explored", res.explored},
              {"schedule", schedule_to_json(res.witness)}};
  out["optimum"] = res.optimum ? json(to_string(*res.optimum)) : json(nullptr);
  return out;
}

}  // namespace typesched
