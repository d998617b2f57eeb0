#include "typesched/driver.hpp"
#include "typesched/experiment.hpp"
#include "typesched/instance_io.hpp"
#include "typesched/lpnorm.hpp"
#include "typesched/oracle.hpp"
#include "typesched/patterns.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace typesched;
using nlohmann::json;

// Instances, schedules and results cross the boundary as JSON text; the
// Python side turns them into dicts.
namespace {

Instance parse_instance(const std::string& text) {
  Instance inst = instance_from_json(json::parse(text));
  if (auto errs = validate_instance(inst); !errs.empty()) throw std::invalid_argument(errs.front().message);
  return inst;
}

std::string solve(const std::string& instance, const std::string& objective, const std::string& p,
                  const std::string& eps, const std::string& mode, std::size_t enum_budget,
                  std::optional<double> cp_tol_override, std::optional<std::string> certificate) {
  const Instance inst = parse_instance(instance);
  SolveRequest req;
  req.objective = objective;
  req.p = parse_rational(p);
  req.eps = parse_rational(eps);
  req.mode = mode;
  req.enum_budget = enum_budget;
  req.cp_tol_override = cp_tol_override;
  if (certificate) req.certificate = schedule_from_json(json::parse(*certificate));
  AuditLog log;
  py::gil_scoped_release release;
  return solve_to_json(inst, req, log).dump();
}

std::string experiment(const std::string& objective, const std::string& p, const std::string& eps,
                       const std::string& mode, std::size_t enum_budget, std::uint64_t seed, std::size_t trials,
                       std::size_t jobs_max, std::size_t types, std::size_t machines_max, std::size_t total_machines,
                       std::size_t dims_max, long cost_lo, long cost_hi) {
  ExperimentConfig cfg;
  cfg.objective = objective == "lp" ? ExperimentConfig::Objective::LpNorm : ExperimentConfig::Objective::Makespan;
  cfg.p = parse_rational(p);
  cfg.eps_user = parse_rational(eps);
  cfg.mode = mode == "full" ? ExperimentConfig::Mode::Full : ExperimentConfig::Mode::Guided;
  cfg.enum_budget = enum_budget;
  cfg.seed = seed;
  cfg.trials = trials;
  cfg.range.jobs_hi = jobs_max;
  cfg.range.machines.assign(types, std::pair<std::size_t, std::size_t>{1, machines_max});
  cfg.max_machines = total_machines;
  cfg.range.dims_hi = dims_max;
  cfg.range.cost_lo = cost_lo;
  cfg.range.cost_hi = cost_hi;
  py::gil_scoped_release release;
  return report_to_json(run_experiment(cfg)).dump();
}

}  // namespace

PYBIND11_MODULE(_typesched, m) {
  py::register_exception<BudgetExhausted>(m, "BudgetExhausted", PyExc_RuntimeError);
  py::register_exception<TooLarge>(m, "TooLarge", PyExc_ValueError);
  py::register_exception<BadSpec>(m, "BadSpec", PyExc_ValueError);

  m.def(
      "generate_instance",
      [](std::size_t jobs, std::vector<std::size_t> machines, std::size_t dims, long cost_lo, long cost_hi,
         std::uint64_t seed) {
        GeneratorSpec spec{jobs, std::move(machines), dims, cost_lo, cost_hi};
        return instance_to_json(generate_instance(spec, seed)).dump();
      },
      py::arg("jobs"), py::arg("machines"), py::arg("dims"), py::arg("cost_lo"), py::arg("cost_hi"), py::arg("seed"));
  m.def("digest", [](const std::string& instance) { return instance_digest(parse_instance(instance)); });
  m.def("makespan", [](const std::string& instance, const std::string& schedule) {
    return to_string(evaluate_makespan(parse_instance(instance), schedule_from_json(json::parse(schedule))));
  });
  m.def("norm_power", [](const std::string& instance, const std::string& schedule, const std::string& p) {
    auto v = evaluate_lp_norm_pow(parse_instance(instance), schedule_from_json(json::parse(schedule)), parse_rational(p));
    return v.exact ? to_string(*v.exact) : std::to_string(v.value);
  });
  m.def("oracle", [](const std::string& instance, const std::string& objective, const std::string& p) {
    const Instance inst = parse_instance(instance);
    py::gil_scoped_release release;
    return oracle_to_json(inst, objective, parse_rational(p)).dump();
  });
  m.def("solve", &solve, py::arg("instance"), py::arg("objective"), py::arg("p"), py::arg("eps"), py::arg("mode"),
        py::arg("enum_budget"), py::arg("cp_tol_override"), py::arg("certificate"));
  m.def("run_experiment", &experiment);
  m.def("f_threshold", [](const std::string& p, const std::string& eps) {
    return f_threshold(parse_rational(p), parse_rational(eps));
  });
  m.def("calibrate_lp_eps", [](const std::string& eps) { return to_string(calibrate_lp_eps(parse_rational(eps))); });
}
