#include "typesched/experiment.hpp"

#include "typesched/instance_io.hpp"
#include "typesched/lpnorm.hpp"
#include "typesched/makespan.hpp"
#include "typesched/oracle.hpp"
#include "typesched/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

namespace typesched {

std::uint64_t bounded_draw(std::uint64_t word, std::uint64_t lo, std::uint64_t hi) {
  return lo + word % (hi - lo + 1);
}

Instance generate_instance(const GeneratorSpec& spec, std::uint64_t seed) {
  if (spec.jobs == 0 || spec.machines.empty() || spec.dims == 0) throw BadSpec("spec needs jobs, types and dimensions");
  if (spec.cost_lo < 1 || spec.cost_hi < spec.cost_lo) throw BadSpec("cost range must be non-empty and positive");
  std::size_t total = 0;
  for (auto m : spec.machines) total += m;
  if (total == 0) throw BadSpec("spec needs at least one machine");
  std::mt19937_64 rng(seed);
  Instance inst;
  inst.dims = spec.dims;
  for (auto m : spec.machines) inst.types.push_back({m});
  for (std::size_t j = 0; j < spec.jobs; ++j) {
    Job job;
    for (std::size_t l = 0; l < spec.machines.size(); ++l) {
      std::vector<Rational> v;
      for (std::size_t d = 0; d < spec.dims; ++d)
        v.emplace_back(static_cast<long>(bounded_draw(rng(), static_cast<std::uint64_t>(spec.cost_lo),
                                                      static_cast<std::uint64_t>(spec.cost_hi))));
      job.costs.push_back(std::move(v));
    }
    inst.jobs.push_back(std::move(job));
  }
  return inst;
}

Instance trial_instance(const ExperimentConfig& cfg, std::size_t trial) {
  if (cfg.instance_file) return read_instance(*cfg.instance_file);
  const auto& r = cfg.range;
  if (r.machines.empty() || r.jobs_lo == 0 || r.jobs_hi < r.jobs_lo || r.dims_lo == 0 || r.dims_hi < r.dims_lo)
    throw BadSpec("generator ranges must be non-empty");
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  std::mt19937_64 rng(seq);
  GeneratorSpec spec;
  spec.jobs = bounded_draw(rng(), r.jobs_lo, r.jobs_hi);
  spec.dims = bounded_draw(rng(), r.dims_lo, r.dims_hi);
  spec.cost_lo = r.cost_lo;
  spec.cost_hi = r.cost_hi;
  spec.machines.clear();
  for (const auto& [lo, hi] : r.machines) {
    if (hi < lo || hi == 0) throw BadSpec("machine range must be non-empty");
    spec.machines.push_back(bounded_draw(rng(), std::max<std::size_t>(lo, 1), hi));
  }
  std::size_t total = 0;
  for (auto m : spec.machines) total += m;
  for (std::size_t l = 0; total > std::max<std::size_t>(cfg.max_machines, spec.machines.size()); l = (l + 1) % spec.machines.size())
    if (spec.machines[l] > 1) {
      --spec.machines[l];
      --total;
    }
  return generate_instance(spec, rng());
}

namespace {

TrialRow run_trial(const ExperimentConfig& cfg, std::size_t trial) {
  TrialRow row;
  row.trial = trial;
  Instance inst;
  try {
    inst = trial_instance(cfg, trial);
  } catch (const std::exception& e) {
    row.status = e.what();
    return row;
  }
  row.digest = instance_digest(inst);
  row.jobs = inst.num_jobs();
  row.machines = inst.num_machines();
  row.dims = inst.dims;
  const bool makespan = cfg.objective == ExperimentConfig::Objective::Makespan;
  const Objective objective = makespan ? Objective::makespan() : Objective::lp_norm(cfg.p);

  std::optional<OracleResult> oracle;
  try {
    oracle = exact_solve(inst, objective);
  } catch (const TooLarge&) {
  }
  const bool guided = cfg.mode == ExperimentConfig::Mode::Guided && oracle;
  if (oracle) {
    if (oracle->optimum) row.oracle_exact = to_string(*oracle->optimum);
    row.oracle_optimum = makespan ? oracle->value : std::pow(oracle->value, 1.0 / cfg.p.get_d());
  }

  AuditLog log;
  try {
    if (makespan) {
      DecisionMode mode;
      mode.kind = guided ? DecisionMode::Kind::Guided : DecisionMode::Kind::Full;
      mode.budget = cfg.enum_budget;
      if (guided) mode.certificate = oracle->witness;
      auto res = makespan_ptas(inst, cfg.eps_user, mode, &log);
      row.objective_exact = to_string(res.makespan);
      row.objective = res.makespan.get_d();
      row.iterations = res.rounding_iterations;
      row.enumerated = res.profiles_tried;
      if (oracle) {
        const Rational& opt = *oracle->optimum;
        row.ratio = *row.objective / *row.oracle_optimum;
        row.within_bound = res.makespan <= (1 + cfg.eps_user) * opt;
      }
    } else {
      LpNormMode mode;
      mode.kind = guided ? LpNormMode::Kind::Guided : LpNormMode::Kind::Full;
      mode.budget = cfg.enum_budget;
      mode.cp_tol_override = cfg.cp_tol_override;
      if (guided) mode.certificate = oracle->witness;
      auto res = lpnorm_ptas(inst, cfg.p, cfg.eps_user, mode, &log);
      const double inv_p = 1.0 / cfg.p.get_d();
      if (res.exact) row.objective_exact = to_string(*res.exact);
      row.objective = std::pow(res.cost, inv_p);
      row.iterations = res.rounding_iterations;
      row.enumerated = res.guesses_tried;
      if (oracle) {
        row.ratio = *row.objective / *row.oracle_optimum;
        // the p-th powers compare exactly when p is an integer
        if (res.exact && oracle->optimum && is_integer(cfg.p))
          row.within_bound = *res.exact <= pow(1 + cfg.eps_user, static_cast<unsigned>(cfg.p.get_d())) * *oracle->optimum;
        else
          row.within_bound = *row.ratio <= (1 + cfg.eps_user.get_d()) * (1 + 1e-9);
      }
    }
  } catch (const BudgetExhausted&) {
    row.status = "BudgetExhausted";
  } catch (const CountingViolation& e) {
    row.status = std::string("CountingViolation: ") + e.what();
  } catch (const ForestInconsistent& e) {
    row.status = std::string("ForestInconsistent: ") + e.what();
  } catch (const std::exception& e) {
    row.status = e.what();
  }
  row.audits = log.to_json();
  row.audits_clean = log.clean();
  return row;
}

// JSON keeps round-trip precision so ratios can be recomputed from the row.
std::string fmt_double(double v, bool full = false) {
  char buf[40];
  std::snprintf(buf, sizeof buf, full ? "%.17g" : "%.6f", v);
  return buf;
}

}  // namespace

Report run_experiment(const ExperimentConfig& cfg) {
  Report report;
  report.config = cfg;
  double sum = 0.0;
  std::size_t rated = 0;
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    TrialRow row = run_trial(cfg, t);
    if (row.ratio) {
      report.max_ratio = std::max(report.max_ratio, *row.ratio);
      sum += *row.ratio;
      ++rated;
    }
    const bool bad = row.status != "ok" || !row.audits_clean || (row.ratio && !row.within_bound);
    if (bad) ++report.failures;
    report.rows.push_back(std::move(row));
  }
  if (rated) report.mean_ratio = sum / static_cast<double>(rated);
  return report;
}

nlohmann::json report_to_json(const Report& report) {
  using nlohmann::json;
  const auto& c = report.config;
  json cfg = {
      {"objective", c.objective == ExperimentConfig::Objective::Makespan ? "makespan" : "lp"},
      {"p", to_string(c.p)},
      {"eps", to_string(c.eps_user)},
      {"mode", c.mode == ExperimentConfig::Mode::Guided ? "guided" : "full"},
      {"enum_budget", c.enum_budget},
      {"seed", c.seed},
      {"trials", c.trials},
  };
  if (c.cp_tol_override) cfg["cp_tol_override"] = *c.cp_tol_override;
  if (c.instance_file) {
    cfg["instance_file"] = *c.instance_file;
  } else {
    json machines = json::array();
    for (const auto& [lo, hi] : c.range.machines) machines.push_back({lo, hi});
    cfg["generator"] = {{"jobs", {c.range.jobs_lo, c.range.jobs_hi}},
                        {"machines", machines},
                        {"max_machines", c.max_machines},
                        {"dims", {c.range.dims_lo, c.range.dims_hi}},
                        {"costs", {c.range.cost_lo, c.range.cost_hi}}};
  }
  json rows = json::array();
  for (const auto& r : report.rows) {
    json row = {{"trial", r.trial},       {"digest", r.digest},         {"jobs", r.jobs},
                {"machines", r.machines}, {"dims", r.dims},             {"status", r.status},
                {"iterations", r.iterations}, {"enumerated", r.enumerated}, {"audits", r.audits},
                {"audits_clean", r.audits_clean}};
    auto num = [](const std::optional<double>& v) { return v ? json(fmt_double(*v, true)) : json(nullptr); };
    auto text = [](const std::optional<std::string>& v) { return v ? json(*v) : json(nullptr); };
    row["oracle_optimum"] = num(r.oracle_optimum);
    row["objective"] = num(r.objective);
    row["ratio"] = num(r.ratio);
    row["oracle_exact"] = text(r.oracle_exact);
    row["objective_exact"] = text(r.objective_exact);
    row["within_bound"] = r.within_bound;
    rows.push_back(std::move(row));
  }
  return {{"config", cfg},
          {"rows", rows},
          {"summary",
           {{"max_ratio", fmt_double(report.max_ratio, true)},
            {"mean_ratio", fmt_double(report.mean_ratio, true)},
            {"failures", report.failures},
            {"trials", report.rows.size()}}}};
}

std::string report_to_table(const Report& report) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%5s  %-16s  %3s %3s %2s  %-12s %-12s %9s  %5s %8s  %s\n", "trial", "digest", "n",
                "m", "D", "optimum", "objective", "ratio", "iters", "enum", "status");
  out << line;
  for (const auto& r : report.rows) {
    std::string status = r.status;
    if (status == "ok" && !r.audits_clean) status = "audit violation";
    if (status == "ok" && r.ratio && !r.within_bound) status = "ratio above bound";
    auto show = [](const std::optional<double>& v) { return v ? fmt_double(*v) : std::string("-"); };
    const std::string opt = show(r.oracle_optimum), obj = show(r.objective), rat = show(r.ratio);
    std::snprintf(line, sizeof line, "%5zu  %-16s  %3zu %3zu %2zu  %-12s %-12s %9s  %5zu %8zu  %s\n", r.trial,
                  r.digest.c_str(), r.jobs, r.machines, r.dims, opt.c_str(), obj.c_str(), rat.c_str(), r.iterations,
                  r.enumerated, status.c_str());
    out << line;
  }
  out << "trials " << report.rows.size() << ", max ratio " << fmt_double(report.max_ratio) << ", mean ratio "
      << fmt_double(report.mean_ratio) << ", failures " << report.failures << "\n";
  return out.str();
}

}  // namespace typesched
