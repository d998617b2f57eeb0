#include "typesched/driver.hpp"
#include "typesched/experiment.hpp"
#include "typesched/instance_io.hpp"
#include "typesched/makespan.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

using namespace typesched;
using nlohmann::json;

namespace {

struct SolveFlags {
  std::string instance;
  std::string objective = "makespan";
  std::string p = "2";
  std::string eps = "1/2";
  std::string mode = "guided";
  std::size_t enum_budget = 1000000;
  std::string emit_forest;
  std::optional<double> cp_tol_override;
  std::string certificate;
  std::string out;
  std::string format = "json";
};

void add_algorithm_flags(CLI::App* cmd, SolveFlags& f) {
  cmd->add_option("--objective", f.objective, "makespan or lp")->check(CLI::IsMember({"makespan", "lp"}));
  cmd->add_option("--p", f.p, "norm exponent, p >= 1");
  cmd->add_option("--eps", f.eps, "accuracy, e.g. 1/2");
  cmd->add_option("--mode", f.mode, "full or guided")->check(CLI::IsMember({"full", "guided"}));
  cmd->add_option("--enum-budget", f.enum_budget, "guesses per search in full mode");
  cmd->add_option("--cp-tol-override", f.cp_tol_override, "additive tolerance of the convex program");
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string table_of_audits(const AuditLog& log) {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof line, "%-28s %8s %10s  %s\n", "invariant", "checks", "violations", "first violation");
  out += line;
  for (const auto& [name, t] : log.tallies()) {
    std::snprintf(line, sizeof line, "%-28s %8zu %10zu  %s\n", name.c_str(), t.checks, t.violations,
                  t.first_violation.c_str());
    out += line;
  }
  return out;
}

// Guided mode takes the certificate from a file or from the oracle.
json run_solve(const SolveFlags& f, AuditLog& log) {
  const Instance inst = read_instance(f.instance);
  SolveRequest req;
  req.objective = f.objective;
  req.p = parse_rational(f.p);
  req.eps = parse_rational(f.eps);
  req.mode = f.mode;
  req.enum_budget = f.enum_budget;
  req.cp_tol_override = f.cp_tol_override;
  if (f.mode == "guided" && !f.certificate.empty()) {
    std::ifstream in(f.certificate);
    if (!in) throw std::runtime_error("cannot open certificate " + f.certificate);
    json doc = json::parse(in);
    req.certificate = schedule_from_json(doc.contains("schedule") ? doc.at("schedule") : doc);
  }
  json out = solve_to_json(inst, req, log);
  if (!f.emit_forest.empty()) emit(out["forest"].get<std::string>(), f.emit_forest);
  out.erase("forest");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scheduling on unrelated machines of few types"};
  app.require_subcommand(1);

  GeneratorSpec gen;
  gen.machines = {2, 2};
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  auto* gen_cmd = app.add_subcommand("gen", "write a random instance");
  gen_cmd->add_option("--jobs", gen.jobs, "number of jobs")->required();
  gen_cmd->add_option("--machines", gen.machines, "machine count per type")->delimiter(',');
  gen_cmd->add_option("--dims", gen.dims, "cost dimensions");
  gen_cmd->add_option("--cost-lo", gen.cost_lo);
  gen_cmd->add_option("--cost-hi", gen.cost_hi);
  gen_cmd->add_option("--seed", gen_seed);
  gen_cmd->add_option("--out", gen_out, "instance file, stdout when absent");

  SolveFlags solve;
  auto* solve_cmd = app.add_subcommand("solve", "run the approximation scheme on an instance");
  solve_cmd->add_option("instance", solve.instance, "instance JSON")->required();
  add_algorithm_flags(solve_cmd, solve);
  solve_cmd->add_option("--certificate", solve.certificate, "schedule guiding guided mode; the oracle's otherwise");
  solve_cmd->add_option("--emit-forest", solve.emit_forest, "write the subsumption forest as a DOT graph");
  solve_cmd->add_option("--out", solve.out);
  solve_cmd->add_option("--format", solve.format)->check(CLI::IsMember({"json", "table"}));

  SolveFlags audit_flags;
  auto* audit_cmd = app.add_subcommand("audit", "run the scheme and report every invariant check");
  audit_cmd->add_option("instance", audit_flags.instance, "instance JSON")->required();
  add_algorithm_flags(audit_cmd, audit_flags);
  audit_cmd->add_option("--certificate", audit_flags.certificate);
  audit_cmd->add_option("--out", audit_flags.out);
  audit_cmd->add_option("--format", audit_flags.format)->check(CLI::IsMember({"json", "table"}));

  SolveFlags oracle_flags;
  auto* oracle_cmd = app.add_subcommand("oracle", "exact optimum by exhaustive search");
  oracle_cmd->add_option("instance", oracle_flags.instance, "instance JSON")->required();
  oracle_cmd->add_option("--objective", oracle_flags.objective)->check(CLI::IsMember({"makespan", "lp"}));
  oracle_cmd->add_option("--p", oracle_flags.p);
  oracle_cmd->add_option("--out", oracle_flags.out);

  ExperimentConfig cfg;
  SolveFlags bench_flags;
  std::string bench_instance, bench_format = "table", bench_out;
  std::size_t types = 2, machines_max = 4;
  auto* bench_cmd = app.add_subcommand("bench", "seeded batch against the oracle");
  add_algorithm_flags(bench_cmd, bench_flags);
  bench_cmd->add_option("--instance", bench_instance, "run every trial on this instance");
  bench_cmd->add_option("--seed", cfg.seed);
  bench_cmd->add_option("--trials", cfg.trials);
  bench_cmd->add_option("--jobs-min", cfg.range.jobs_lo);
  bench_cmd->add_option("--jobs-max", cfg.range.jobs_hi);
  bench_cmd->add_option("--types", types);
  bench_cmd->add_option("--machines-max", machines_max, "machines per type");
  bench_cmd->add_option("--total-machines", cfg.max_machines, "machines over all types");
  bench_cmd->add_option("--dims-min", cfg.range.dims_lo);
  bench_cmd->add_option("--dims-max", cfg.range.dims_hi);
  bench_cmd->add_option("--cost-lo", cfg.range.cost_lo);
  bench_cmd->add_option("--cost-hi", cfg.range.cost_hi);
  bench_cmd->add_option("--out", bench_out, "JSON report file");
  bench_cmd->add_option("--format", bench_format, "stdout rendering")->check(CLI::IsMember({"json", "table"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen_cmd->parsed()) {
      const std::string text = instance_to_json(generate_instance(gen, gen_seed)).dump(2) + "\n";
      emit(text, gen_out);
      return 0;
    }
    if (solve_cmd->parsed() || audit_cmd->parsed()) {
      const SolveFlags& f = solve_cmd->parsed() ? solve : audit_flags;
      AuditLog log;
      json out = run_solve(f, log);
      if (audit_cmd->parsed()) out = {{"digest", out["digest"]}, {"audits", out["audits"]}, {"audits_clean", log.clean()}};
      if (f.format == "table") {
        std::string text;
        if (solve_cmd->parsed()) {
          text += out["objective"] == "makespan" ? "makespan " + out["makespan"].get<std::string>() + "\n"
                                                 : "norm " + out["norm"].dump() + "\n";
          text += "schedule " + out["schedule"].dump() + "\n";
        }
        emit(text + table_of_audits(log), f.out);
      } else {
        emit(out.dump(2) + "\n", f.out);
      }
      return log.clean() ? 0 : 1;
    }
    if (oracle_cmd->parsed()) {
      const Instance inst = read_instance(oracle_flags.instance);
      json out = oracle_to_json(inst, oracle_flags.objective, parse_rational(oracle_flags.p));
      emit(out.dump(2) + "\n", oracle_flags.out);
      return 0;
    }
    if (bench_cmd->parsed()) {
      cfg.objective = bench_flags.objective == "makespan" ? ExperimentConfig::Objective::Makespan
                                                          : ExperimentConfig::Objective::LpNorm;
      cfg.p = parse_rational(bench_flags.p);
      cfg.eps_user = parse_rational(bench_flags.eps);
      cfg.mode = bench_flags.mode == "guided" ? ExperimentConfig::Mode::Guided : ExperimentConfig::Mode::Full;
      cfg.enum_budget = bench_flags.enum_budget;
      cfg.cp_tol_override = bench_flags.cp_tol_override;
      if (!bench_instance.empty()) cfg.instance_file = bench_instance;
      cfg.range.machines.assign(types, {1, machines_max});
      const Report report = run_experiment(cfg);
      const std::string doc = report_to_json(report).dump(2) + "\n";
      if (!bench_out.empty()) emit(doc, bench_out);
      emit(bench_format == "json" ? doc : report_to_table(report), "");
      return report.success() ? 0 : 1;
    }
  } catch (const BudgetExhausted& e) {
    std::cerr << "BudgetExhausted: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
