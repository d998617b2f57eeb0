#include <doctest.h>

#include "typesched/experiment.hpp"
#include "typesched/instance_io.hpp"

using namespace typesched;

TEST_CASE("single job spec gives the cost-3 instance") {
  GeneratorSpec spec;
  spec.jobs = 1;
  spec.machines = {1};
  spec.dims = 1;
  spec.cost_lo = spec.cost_hi = 3;
  for (std::uint64_t seed : {0u, 1u, 99u}) {
    auto inst = generate_instance(spec, seed);
    REQUIRE(inst.num_jobs() == 1);
    CHECK(inst.num_machines() == 1);
    CHECK(inst.cost(0, 0) == 3);
  }
}

TEST_CASE("generation is deterministic and the seed 7 digest is pinned") {
  GeneratorSpec spec;
  spec.jobs = 6;
  spec.machines = {2, 2};
  spec.dims = 2;
  spec.cost_lo = 1;
  spec.cost_hi = 10;
  auto a = generate_instance(spec, 7);
  auto b = generate_instance(spec, 7);
  CHECK(instance_to_json(a) == instance_to_json(b));
  CHECK(instance_digest(a) == "ac36fe151db1d86e");
  CHECK(instance_digest(generate_instance(spec, 8)) != instance_digest(a));
  CHECK(instance_digest(instance_from_json(instance_to_json(a))) == instance_digest(a));
}

TEST_CASE("bad specs") {
  GeneratorSpec spec;
  spec.jobs = 2;
  spec.machines = {1};
  spec.cost_lo = 5;
  spec.cost_hi = 4;
  CHECK_THROWS_AS(generate_instance(spec, 1), BadSpec);
  spec.cost_hi = 6;
  spec.machines = {0};
  CHECK_THROWS_AS(generate_instance(spec, 1), BadSpec);
  spec.machines = {};
  CHECK_THROWS_AS(generate_instance(spec, 1), BadSpec);
}

TEST_CASE("zero trials give an empty successful report") {
  ExperimentConfig cfg;
  cfg.trials = 0;
  auto r = run_experiment(cfg);
  CHECK(r.rows.empty());
  CHECK(r.success());
}

TEST_CASE("zero budget in full mode reports BudgetExhausted on every trial") {
  for (auto obj : {ExperimentConfig::Objective::Makespan, ExperimentConfig::Objective::LpNorm}) {
    ExperimentConfig cfg;
    cfg.objective = obj;
    cfg.mode = ExperimentConfig::Mode::Full;
    cfg.enum_budget = 0;
    cfg.trials = 4;
    auto r = run_experiment(cfg);
    REQUIRE(r.rows.size() == 4);
    for (const auto& row : r.rows) CHECK(row.status == "BudgetExhausted");
    CHECK(r.failures == 4);
  }
}

TEST_CASE("rows carry ratios recomputable from their stored values") {
  for (auto obj : {ExperimentConfig::Objective::Makespan, ExperimentConfig::Objective::LpNorm}) {
    ExperimentConfig cfg;
    cfg.objective = obj;
    cfg.trials = 12;
    cfg.seed = 11;
    auto r = run_experiment(cfg);
    CHECK(r.success());
    auto doc = report_to_json(r);
    for (const auto& row : doc["rows"]) {
      const double opt = std::stod(row["oracle_optimum"].get<std::string>());
      const double alg = std::stod(row["objective"].get<std::string>());
      CHECK(std::stod(row["ratio"].get<std::string>()) == alg / opt);
      CHECK(row["within_bound"].get<bool>());
    }
    CHECK(r.max_ratio <= 1.5);
  }
}

TEST_CASE("reports are byte-stable") {
  ExperimentConfig cfg;
  cfg.trials = 6;
  cfg.seed = 3;
  cfg.range.dims_hi = 2;
  CHECK(report_to_json(run_experiment(cfg)).dump() == report_to_json(run_experiment(cfg)).dump());
  CHECK(report_to_table(run_experiment(cfg)) == report_to_table(run_experiment(cfg)));
}

TEST_CASE("trial instances respect the machine cap") {
  ExperimentConfig cfg;
  cfg.max_machines = 4;
  cfg.range.machines.assign(2, std::pair<std::size_t, std::size_t>{1, 4});
  for (std::size_t t = 0; t < 50; ++t) {
    auto inst = trial_instance(cfg, t);
    CHECK(inst.num_machines() <= 4);
    CHECK(inst.num_types() == 2);
    CHECK(inst.num_jobs() <= 7);
  }
}
