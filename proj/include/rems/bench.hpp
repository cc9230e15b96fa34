#pragma once

#include "rems/instance_io.hpp"
#include "rems/metaheuristics.hpp"

namespace rems {

// Algorithm labels accepted by the harness: sa, ts, lns, ga, and the three
// VNS selection-mode flavors qvns / avns / rvns.
SolverConfig solver_config_for(const std::string& algo); // throws InvalidConfig
const std::vector<std::string>& known_algorithms();

// Relative optimality gap; denominator clamped at 1 so LB = 0 is safe.
double compute_gap(double objective, double lower_bound, Sense sense);

struct BenchInstance {
    std::string id;
    ParsedInstance instance;
    double lower_bound = 0;
    bool has_lower_bound = false;
};

struct ExperimentConfig {
    std::vector<BenchInstance> instances;
    std::vector<std::string> algorithms;
    int runs = 5;
    double time_limit_s = 0;       // at least one budget must be set
    std::uint64_t eval_budget = 0; // evaluation budget -> deterministic outputs
    std::uint64_t base_seed = 1;   // run seed = base_seed + run_index
    std::string out_dir;           // empty = no files written
    int threads = 1;               // 0 = hardware concurrency

    void validate() const; // throws InvalidConfig
};

struct ResultRow {
    std::string instance_id;
    std::string algorithm;
    double best_objective = 0;
    double mean_objective = 0;
    double best_gap = 0; // NaN without a lower bound
    double mean_gap = 0;
    double mean_time_ms = 0; // virtual (= evaluations) under an eval budget
    int feasible_runs = 0;
    std::vector<std::uint64_t> seeds;
};

// JSON config: {"instances": [{"id": ..} | {"path": .., "format": .., "id": ..,
// "lower_bound": ..}], "algorithms": [..], "runs": .., "time_limit_s": ..,
// "eval_budget": .., "seed": .., "out_dir": .., "threads": ..}. Bare ids refer
// to shipped fixtures.
ExperimentConfig load_experiment_config(const std::string& path);

// Runs every (instance, algorithm, run) cell, optionally concurrently, and
// writes results.csv / results.json plus one trace CSV per run when out_dir
// is set. Output is deterministic for a fixed config under an eval budget.
std::vector<ResultRow> run_experiment(const ExperimentConfig& config);

} // namespace rems
