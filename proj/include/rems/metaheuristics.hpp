#pragma once

#include <limits>
#include <string>

#include "rems/qlearning.hpp"

namespace rems {

struct InvalidConfig : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Variant { SA, TS, VNS, LNS, GA };

Variant variant_from_string(const std::string& name); // throws InvalidConfig
const char* variant_name(Variant v);

struct SolverConfig {
    Variant variant = Variant::SA;
    double time_limit_s = 0;       // wall-clock budget; 0 = unused
    std::uint64_t eval_budget = 0; // evaluation budget; 0 = unused. With a
                                   // budget and no time limit the run is fully
                                   // deterministic and reports virtual time
                                   // (1 evaluation = 1 ms).
    std::uint64_t seed = 0;
    int candidates = 5;            // N, candidate set size per outer iteration
    int perturbation_trigger = 50; // tau_s

    // SA
    double sa_initial_temp = 10.0;
    double sa_cooling = 0.95;
    // TS: tenure annealed high -> low over the run
    int ts_tenure_high = 20;
    int ts_tenure_low = 5;
    // LNS: nd annealed from ceil(lns_destroy_frac * n) down to 1
    double lns_destroy_frac = 0.3;
    // GA
    int popsize = 30;
    double p_c = 0.9;
    double p_m = 0.2;

    QLearnParams qlearn;
    SelectMode vns_mode = SelectMode::QLearning; // qVNS / aVNS / rVNS

    // Optional early stop once a feasible solution reaches this objective
    // (<= for MIN, >= for MAX). NaN = disabled.
    double target_objective = std::numeric_limits<double>::quiet_NaN();

    void validate() const;
};

struct TracePoint {
    double elapsed_ms;
    std::uint64_t evaluations;
    double best_objective;
    double best_violation_sum;
};

struct RunEvent {
    double elapsed_ms;
    std::string what;
};

struct RunReport {
    EvaluatedSolution best;
    std::vector<TracePoint> trace;
    std::vector<RunEvent> events;
    std::uint64_t seed = 0;
    std::uint64_t evaluations = 0;
    double wall_ms = 0; // actual wall clock, informational only
    std::uint64_t outer_iterations = 0;
};

// Shared single-point framework (SA, TS, VNS, LNS).
RunReport run_single_point(const ProblemModel& model, const SolverConfig& config);

// Population framework.
RunReport run_ga(const ProblemModel& model, const SolverConfig& config);

// Dispatch on config.variant.
RunReport run(const ProblemModel& model, const SolverConfig& config);

} // namespace rems
