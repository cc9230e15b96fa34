#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "rems/bench.hpp"
#include "rems/fixtures.hpp"

using namespace rems;

namespace {

const Variant kAllVariants[] = {Variant::SA, Variant::TS, Variant::VNS, Variant::LNS, Variant::GA};

SolverConfig budget_config(Variant v, std::uint64_t budget, std::uint64_t seed) {
    SolverConfig cfg;
    cfg.variant = v;
    cfg.eval_budget = budget;
    cfg.seed = seed;
    return cfg;
}

} // namespace

TEST_CASE("config validation") {
    SolverConfig cfg;
    CHECK_THROWS_AS(cfg.validate(), InvalidConfig); // no budget
    cfg.eval_budget = 100;
    CHECK_NOTHROW(cfg.validate());
    cfg.candidates = 0;
    CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
    cfg.candidates = 5;
    cfg.variant = Variant::GA;
    cfg.popsize = 1;
    CHECK_THROWS_AS(cfg.validate(), InvalidConfig);

    CHECK(variant_from_string("vns") == Variant::VNS);
    CHECK_THROWS_AS(variant_from_string("hill"), InvalidConfig);
    for (auto v : kAllVariants) CHECK(variant_from_string(variant_name(v)) == v);
}

TEST_CASE("zero-task models return immediately") {
    ProblemModel model = testutil::bare_model(2, 0);
    for (auto v : kAllVariants) {
        auto report = run(model, budget_config(v, 1000, 1));
        CHECK(report.best.structure.empty());
        CHECK(report.trace.size() >= 1);
    }
}

TEST_CASE("identical configurations reproduce identical runs") {
    auto model = build_model(fixture_by_id("T-GAP-1").instance);
    for (auto v : kAllVariants) {
        CAPTURE(variant_name(v));
        auto a = run(model, budget_config(v, 3000, 99));
        auto b = run(model, budget_config(v, 3000, 99));
        CHECK(a.best.objective_value == b.best.objective_value);
        CHECK(a.best.structure.per_resource == b.best.structure.per_resource);
        CHECK(a.evaluations == b.evaluations);
        REQUIRE(a.trace.size() == b.trace.size());
        for (std::size_t k = 0; k < a.trace.size(); ++k) {
            CHECK(a.trace[k].evaluations == b.trace[k].evaluations);
            CHECK(a.trace[k].best_objective == b.trace[k].best_objective);
        }
    }
}

TEST_CASE("the reported best never worsens along the trace") {
    auto model = build_model(fixture_by_id("M-GAP-1").instance);
    for (auto v : kAllVariants) {
        CAPTURE(variant_name(v));
        auto report = run(model, budget_config(v, 8000, 5));
        bool feasible_seen = false;
        double last = 0;
        for (const auto& p : report.trace) {
            if (p.best_violation_sum > 0) continue;
            if (feasible_seen) CHECK(p.best_objective <= last + 1e-12);
            last = p.best_objective;
            feasible_seen = true;
        }
        CHECK(report.best.feasible());
    }
}

TEST_CASE("stalls trigger a recorded perturbation") {
    auto model = build_model(fixture_by_id("T-GAP-1").instance);
    auto cfg = budget_config(Variant::VNS, 5000, 3);
    cfg.perturbation_trigger = 2;
    auto report = run_single_point(model, cfg);
    bool seen = false;
    for (const auto& e : report.events) seen = seen || e.what == "perturbation";
    CHECK(seen);
}

TEST_CASE("evaluation budgets are honored") {
    auto model = build_model(fixture_by_id("M-GC-1").instance);
    for (auto v : kAllVariants) {
        auto report = run(model, budget_config(v, 2000, 11));
        // One outer iteration of slack at most.
        CHECK(report.evaluations < 2000 + 600);
    }
}

TEST_CASE("target objective stops the run early") {
    auto model = build_model(fixture_by_id("T-GAP-1").instance);
    auto cfg = budget_config(Variant::SA, 500000, 21);
    cfg.target_objective = 9.0; // known optimum
    auto report = run_single_point(model, cfg);
    CHECK(report.best.feasible());
    CHECK(report.best.objective_value == 9.0);
    CHECK(report.evaluations < 500000);
}

TEST_CASE("plain genetic drift without operators keeps the best") {
    auto model = build_model(fixture_by_id("T-BPPC-1").instance);
    auto cfg = budget_config(Variant::GA, 5000, 31);
    cfg.p_c = 0.0;
    cfg.p_m = 0.0;
    auto report = run_ga(model, cfg);
    CHECK(report.best.feasible());
    double last = std::numeric_limits<double>::infinity();
    for (const auto& p : report.trace) {
        if (p.best_violation_sum > 0) continue;
        CHECK(p.best_objective <= last + 1e-12);
        last = p.best_objective;
    }
}

TEST_CASE("vns selection modes all solve the small fixtures") {
    auto model = build_model(fixture_by_id("T-GC-1").instance);
    for (auto mode : {SelectMode::QLearning, SelectMode::Adaptive, SelectMode::Random}) {
        auto cfg = budget_config(Variant::VNS, 20000, 17);
        cfg.vns_mode = mode;
        auto report = run_single_point(model, cfg);
        CHECK(report.best.feasible());
        CHECK(report.best.objective_value == 3.0);
    }
}

TEST_CASE("bench rows aggregate the per-run reports") {
    ExperimentConfig cfg;
    BenchInstance bi;
    auto f = fixture_by_id("T-GAP-1");
    bi.id = f.id;
    bi.instance = f.instance;
    bi.lower_bound = f.lower_bound;
    bi.has_lower_bound = true;
    cfg.instances.push_back(bi);
    cfg.algorithms = {"sa", "qvns"};
    cfg.runs = 3;
    cfg.eval_budget = 5000;
    cfg.base_seed = 100;
    auto rows = run_experiment(cfg);
    REQUIRE(rows.size() == 2);
    for (const auto& r : rows) {
        CHECK(r.seeds == std::vector<std::uint64_t>{100, 101, 102});
        CHECK(r.best_objective <= r.mean_objective + 1e-12);
        CHECK(r.best_gap >= 0.0);
        CHECK(r.feasible_runs == 3);
    }
}
