// Acceptance gate: one line per criterion, [PASS]/[FAIL], exit code = number
// of failed criteria. Budgets are sized for a single-core desk machine; every
// check that does not measure wall-clock time is fully deterministic.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rems/bench.hpp"
#include "rems/fixtures.hpp"
#include "rems/oracle.hpp"

using namespace rems;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

void report(const std::string& name, const Outcome& o, int& failures) {
    if (!o.pass) ++failures;
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
}

ProblemModel assigned_count_model(int m, int n, bool ordered) {
    ProblemModel model;
    model.ordered = ordered;
    for (int i = 1; i <= m; ++i) model.resources.push_back({i, {}, kUnbounded});
    for (int j = 1; j <= n; ++j) model.tasks.push_back({j, {}});
    model.objective.sense = Sense::Max;
    model.objective.value = [](const SolutionStructure& s, const AttributeSet&) {
        return static_cast<double>(s.total_assigned());
    };
    return model;
}

ConstraintSpec once_constraint(int n) {
    TaskAggregate agg;
    agg.coeff = [](int, int, int) { return 1.0; };
    agg.thresholds.assign(static_cast<std::size_t>(n), 1.0);
    agg.rel = Relation::Eq;
    return {"each_task_once", std::move(agg)};
}

// ---------------------------------------------------------------------------
// Criterion 1: every metaheuristic matches the exhaustive optimum on every
// tiny fixture in at least 4 of 5 seeded runs.

Outcome check_oracle_optimality() {
    const std::vector<std::string> algos = {"sa", "ts", "qvns", "lns", "ga"};
    int cells_ok = 0, cells = 0;
    std::string bad;
    for (const auto& f : tiny_fixtures()) {
        auto model = build_model(f.instance);
        OracleOptions opts;
        opts.symmetric_resources = f.id == "T-BPPC-1" || f.id == "T-GC-1";
        auto exact = brute_force_oracle(model, opts);
        if (exact.status != OracleStatus::Optimal)
            return {false, "oracle failed to close fixture " + f.id};
        for (const auto& algo : algos) {
            ++cells;
            int hits = 0;
            for (int r = 0; r < 5; ++r) {
                auto cfg = solver_config_for(algo);
                cfg.time_limit_s = 5.0;
                cfg.seed = 7000 + static_cast<std::uint64_t>(r);
                cfg.target_objective = exact.objective;
                auto rep = run(model, cfg);
                if (rep.best.feasible() &&
                    std::abs(rep.best.objective_value - exact.objective) <= 1e-6)
                    ++hits;
            }
            if (hits >= 4)
                ++cells_ok;
            else
                bad += " " + f.id + "/" + algo + "=" + std::to_string(hits) + "/5";
        }
    }
    std::string detail = std::to_string(cells_ok) + "/" + std::to_string(cells) +
                         " algorithm-fixture cells reached the exact optimum in >=4/5 runs";
    if (!bad.empty()) detail += "; below threshold:" + bad;
    return {cells_ok == cells, detail};
}

// ---------------------------------------------------------------------------
// Criterion 2: ranking laws over 10^4 randomized trials: comparison
// antisymmetry, feasible-above-infeasible layering, invariance of the ranking
// order under positive scaling, and the strict-partial-order axioms of
// dominance. Zero failures allowed.

EvaluatedSolution synth(double obj, std::vector<double> viol) {
    EvaluatedSolution e;
    e.objective_value = obj;
    e.violations = std::move(viol);
    return e;
}

Outcome check_ranking_laws() {
    Rng rng(42);
    const int trials = 10000;
    int failures = 0;

    auto rand_violations = [&](std::size_t len) {
        std::vector<double> v(len);
        for (auto& x : v) x = rng.uniform01() < 0.4 ? 0.0 : rng.uniform_int(1, 5);
        return v;
    };

    for (int t = 0; t < trials; ++t) {
        std::size_t len = static_cast<std::size_t>(rng.uniform_int(1, 4));
        Sense sense = rng.uniform01() < 0.5 ? Sense::Min : Sense::Max;
        auto a = synth(rng.uniform_int(0, 50), rand_violations(len));
        auto b = synth(rng.uniform_int(0, 50), rand_violations(len));
        auto c = synth(rng.uniform_int(0, 50), rand_violations(len));

        // Antisymmetry of the pairwise comparison.
        Cmp ab = compare(a, b, sense), ba = compare(b, a, sense);
        if ((ab == Cmp::Better) != (ba == Cmp::Worse)) ++failures;
        if ((ab == Cmp::Equal) != (ba == Cmp::Equal)) ++failures;

        // Dominance: irreflexive, asymmetric, transitive.
        if (dominates(a.violations, a.violations)) ++failures;
        if (dominates(a.violations, b.violations) && dominates(b.violations, a.violations))
            ++failures;
        if (dominates(a.violations, b.violations) && dominates(b.violations, c.violations) &&
            !dominates(a.violations, c.violations))
            ++failures;

        // Layering: the ranked population never puts an infeasible solution
        // above a feasible one.
        std::vector<EvaluatedSolution> pop = {a, b, c};
        for (int extra = rng.uniform_int(0, 3); extra > 0; --extra)
            pop.push_back(synth(rng.uniform_int(0, 50), rand_violations(len)));
        auto ranks = rank_solutions(pop, sense);
        bool seen_infeasible = false;
        for (const auto& r : ranks) {
            bool feas = pop[r.index].feasible();
            if (!feas) seen_infeasible = true;
            if (feas && seen_infeasible) ++failures;
        }

        // Positive scaling leaves the ranked order untouched.
        double lambda = 0.25 + 4.0 * rng.uniform01();
        std::vector<EvaluatedSolution> scaled = pop;
        for (auto& e : scaled) {
            e.objective_value *= lambda;
            for (auto& v : e.violations) v *= lambda;
        }
        auto ranks2 = rank_solutions(scaled, sense);
        for (std::size_t k = 0; k < ranks.size(); ++k)
            if (ranks[k].index != ranks2[k].index) ++failures;
    }
    return {failures == 0,
            std::to_string(trials) + " trials, " + std::to_string(failures) + " law violations"};
}

// ---------------------------------------------------------------------------
// Criterion 3: constraint residual hand cases (an inequality residual of -3
// contributes 0, an equality residual of -3 contributes 3) and exact
// reduction of the resource-aggregate template to the count-limit and
// capacity forms.

Outcome check_constraint_evaluator() {
    int failures = 0;

    // Hand cases through a custom constraint pair.
    auto model = assigned_count_model(1, 2, false);
    CustomConstraint g;
    g.residuals = [](const SolutionStructure&, const AttributeSet&) {
        return std::vector<double>{-3.0};
    };
    CustomConstraint h;
    h.residuals = g.residuals;
    h.equality = true;
    model.constraints.push_back({"g", std::move(g)});
    model.constraints.push_back({"h", std::move(h)});
    auto e = evaluate(model, {{{1, 2}}});
    if (e.violations[0] != 0.0) ++failures;
    if (e.violations[1] != 3.0) ++failures;

    // Template reduction: with unit coefficients the resource aggregate is a
    // per-resource count limit; with per-task weights it is a knapsack
    // capacity. Both must match the directly computed residuals exactly.
    Rng rng(77);
    for (int t = 0; t < 200; ++t) {
        int m = rng.uniform_int(1, 3), n = rng.uniform_int(1, 6);
        std::vector<double> weights(static_cast<std::size_t>(n + 1));
        for (int j = 1; j <= n; ++j) weights[static_cast<std::size_t>(j)] = rng.uniform_int(1, 9);

        auto tm = assigned_count_model(m, n, false);
        ResourceAggregate count_limit;
        count_limit.coeff = [](int, int, int) { return 1.0; };
        count_limit.thresholds.assign(static_cast<std::size_t>(m), 2.0);
        tm.constraints.push_back({"count", std::move(count_limit)});
        ResourceAggregate capacity;
        capacity.coeff = [weights](int, int j, int) { return weights[static_cast<std::size_t>(j)]; };
        capacity.thresholds.assign(static_cast<std::size_t>(m), 10.0);
        tm.constraints.push_back({"cap", std::move(capacity)});

        SolutionStructure s = SolutionStructure::empty_for(m);
        for (int j = 1; j <= n; ++j) {
            int pick = rng.uniform_int(0, m);
            if (pick > 0) s.per_resource[static_cast<std::size_t>(pick - 1)].push_back(j);
        }
        auto ev = evaluate(tm, s);
        double count_expect = 0, cap_expect = 0;
        for (const auto& sub : s.per_resource) {
            count_expect += std::max(0.0, static_cast<double>(sub.size()) - 2.0);
            double load = 0;
            for (int j : sub) load += weights[static_cast<std::size_t>(j)];
            cap_expect += std::max(0.0, load - 10.0);
        }
        if (ev.violations[0] != count_expect) ++failures;
        if (ev.violations[1] != cap_expect) ++failures;
    }
    return {failures == 0, "hand cases and 200 template-reduction trials, " +
                               std::to_string(failures) + " mismatches"};
}

// ---------------------------------------------------------------------------
// Criterion 4: learned-selection unit laws: the reward takes every value in
// {-2..2} on constructed cases and nothing outside; the update rule has the
// advertised fixed points; greedy selection stays inside the top-20% pool.

Outcome check_qlearning_laws() {
    int failures = 0;
    auto model = assigned_count_model(1, 3, false);
    model.objective.sense = Sense::Min;

    auto sol = [](double obj, std::vector<double> viol) {
        EvaluatedSolution e;
        e.objective_value = obj;
        e.violations = std::move(viol);
        return e;
    };

    // Reward branches.
    if (reward(model, sol(5, {0}), std::nullopt) != -2) ++failures;                  // unreachable
    if (reward(model, sol(5, {1}), sol(9, {2})) != -1) ++failures;                   // dominated
    if (reward(model, sol(5, {0}), sol(5, {0})) != 0) ++failures;                    // equal
    if (reward(model, sol(5, {0}), sol(9, {0})) != 1) ++failures;                    // worse obj only
    if (reward(model, sol(5, {0}), sol(3, {0})) != 2) ++failures;                    // better
    Rng rrng(5);
    for (int t = 0; t < 2000; ++t) {
        auto a = sol(rrng.uniform_int(0, 9), {static_cast<double>(rrng.uniform_int(0, 3))});
        auto b = sol(rrng.uniform_int(0, 9), {static_cast<double>(rrng.uniform_int(0, 3))});
        int r = reward(model, a, b);
        if (r < -2 || r > 2) ++failures;
    }

    // Update fixed points.
    QState s0;
    s0.s = {1, 1, 1, 1, 1, 1, 1, 1, 1, 1};
    QState s1 = s0;
    s1.s[0] = 2;
    QTable table;
    update_q(table, s0, 3, 2, s1, /*alpha=*/1.0, /*gamma=*/0.0);
    if (table.value(s0, 3) != 2.0) ++failures; // alpha=1, gamma=0 pins Q to r
    double before = table.value(s0, 3);
    update_q(table, s0, 3, -2, s1, /*alpha=*/0.0, /*gamma=*/0.9);
    if (table.value(s0, 3) != before) ++failures; // alpha=0 never moves Q

    // Greedy selection confinement: with epsilon=0 only the two highest-Q
    // actions (top ceil(0.2 * 10)) may ever be chosen.
    QTable greedy;
    std::array<double, kNumNeighborhoods> row{};
    row[4] = 5.0;
    row[7] = 4.0;
    greedy.q[s0.key()] = row;
    Rng srng(11);
    for (int t = 0; t < 10000; ++t) {
        int a = select_action(greedy, s0, 0.0, srng);
        if (a != 4 && a != 7) ++failures;
    }
    return {failures == 0, "reward codomain, update fixed points and greedy pool, " +
                               std::to_string(failures) + " violations"};
}

// ---------------------------------------------------------------------------
// Criterion 5: the learned neighborhood selection should produce mean gaps no
// worse than random selection on at least 8 of the 10 fixtures and no worse
// than adaptive selection on at least 6 of 10. Five runs per cell under a
// fixed evaluation budget (deterministic stand-in for 60-second runs).

Outcome check_direction() {
    const std::vector<std::string> algos = {"qvns", "avns", "rvns"};
    const std::uint64_t budget = 1'000'000;
    std::map<std::string, std::map<std::string, double>> mean_gap; // fixture -> algo -> gap
    auto fixtures = all_fixtures();
    for (const auto& f : fixtures) {
        auto model = build_model(f.instance);
        for (const auto& algo : algos) {
            double total = 0;
            for (int r = 0; r < 5; ++r) {
                auto cfg = solver_config_for(algo);
                cfg.eval_budget = budget;
                cfg.seed = 9000 + static_cast<std::uint64_t>(r);
                auto rep = run(model, cfg);
                // An infeasible final solution counts as a large fixed gap.
                total += rep.best.feasible()
                             ? compute_gap(rep.best.objective_value, f.lower_bound,
                                           model.objective.sense)
                             : 10.0;
            }
            mean_gap[f.id][algo] = total / 5.0;
        }
    }
    int q_le_r = 0, q_le_a = 0;
    std::string table;
    for (const auto& f : fixtures) {
        const auto& g = mean_gap[f.id];
        if (g.at("qvns") <= g.at("rvns") + 1e-9) ++q_le_r;
        if (g.at("qvns") <= g.at("avns") + 1e-9) ++q_le_a;
        char buf[128];
        std::snprintf(buf, sizeof buf, " %s q=%.4f a=%.4f r=%.4f;", f.id.c_str(), g.at("qvns"),
                      g.at("avns"), g.at("rvns"));
        table += buf;
    }
    bool pass = q_le_r >= 8 && q_le_a >= 6;
    return {pass, "learned<=random on " + std::to_string(q_le_r) +
                      "/10 (need >=8), learned<=adaptive on " + std::to_string(q_le_a) +
                      "/10 (need >=6);" + table};
}

// ---------------------------------------------------------------------------
// Criterion 6: 10^5 fuzzed operator applications on random small models only
// ever produce well-formed structures, and accepted insert moves never
// increase any violation component.

Outcome check_feasibility_preservation() {
    Rng rng(2024);
    int failures = 0;
    const int total = 100000;
    int applied = 0;
    while (applied < total) {
        int m = rng.uniform_int(1, 3), n = rng.uniform_int(2, 6);
        auto model = assigned_count_model(m, n, rng.uniform01() < 0.5);
        if (rng.uniform01() < 0.5) model.constraints.push_back(once_constraint(n));
        SearchContext ctx{model, rng};
        auto cur = initial_solution(ctx);
        for (int step = 0; step < 40 && applied < total; ++step, ++applied) {
            int op = rng.uniform_int(0, kNumNeighborhoods + 2);
            if (op < kNumNeighborhoods) {
                auto kind = static_cast<NeighborhoodKind>(op);
                auto next = apply_neighborhood(ctx, cur, kind);
                if (!next) continue;
                if (!well_formed(model, next->structure)) ++failures;
                if (kind == NeighborhoodKind::Insert || kind == NeighborhoodKind::RemoveInsert) {
                    if (kind == NeighborhoodKind::Insert)
                        for (std::size_t c = 0; c < cur.violations.size(); ++c)
                            if (next->violations[c] > cur.violations[c] + 1e-12) ++failures;
                }
                cur = *next;
            } else if (op == kNumNeighborhoods) {
                cur = destroy_repair(ctx, cur, rng.uniform_int(0, n));
                if (!well_formed(model, cur.structure)) ++failures;
            } else {
                auto mate = initial_solution(ctx);
                auto child = m == 1 ? single_point_crossover(ctx, cur, mate)
                                    : two_point_crossover(ctx, cur, mate);
                if (!well_formed(model, child.structure)) ++failures;
                cur = child;
            }
        }
    }
    return {failures == 0,
            std::to_string(total) + " applications, " + std::to_string(failures) + " violations"};
}

// ---------------------------------------------------------------------------
// Criterion 7: per-iteration cost scaling under task doubling with fixed
// resource shape: roughly linear for the single-move algorithms, roughly
// quadratic for the rebuild-heavy ones, within a factor-2 slope tolerance
// over three doublings.

ProblemModel scaling_model(int n, std::uint64_t seed) {
    const int m = 4;
    Rng rng(seed);
    GapInstance inst;
    inst.capacities.resize(m);
    inst.demand.assign(m, std::vector<double>(static_cast<std::size_t>(n)));
    inst.cost.assign(m, std::vector<double>(static_cast<std::size_t>(n)));
    double total = 0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            inst.demand[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                rng.uniform_int(1, 9);
            inst.cost[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                rng.uniform_int(1, 20);
        }
    for (int j = 0; j < n; ++j) total += inst.demand[0][static_cast<std::size_t>(j)];
    for (int i = 0; i < m; ++i)
        inst.capacities[static_cast<std::size_t>(i)] = std::ceil(1.8 * total / m);
    return model_gap(inst);
}

Outcome check_complexity_scaling() {
    const std::vector<int> sizes = {16, 32, 64, 128};
    struct Case {
        Variant variant;
        double max_slope; // expected slope + factor-2 tolerance (one doubling)
    };
    const std::vector<Case> cases = {{Variant::SA, 2.0},
                                     {Variant::TS, 2.0},
                                     {Variant::VNS, 2.0},
                                     {Variant::LNS, 3.0},
                                     {Variant::GA, 3.0}};
    std::string detail;
    bool pass = true;
    for (const auto& c : cases) {
        std::vector<double> per_iter;
        for (int n : sizes) {
            auto model = scaling_model(n, 31337);
            double best = std::numeric_limits<double>::infinity();
            for (int rep = 0; rep < 3; ++rep) { // min of 3 to dampen timer noise
                SolverConfig cfg;
                cfg.variant = c.variant;
                cfg.eval_budget = c.variant == Variant::LNS || c.variant == Variant::GA
                                      ? 60000
                                      : 25000;
                cfg.seed = 13 + static_cast<std::uint64_t>(rep);
                cfg.perturbation_trigger = 1 << 30; // isolate the core move loop
                auto t0 = std::chrono::steady_clock::now();
                auto r = run(model, cfg);
                double ms = std::chrono::duration<double, std::milli>(
                                std::chrono::steady_clock::now() - t0)
                                .count();
                best = std::min(best, ms / static_cast<double>(std::max<std::uint64_t>(
                                          1, r.outer_iterations)));
            }
            per_iter.push_back(best);
        }
        double slope = std::log2(per_iter.back() / per_iter.front()) /
                       static_cast<double>(sizes.size() - 1);
        char buf[96];
        std::snprintf(buf, sizeof buf, " %s slope=%.2f (max %.1f);", variant_name(c.variant),
                      slope, c.max_slope);
        detail += buf;
        if (slope > c.max_slope) pass = false;
    }
    return {pass, "per-iteration time slope per task doubling:" + detail};
}

// ---------------------------------------------------------------------------
// Criterion 8: running the same bench configuration twice produces
// byte-identical result and trace files.

std::map<std::string, std::string> slurp_tree(const fs::path& root) {
    std::map<std::string, std::string> files;
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
        if (!entry.is_regular_file()) continue;
        std::ifstream in(entry.path(), std::ios::binary);
        std::stringstream buf;
        buf << in.rdbuf();
        files[fs::relative(entry.path(), root).string()] = buf.str();
    }
    return files;
}

Outcome check_determinism() {
    ExperimentConfig cfg;
    for (const char* id : {"T-GAP-1", "M-GC-1", "M-VRPTW-1"}) {
        auto f = fixture_by_id(id);
        BenchInstance bi;
        bi.id = f.id;
        bi.instance = f.instance;
        bi.lower_bound = f.lower_bound;
        bi.has_lower_bound = true;
        cfg.instances.push_back(bi);
    }
    cfg.algorithms = {"sa", "qvns", "ga"};
    cfg.runs = 2;
    cfg.eval_budget = 20000;
    cfg.base_seed = 500;
    cfg.threads = 2;

    auto base = fs::temp_directory_path();
    fs::path a = base / "rems_accept_a", b = base / "rems_accept_b";
    fs::remove_all(a);
    fs::remove_all(b);
    cfg.out_dir = a.string();
    run_experiment(cfg);
    cfg.out_dir = b.string();
    run_experiment(cfg);

    auto ta = slurp_tree(a), tb = slurp_tree(b);
    int mismatches = 0;
    if (ta.size() != tb.size() || ta.empty()) ++mismatches;
    for (const auto& [rel, content] : ta) {
        auto it = tb.find(rel);
        if (it == tb.end() || it->second != content) ++mismatches;
    }
    fs::remove_all(a);
    fs::remove_all(b);
    return {mismatches == 0, std::to_string(ta.size()) + " files compared, " +
                                 std::to_string(mismatches) + " mismatches"};
}

} // namespace

int main() {
    int failures = 0;
    report("oracle-optimality", check_oracle_optimality(), failures);
    report("ranking-laws", check_ranking_laws(), failures);
    report("constraint-evaluator", check_constraint_evaluator(), failures);
    report("selection-learning-laws", check_qlearning_laws(), failures);
    report("learned-selection-direction", check_direction(), failures);
    report("feasibility-preservation", check_feasibility_preservation(), failures);
    report("complexity-scaling", check_complexity_scaling(), failures);
    report("output-determinism", check_determinism(), failures);
    return failures;
}
