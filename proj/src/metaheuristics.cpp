#include "rems/metaheuristics.hpp"

#include <chrono>
#include <cmath>
#include <deque>

namespace rems {

Variant variant_from_string(const std::string& name) {
    if (name == "sa") return Variant::SA;
    if (name == "ts") return Variant::TS;
    if (name == "vns") return Variant::VNS;
    if (name == "lns") return Variant::LNS;
    if (name == "ga") return Variant::GA;
    throw InvalidConfig("unknown algorithm: " + name);
}

const char* variant_name(Variant v) {
    switch (v) {
    case Variant::SA: return "sa";
    case Variant::TS: return "ts";
    case Variant::VNS: return "vns";
    case Variant::LNS: return "lns";
    case Variant::GA: return "ga";
    }
    return "?";
}

void SolverConfig::validate() const {
    if (candidates < 1) throw InvalidConfig("candidate count must be >= 1");
    if (perturbation_trigger < 1) throw InvalidConfig("perturbation trigger must be >= 1");
    if (time_limit_s <= 0 && eval_budget == 0)
        throw InvalidConfig("either a time limit or an evaluation budget is required");
    if (variant == Variant::GA && popsize < 2) throw InvalidConfig("GA popsize must be >= 2");
    if (p_c < 0 || p_c > 1 || p_m < 0 || p_m > 1)
        throw InvalidConfig("crossover/mutation rates must be in [0, 1]");
}

namespace {

using Clock = std::chrono::steady_clock;

// Time keeping for a run. With only an evaluation budget set, reported time is
// virtual (1 evaluation = 1 ms) so identical configs give byte-identical
// reports.
struct RunTimer {
    Clock::time_point start = Clock::now();
    const SolverConfig& config;
    const SearchContext& ctx;

    bool virtual_time() const { return config.time_limit_s <= 0; }

    double elapsed_ms() const {
        if (virtual_time()) return static_cast<double>(ctx.evals);
        return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    }

    double real_ms() const {
        return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    }

    bool expired() const {
        if (config.eval_budget > 0 && ctx.evals >= config.eval_budget) return true;
        if (config.time_limit_s > 0 && real_ms() >= config.time_limit_s * 1000.0) return true;
        return false;
    }

    // Fraction of the budget consumed, for annealed parameters.
    double progress() const {
        double p = 0;
        if (config.eval_budget > 0)
            p = std::max(p, static_cast<double>(ctx.evals) / static_cast<double>(config.eval_budget));
        if (config.time_limit_s > 0) p = std::max(p, real_ms() / (config.time_limit_s * 1000.0));
        return std::min(1.0, p);
    }
};

struct BestTracker {
    RunReport& report;
    const RunTimer& timer;
    const SearchContext& ctx;
    Sense sense;

    void record() {
        report.trace.push_back({timer.elapsed_ms(), ctx.evals, report.best.objective_value,
                                report.best.violation_sum()});
    }

    // Returns true when the candidate improved the incumbent.
    bool offer(const EvaluatedSolution& cand) {
        if (compare(cand, report.best, sense) != Cmp::Better) return false;
        report.best = cand;
        record();
        return true;
    }
};

bool target_reached(const SolverConfig& config, const EvaluatedSolution& best, Sense sense) {
    if (std::isnan(config.target_objective)) return false;
    if (!best.feasible()) return false;
    return sense == Sense::Min ? best.objective_value <= config.target_objective
                               : best.objective_value >= config.target_objective;
}

// Assignment diff used as the tabu attribute: (task, resource) pairs present
// in exactly one of the two structures.
std::vector<std::pair<int, int>> changed_assignments(const SolutionStructure& a,
                                                     const SolutionStructure& b, int n) {
    auto count = [&](const SolutionStructure& s) {
        std::vector<std::vector<int>> c(s.per_resource.size(),
                                        std::vector<int>(static_cast<std::size_t>(n) + 1, 0));
        for (std::size_t i = 0; i < s.per_resource.size(); ++i)
            for (int j : s.per_resource[i]) ++c[i][static_cast<std::size_t>(j)];
        return c;
    };
    auto ca = count(a), cb = count(b);
    std::vector<std::pair<int, int>> out;
    for (std::size_t i = 0; i < ca.size(); ++i)
        for (int j = 1; j <= n; ++j)
            if (ca[i][static_cast<std::size_t>(j)] != cb[i][static_cast<std::size_t>(j)])
                out.emplace_back(j, static_cast<int>(i) + 1);
    return out;
}

} // namespace

RunReport run_single_point(const ProblemModel& model, const SolverConfig& config) {
    config.validate();
    if (config.variant == Variant::GA)
        throw InvalidConfig("run_single_point does not handle GA");

    Rng rng(config.seed);
    SearchContext ctx{model, rng};
    RunTimer timer{Clock::now(), config, ctx};
    Sense sense = model.objective.sense;

    RunReport report;
    report.seed = config.seed;

    EvaluatedSolution current = initial_solution(ctx);
    report.best = current;
    BestTracker tracker{report, timer, ctx, sense};
    tracker.record();

    if (model.n() == 0) {
        report.evaluations = ctx.evals;
        report.wall_ms = timer.real_ms();
        return report;
    }

    NeighborhoodSelector selector(config.qlearn,
                                  config.variant == Variant::VNS ? config.vns_mode
                                                                 : SelectMode::QLearning);

    int niter = 0;
    double temperature = config.sa_initial_temp;
    int vns_cycle = 0;

    // TS state: attribute -> expiry iteration
    std::map<std::pair<int, int>, std::uint64_t> tabu;

    while (!timer.expired() && !target_reached(config, report.best, sense)) {
        ++report.outer_iterations;

        std::vector<EvaluatedSolution> cands;
        cands.reserve(static_cast<std::size_t>(config.candidates));
        for (int c = 0; c < config.candidates; ++c) {
            switch (config.variant) {
            case Variant::LNS: {
                int hi = std::max(1, static_cast<int>(std::ceil(config.lns_destroy_frac * model.n())));
                int nd = std::max(1, static_cast<int>(std::lround(hi - (hi - 1) * timer.progress())));
                cands.push_back(destroy_repair(ctx, current, nd));
                break;
            }
            case Variant::VNS:
                // First candidate follows the systematic neighborhood change;
                // the rest go through the configured selection mode.
                if (c == 0 && vns_cycle > 0)
                    cands.push_back(selector.propose(
                        ctx, current,
                        static_cast<NeighborhoodKind>(vns_cycle % kNumNeighborhoods)));
                else
                    cands.push_back(selector.propose(ctx, current));
                break;
            default:
                cands.push_back(selector.propose(ctx, current));
                break;
            }
        }

        // Best candidate by pairwise comparison; TS skips tabu candidates
        // unless they beat the incumbent (aspiration).
        std::uint64_t iter = report.outer_iterations;
        auto is_tabu = [&](const EvaluatedSolution& cand) {
            for (auto& attr : changed_assignments(current.structure, cand.structure, model.n())) {
                auto it = tabu.find(attr);
                if (it != tabu.end() && it->second >= iter) return true;
            }
            return false;
        };

        const EvaluatedSolution* subopt = nullptr;
        const EvaluatedSolution* fallback = nullptr;
        for (const auto& cand : cands) {
            if (!fallback || compare(cand, *fallback, sense) == Cmp::Better) fallback = &cand;
            if (config.variant == Variant::TS && is_tabu(cand) &&
                compare(cand, report.best, sense) != Cmp::Better)
                continue;
            if (!subopt || compare(cand, *subopt, sense) == Cmp::Better) subopt = &cand;
        }
        if (!subopt) subopt = fallback; // all candidates tabu

        bool improved_best = tracker.offer(*subopt);
        niter = improved_best ? 0 : niter + 1;

        // Variant acceptance criterion.
        Cmp vs_current = compare(*subopt, current, sense);
        bool accept = false;
        switch (config.variant) {
        case Variant::SA: {
            if (vs_current != Cmp::Worse) {
                accept = true;
            } else if (current.feasible() && subopt->feasible()) {
                double delta = sense == Sense::Min
                                   ? subopt->objective_value - current.objective_value
                                   : current.objective_value - subopt->objective_value;
                accept = rng.uniform01() < std::exp(-delta / std::max(temperature, 1e-12));
            } else if (dominates(current.violations, subopt->violations) ||
                       (current.feasible() && !subopt->feasible())) {
                double delta = subopt->violation_sum() - current.violation_sum();
                accept = rng.uniform01() < std::exp(-delta / std::max(temperature, 1e-12));
            } else {
                accept = true; // worse but not dominated-worse
            }
            temperature *= config.sa_cooling;
            break;
        }
        case Variant::TS: {
            accept = true;
            double tenure_f = config.ts_tenure_high -
                              (config.ts_tenure_high - config.ts_tenure_low) * timer.progress();
            auto tenure = static_cast<std::uint64_t>(std::max(1.0, tenure_f));
            for (auto& attr : changed_assignments(current.structure, subopt->structure, model.n()))
                tabu[attr] = iter + tenure;
            break;
        }
        case Variant::VNS:
            accept = vs_current == Cmp::Better;
            vns_cycle = accept ? 0 : vns_cycle + 1;
            break;
        case Variant::LNS:
            accept = vs_current != Cmp::Worse;
            break;
        default:
            break;
        }
        if (accept) current = *subopt;

        if (niter >= config.perturbation_trigger) {
            int nd = static_cast<int>(
                std::ceil(0.5 * static_cast<double>(current.structure.total_assigned())));
            current = destroy_repair(ctx, current, nd);
            tracker.offer(current);
            report.events.push_back({timer.elapsed_ms(), "perturbation"});
            niter = 0;
        }
    }

    tracker.record();
    report.evaluations = ctx.evals;
    report.wall_ms = timer.real_ms();
    return report;
}

RunReport run_ga(const ProblemModel& model, const SolverConfig& config) {
    config.validate();
    if (config.variant != Variant::GA) throw InvalidConfig("run_ga requires the GA variant");

    Rng rng(config.seed);
    SearchContext ctx{model, rng};
    RunTimer timer{Clock::now(), config, ctx};
    Sense sense = model.objective.sense;

    RunReport report;
    report.seed = config.seed;

    std::vector<EvaluatedSolution> pop;
    pop.reserve(static_cast<std::size_t>(config.popsize));
    for (int i = 0; i < config.popsize; ++i) pop.push_back(initial_solution(ctx));

    report.best = pop[0];
    BestTracker tracker{report, timer, ctx, sense};
    for (const auto& ind : pop)
        if (compare(ind, report.best, sense) == Cmp::Better) report.best = ind;
    tracker.record();

    if (model.n() == 0) {
        report.evaluations = ctx.evals;
        report.wall_ms = timer.real_ms();
        return report;
    }

    // Mutation picks a uniformly random neighborhood structure.
    NeighborhoodSelector selector(config.qlearn, SelectMode::Random);

    while (!timer.expired() && !target_reached(config, report.best, sense)) {
        ++report.outer_iterations;
        std::uint64_t evals_before = ctx.evals;

        auto offspring = crossover_operation(ctx, pop, config.p_c);
        for (auto& child : offspring)
            if (rng.uniform01() < config.p_m) {
                auto kind = static_cast<NeighborhoodKind>(rng.uniform_int(0, kNumNeighborhoods - 1));
                child = selector.propose(ctx, child, kind);
            }

        std::vector<EvaluatedSolution> mixpop = pop;
        mixpop.insert(mixpop.end(), offspring.begin(), offspring.end());
        auto ranks = rank_solutions(mixpop, sense);

        tracker.offer(mixpop[ranks.front().index]);

        // Elitism: best 10% of mixpop pass through, remainder by 2-tournament.
        auto elite_count = static_cast<std::size_t>(std::ceil(0.1 * static_cast<double>(mixpop.size())));
        elite_count = std::min(elite_count, static_cast<std::size_t>(config.popsize));
        std::vector<EvaluatedSolution> next;
        next.reserve(static_cast<std::size_t>(config.popsize));
        for (std::size_t e = 0; e < elite_count; ++e) next.push_back(mixpop[ranks[e].index]);
        while (next.size() < static_cast<std::size_t>(config.popsize)) {
            std::size_t a = rng.uniform_index(mixpop.size());
            std::size_t b = rng.uniform_index(mixpop.size());
            next.push_back(compare(mixpop[b], mixpop[a], sense) == Cmp::Better ? mixpop[b]
                                                                               : mixpop[a]);
        }
        pop = std::move(next);

        // A generation that copied everyone (p_c = p_m = 0) performs no
        // evaluations; charge one so an evaluation budget still expires.
        if (ctx.evals == evals_before) ++ctx.evals;
    }

    tracker.record();
    report.evaluations = ctx.evals;
    report.wall_ms = timer.real_ms();
    return report;
}

RunReport run(const ProblemModel& model, const SolverConfig& config) {
    return config.variant == Variant::GA ? run_ga(model, config) : run_single_point(model, config);
}

} // namespace rems
