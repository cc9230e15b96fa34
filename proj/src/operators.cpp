#include "rems/operators.hpp"

#include <algorithm>
#include <cmath>

namespace rems {

const char* neighborhood_name(NeighborhoodKind k) {
    switch (k) {
    case NeighborhoodKind::SwapIntra: return "swap_intra";
    case NeighborhoodKind::SwapInter: return "swap_inter";
    case NeighborhoodKind::ShiftIntra: return "shift_intra";
    case NeighborhoodKind::ShiftInter: return "shift_inter";
    case NeighborhoodKind::ShiftAllInter: return "shift_all_inter";
    case NeighborhoodKind::Remove: return "remove";
    case NeighborhoodKind::Insert: return "insert";
    case NeighborhoodKind::RemoveInsert: return "remove_insert";
    case NeighborhoodKind::ReverseIntra: return "reverse_intra";
    case NeighborhoodKind::ReverseInter: return "reverse_inter";
    }
    return "?";
}

namespace {

bool violations_non_increasing(const std::vector<double>& next, const std::vector<double>& prev) {
    for (std::size_t i = 0; i < next.size(); ++i)
        if (next[i] > prev[i] + kFeasTol) return false;
    return true;
}

double relation_violation(double expr, double theta, Relation rel) {
    switch (rel) {
    case Relation::Le: return std::max(0.0, expr - theta);
    case Relation::Ge: return std::max(0.0, theta - expr);
    case Relation::Eq: return std::abs(expr - theta);
    }
    return 0.0;
}

// Resource of the first occurrence of each task, 0 if unassigned.
std::vector<int> task_resource(const SolutionStructure& s, int n) {
    std::vector<int> res(static_cast<std::size_t>(n) + 1, 0);
    for (int i = 1; i <= s.resource_count(); ++i)
        for (int j : s.per_resource[static_cast<std::size_t>(i - 1)])
            if (res[static_cast<std::size_t>(j)] == 0) res[static_cast<std::size_t>(j)] = i;
    return res;
}

// Resources whose count/capacity style limits (upper-bounded resource
// aggregates) still leave room, used as the FR prefilter. The ranking
// acceptance remains the final gate.
std::vector<int> feasible_resources(const ProblemModel& model, const SolutionStructure& s) {
    std::vector<int> fr;
    for (int i = 1; i <= model.m(); ++i) {
        const auto& sub = s.per_resource[static_cast<std::size_t>(i - 1)];
        if (static_cast<int>(sub.size()) >= model.capacity(i)) continue;
        bool ok = true;
        for (const auto& c : model.constraints) {
            const auto* a = std::get_if<ResourceAggregate>(&c.body);
            if (!a || a->rel != Relation::Le) continue;
            double expr = 0;
            for (int k = 1; k <= static_cast<int>(sub.size()); ++k)
                expr += a->coeff(i, sub[static_cast<std::size_t>(k - 1)], k);
            if (expr >= a->thresholds[static_cast<std::size_t>(i - 1)] - kFeasTol) {
                ok = false;
                break;
            }
        }
        if (ok) fr.push_back(i);
    }
    return fr;
}

// Tasks insertable into resource i without worsening the task-aggregate,
// pairing or resource-task-aggregate constraints.
std::vector<int> feasible_tasks(const ProblemModel& model, const SolutionStructure& s, int i) {
    int n = model.n();
    int next_pos = static_cast<int>(s.per_resource[static_cast<std::size_t>(i - 1)].size()) + 1;
    std::vector<bool> ok(static_cast<std::size_t>(n) + 1, true);

    std::vector<int> res = task_resource(s, n);

    for (const auto& c : model.constraints) {
        if (const auto* a = std::get_if<TaskAggregate>(&c.body)) {
            std::vector<double> expr(static_cast<std::size_t>(n) + 1, 0.0);
            for (int r = 1; r <= model.m(); ++r) {
                const auto& sub = s.per_resource[static_cast<std::size_t>(r - 1)];
                for (int k = 1; k <= static_cast<int>(sub.size()); ++k)
                    expr[static_cast<std::size_t>(sub[static_cast<std::size_t>(k - 1)])] +=
                        a->coeff(r, sub[static_cast<std::size_t>(k - 1)], k);
            }
            for (int j = 1; j <= n; ++j) {
                double theta = a->thresholds[static_cast<std::size_t>(j - 1)];
                double before = relation_violation(expr[static_cast<std::size_t>(j)], theta, a->rel);
                double after = relation_violation(
                    expr[static_cast<std::size_t>(j)] + a->coeff(i, j, next_pos), theta, a->rel);
                if (after > before + kFeasTol) ok[static_cast<std::size_t>(j)] = false;
            }
        } else if (const auto* p = std::get_if<Pairing>(&c.body)) {
            for (auto [j1, j2] : p->pairs) {
                auto check = [&](int j, int partner) {
                    int pr = res[static_cast<std::size_t>(partner)];
                    if (pr == 0) return;
                    if (p->mode == PairingMode::SameResource ? pr != i : pr == i)
                        ok[static_cast<std::size_t>(j)] = false;
                };
                check(j1, j2);
                check(j2, j1);
            }
        } else if (const auto* rt = std::get_if<ResourceTaskAggregate>(&c.body)) {
            const auto& sub = s.per_resource[static_cast<std::size_t>(i - 1)];
            std::vector<double> expr(static_cast<std::size_t>(n) + 1, 0.0);
            for (int k = 1; k <= static_cast<int>(sub.size()); ++k)
                expr[static_cast<std::size_t>(sub[static_cast<std::size_t>(k - 1)])] +=
                    rt->coeff(i, sub[static_cast<std::size_t>(k - 1)], k);
            for (int j = 1; j <= n; ++j) {
                double theta = rt->threshold(i, j);
                double before = relation_violation(expr[static_cast<std::size_t>(j)], theta, rt->rel);
                double after = relation_violation(
                    expr[static_cast<std::size_t>(j)] + rt->coeff(i, j, next_pos), theta, rt->rel);
                if (after > before + kFeasTol) ok[static_cast<std::size_t>(j)] = false;
            }
        }
    }

    std::vector<int> ft;
    for (int j = 1; j <= n; ++j)
        if (ok[static_cast<std::size_t>(j)]) ft.push_back(j);
    return ft;
}

// Insertable positions for task j on resource i, filtered by precedence
// pairs. Positions are 1-based insertion slots.
std::vector<int> feasible_positions(const ProblemModel& model, const SolutionStructure& s, int i,
                                    int j) {
    const auto& sub = s.per_resource[static_cast<std::size_t>(i - 1)];
    int len = static_cast<int>(sub.size());
    std::vector<int> cand;
    if (model.ordered)
        for (int p = 1; p <= len + 1; ++p) cand.push_back(p);
    else
        cand.push_back(len + 1);

    for (const auto& c : model.constraints) {
        const auto* pr = std::get_if<Precedence>(&c.body);
        if (!pr) continue;
        for (auto [before, after] : pr->pairs) {
            if (before != j && after != j) continue;
            for (int k = 1; k <= len; ++k) {
                int t = sub[static_cast<std::size_t>(k - 1)];
                if (j == after && t == before) {
                    // "before" at old position k shifts past any insertion at p <= k.
                    std::erase_if(cand, [&](int p) { return p <= k; });
                } else if (j == before && t == after) {
                    std::erase_if(cand, [&](int p) { return p > k; });
                }
            }
        }
    }
    return cand;
}

SolutionStructure with_insertion(const SolutionStructure& s, int i, int j, int pos) {
    SolutionStructure out = s;
    auto& sub = out.per_resource[static_cast<std::size_t>(i - 1)];
    sub.insert(sub.begin() + (pos - 1), j);
    return out;
}

} // namespace

AssignStatus feasible_assignment(SearchContext& ctx, ConstructionState& state,
                                 bool require_non_increasing) {
    const ProblemModel& model = ctx.model;
    std::vector<int> fr = feasible_resources(model, state.current.structure);
    std::erase_if(fr, [&](int i) { return state.infeasible_resources.count(i) > 0; });
    if (fr.empty()) return AssignStatus::NoFeasibleResource;

    int i = ctx.rng.pick(fr);
    auto& inT = state.infeasible_tasks[static_cast<std::size_t>(i - 1)];

    std::vector<int> ft = feasible_tasks(model, state.current.structure, i);
    std::erase_if(ft, [&](int j) { return inT.count(j) > 0; });
    if (ft.empty()) {
        state.infeasible_resources.insert(i);
        return AssignStatus::Rejected;
    }

    int j = ctx.rng.pick(ft);
    auto reject_task = [&] {
        inT.insert(j);
        if (static_cast<int>(inT.size()) >= model.n())
            state.infeasible_resources.insert(i);
        return AssignStatus::Rejected;
    };

    std::vector<int> fp = feasible_positions(model, state.current.structure, i, j);
    if (fp.empty()) return reject_task();

    std::optional<EvaluatedSolution> best;
    for (int p : fp) {
        EvaluatedSolution cand = ctx.eval(with_insertion(state.current.structure, i, j, p));
        if (!best || compare(cand, *best, model.objective.sense) == Cmp::Better)
            best = std::move(cand);
    }

    bool acceptable = compare(*best, state.current, model.objective.sense) != Cmp::Worse;
    if (acceptable && require_non_increasing)
        acceptable = violations_non_increasing(best->violations, state.current.violations);
    if (!acceptable) return reject_task();

    state.current = std::move(*best);
    if (model.ordered) inT.clear();
    return AssignStatus::Inserted;
}

EvaluatedSolution initial_solution(SearchContext& ctx) {
    auto state = ConstructionState::from(
        ctx.eval(SolutionStructure::empty_for(ctx.model.m())), ctx.model.m());
    while (feasible_assignment(ctx, state) != AssignStatus::NoFeasibleResource) {
    }
    return state.current;
}

EvaluatedSolution repair(SearchContext& ctx, EvaluatedSolution sol, bool require_non_increasing) {
    auto state = ConstructionState::from(std::move(sol), ctx.model.m());
    while (feasible_assignment(ctx, state, require_non_increasing) !=
           AssignStatus::NoFeasibleResource) {
    }
    return state.current;
}

namespace {

struct Segment {
    int resource;   // 1..m
    int start;      // 0-based
    int length;
};

std::vector<int> resources_with_at_least(const SolutionStructure& s, int count) {
    std::vector<int> out;
    for (int i = 1; i <= s.resource_count(); ++i)
        if (static_cast<int>(s.per_resource[static_cast<std::size_t>(i - 1)].size()) >= count)
            out.push_back(i);
    return out;
}

int seg_len(Rng& rng, int avail) { return std::min(rng.uniform_int(1, 2), avail); }

std::vector<int> extract(std::vector<int>& v, int start, int len) {
    std::vector<int> seg(v.begin() + start, v.begin() + start + len);
    v.erase(v.begin() + start, v.begin() + start + len);
    return seg;
}

std::optional<SolutionStructure> neighbor_structure(SearchContext& ctx,
                                                    const SolutionStructure& in,
                                                    NeighborhoodKind kind) {
    const ProblemModel& model = ctx.model;
    Rng& rng = ctx.rng;
    SolutionStructure s = in;

    switch (kind) {
    case NeighborhoodKind::SwapIntra: {
        auto cands = resources_with_at_least(s, 2);
        if (cands.empty()) return std::nullopt;
        int i = rng.pick(cands);
        auto& sub = s.per_resource[static_cast<std::size_t>(i - 1)];
        int size = static_cast<int>(sub.size());
        int l1 = seg_len(rng, size - 1);
        int l2 = std::min(rng.uniform_int(1, 2), size - l1);
        int s1 = rng.uniform_int(0, size - l1 - l2);
        int s2 = rng.uniform_int(s1 + l1, size - l2);
        std::vector<int> rebuilt;
        rebuilt.insert(rebuilt.end(), sub.begin(), sub.begin() + s1);
        rebuilt.insert(rebuilt.end(), sub.begin() + s2, sub.begin() + s2 + l2);
        rebuilt.insert(rebuilt.end(), sub.begin() + s1 + l1, sub.begin() + s2);
        rebuilt.insert(rebuilt.end(), sub.begin() + s1, sub.begin() + s1 + l1);
        rebuilt.insert(rebuilt.end(), sub.begin() + s2 + l2, sub.end());
        sub = std::move(rebuilt);
        return s;
    }
    case NeighborhoodKind::SwapInter: {
        if (model.m() < 2) return std::nullopt;
        auto cands = resources_with_at_least(s, 1);
        if (cands.size() < 2) return std::nullopt;
        int a = rng.pick(cands);
        std::vector<int> others = cands;
        std::erase(others, a);
        int b = rng.pick(others);
        auto& sa = s.per_resource[static_cast<std::size_t>(a - 1)];
        auto& sb = s.per_resource[static_cast<std::size_t>(b - 1)];
        int la = seg_len(rng, static_cast<int>(sa.size()));
        int lb = seg_len(rng, static_cast<int>(sb.size()));
        int pa = rng.uniform_int(0, static_cast<int>(sa.size()) - la);
        int pb = rng.uniform_int(0, static_cast<int>(sb.size()) - lb);
        std::vector<int> seg_a(sa.begin() + pa, sa.begin() + pa + la);
        std::vector<int> seg_b(sb.begin() + pb, sb.begin() + pb + lb);
        sa.erase(sa.begin() + pa, sa.begin() + pa + la);
        sa.insert(sa.begin() + pa, seg_b.begin(), seg_b.end());
        sb.erase(sb.begin() + pb, sb.begin() + pb + lb);
        sb.insert(sb.begin() + pb, seg_a.begin(), seg_a.end());
        if (static_cast<int>(sa.size()) > model.capacity(a) ||
            static_cast<int>(sb.size()) > model.capacity(b))
            return std::nullopt;
        return s;
    }
    case NeighborhoodKind::ShiftIntra: {
        auto cands = resources_with_at_least(s, 2);
        if (cands.empty()) return std::nullopt;
        int i = rng.pick(cands);
        auto& sub = s.per_resource[static_cast<std::size_t>(i - 1)];
        int size = static_cast<int>(sub.size());
        int l = seg_len(rng, size - 1);
        int from = rng.uniform_int(0, size - l);
        auto seg = extract(sub, from, l);
        int to = rng.uniform_int(0, static_cast<int>(sub.size()));
        if (to == from) to = (to + 1) % (static_cast<int>(sub.size()) + 1);
        sub.insert(sub.begin() + to, seg.begin(), seg.end());
        return s;
    }
    case NeighborhoodKind::ShiftInter: {
        if (model.m() < 2) return std::nullopt;
        auto donors = resources_with_at_least(s, 1);
        if (donors.empty()) return std::nullopt;
        int a = rng.pick(donors);
        int b = rng.uniform_int(1, model.m() - 1);
        if (b >= a) ++b; // uniform over resources != a
        auto& sa = s.per_resource[static_cast<std::size_t>(a - 1)];
        auto& sb = s.per_resource[static_cast<std::size_t>(b - 1)];
        int l = seg_len(rng, static_cast<int>(sa.size()));
        if (static_cast<int>(sb.size()) + l > model.capacity(b)) return std::nullopt;
        int from = rng.uniform_int(0, static_cast<int>(sa.size()) - l);
        auto seg = extract(sa, from, l);
        int to = rng.uniform_int(0, static_cast<int>(sb.size()));
        sb.insert(sb.begin() + to, seg.begin(), seg.end());
        return s;
    }
    case NeighborhoodKind::ShiftAllInter: {
        if (model.m() < 2) return std::nullopt;
        auto donors = resources_with_at_least(s, 1);
        if (donors.empty()) return std::nullopt;
        int a = rng.pick(donors);
        int b = rng.uniform_int(1, model.m() - 1);
        if (b >= a) ++b;
        auto& sa = s.per_resource[static_cast<std::size_t>(a - 1)];
        auto& sb = s.per_resource[static_cast<std::size_t>(b - 1)];
        if (static_cast<int>(sb.size() + sa.size()) > model.capacity(b)) return std::nullopt;
        sb.insert(sb.end(), sa.begin(), sa.end());
        sa.clear();
        return s;
    }
    case NeighborhoodKind::Remove: {
        auto donors = resources_with_at_least(s, 1);
        if (donors.empty()) return std::nullopt;
        int i = rng.pick(donors);
        auto& sub = s.per_resource[static_cast<std::size_t>(i - 1)];
        sub.erase(sub.begin() + rng.uniform_int(0, static_cast<int>(sub.size()) - 1));
        return s;
    }
    case NeighborhoodKind::ReverseIntra: {
        auto cands = resources_with_at_least(s, 2);
        if (cands.empty()) return std::nullopt;
        int i = rng.pick(cands);
        auto& sub = s.per_resource[static_cast<std::size_t>(i - 1)];
        int size = static_cast<int>(sub.size());
        int a = rng.uniform_int(0, size - 2);
        int b = rng.uniform_int(a + 1, size - 1);
        std::reverse(sub.begin() + a, sub.begin() + b + 1);
        return s;
    }
    case NeighborhoodKind::ReverseInter: {
        if (model.m() < 2) return std::nullopt;
        auto cands = resources_with_at_least(s, 1);
        if (cands.size() < 2) return std::nullopt;
        int a = rng.pick(cands);
        std::vector<int> others = cands;
        std::erase(others, a);
        int b = rng.pick(others);
        auto& sa = s.per_resource[static_cast<std::size_t>(a - 1)];
        auto& sb = s.per_resource[static_cast<std::size_t>(b - 1)];
        int la = seg_len(rng, static_cast<int>(sa.size()));
        int lb = seg_len(rng, static_cast<int>(sb.size()));
        int pa = rng.uniform_int(0, static_cast<int>(sa.size()) - la);
        int pb = rng.uniform_int(0, static_cast<int>(sb.size()) - lb);
        std::vector<int> joined(sa.begin() + pa, sa.begin() + pa + la);
        joined.insert(joined.end(), sb.begin() + pb, sb.begin() + pb + lb);
        std::reverse(joined.begin(), joined.end());
        std::copy(joined.begin(), joined.begin() + la, sa.begin() + pa);
        std::copy(joined.begin() + la, joined.end(), sb.begin() + pb);
        return s;
    }
    default:
        return std::nullopt;
    }
}

} // namespace

std::optional<EvaluatedSolution> apply_neighborhood(SearchContext& ctx,
                                                    const EvaluatedSolution& sol,
                                                    NeighborhoodKind kind) {
    const ProblemModel& model = ctx.model;

    if (kind == NeighborhoodKind::Insert) {
        std::vector<int> assigned = task_resource(sol.structure, model.n());
        std::vector<int> unassigned;
        for (int j = 1; j <= model.n(); ++j)
            if (assigned[static_cast<std::size_t>(j)] == 0) unassigned.push_back(j);
        if (unassigned.empty()) return std::nullopt;
        int j = ctx.rng.pick(unassigned);

        std::optional<EvaluatedSolution> best;
        for (int i = 1; i <= model.m(); ++i) {
            const auto& sub = sol.structure.per_resource[static_cast<std::size_t>(i - 1)];
            if (static_cast<int>(sub.size()) >= model.capacity(i)) continue;
            for (int p : feasible_positions(model, sol.structure, i, j)) {
                EvaluatedSolution cand = ctx.eval(with_insertion(sol.structure, i, j, p));
                if (!violations_non_increasing(cand.violations, sol.violations)) continue;
                if (!best || compare(cand, *best, model.objective.sense) == Cmp::Better)
                    best = std::move(cand);
            }
        }
        return best; // nullopt when no feasibility-preserving insertion exists
    }

    if (kind == NeighborhoodKind::RemoveInsert) {
        auto donors = resources_with_at_least(sol.structure, 1);
        if (donors.empty()) return std::nullopt;
        SolutionStructure s = sol.structure;
        int i = ctx.rng.pick(donors);
        auto& sub = s.per_resource[static_cast<std::size_t>(i - 1)];
        int l = seg_len(ctx.rng, static_cast<int>(sub.size()));
        int from = ctx.rng.uniform_int(0, static_cast<int>(sub.size()) - l);
        sub.erase(sub.begin() + from, sub.begin() + from + l);
        return repair(ctx, ctx.eval(s), /*require_non_increasing=*/true);
    }

    auto s = neighbor_structure(ctx, sol.structure, kind);
    if (!s) return std::nullopt;
    return ctx.eval(*s);
}

EvaluatedSolution destroy_repair(SearchContext& ctx, const EvaluatedSolution& sol, int nd) {
    SolutionStructure s = sol.structure;
    int to_remove = std::min<int>(nd, static_cast<int>(s.total_assigned()));
    for (int r = 0; r < to_remove; ++r) {
        auto donors = resources_with_at_least(s, 1);
        int i = ctx.rng.pick(donors);
        auto& sub = s.per_resource[static_cast<std::size_t>(i - 1)];
        sub.erase(sub.begin() + ctx.rng.uniform_int(0, static_cast<int>(sub.size()) - 1));
    }
    return repair(ctx, ctx.eval(s));
}

namespace {

// Append one task to a resource if the violation vector does not increase
// componentwise; returns whether it was kept.
bool try_append(SearchContext& ctx, EvaluatedSolution& cur, int resource, int task) {
    const auto& sub = cur.structure.per_resource[static_cast<std::size_t>(resource - 1)];
    if (static_cast<int>(sub.size()) >= ctx.model.capacity(resource)) return false;
    EvaluatedSolution cand = ctx.eval(
        with_insertion(cur.structure, resource, task, static_cast<int>(sub.size()) + 1));
    if (!violations_non_increasing(cand.violations, cur.violations)) return false;
    cur = std::move(cand);
    return true;
}

} // namespace

EvaluatedSolution single_point_crossover(SearchContext& ctx, const EvaluatedSolution& p1,
                                         const EvaluatedSolution& p2) {
    if (ctx.model.m() != 1) throw WrongArity("single-point crossover requires m == 1");
    const auto& s1 = p1.structure.per_resource[0];
    const auto& s2 = p2.structure.per_resource[0];

    SolutionStructure child = SolutionStructure::empty_for(1);
    if (!s1.empty()) {
        int c = ctx.rng.uniform_int(1, static_cast<int>(s1.size()));
        child.per_resource[0].assign(s1.begin(), s1.begin() + (c - 1));
    }
    EvaluatedSolution cur = ctx.eval(child);
    if (!s2.empty()) {
        int c2 = ctx.rng.uniform_int(1, static_cast<int>(s2.size()));
        for (std::size_t k = static_cast<std::size_t>(c2 - 1); k < s2.size(); ++k)
            try_append(ctx, cur, 1, s2[k]);
    }
    return repair(ctx, std::move(cur));
}

EvaluatedSolution two_point_crossover(SearchContext& ctx, const EvaluatedSolution& p1,
                                      const EvaluatedSolution& p2) {
    int m = ctx.model.m();
    if (m < 2) throw WrongArity("two-point crossover requires m >= 2");
    int c1 = ctx.rng.uniform_int(0, m);
    int c2 = ctx.rng.uniform_int(0, m);
    int lo = std::min(c1, c2), hi = std::max(c1, c2);

    SolutionStructure child = p1.structure;
    for (int i = lo + 1; i <= hi; ++i)
        child.per_resource[static_cast<std::size_t>(i - 1)].clear();
    EvaluatedSolution cur = ctx.eval(child);
    for (int i = lo + 1; i <= hi; ++i)
        for (int task : p2.structure.per_resource[static_cast<std::size_t>(i - 1)])
            try_append(ctx, cur, i, task);
    return repair(ctx, std::move(cur));
}

std::vector<EvaluatedSolution> crossover_operation(SearchContext& ctx,
                                                   const std::vector<EvaluatedSolution>& pop,
                                                   double p_c) {
    const std::size_t size = pop.size();
    std::vector<EvaluatedSolution> offspring;
    offspring.reserve(size);
    for (std::size_t i = 0; i < size; ++i) {
        offspring.push_back(pop[i]);
        if (ctx.rng.uniform01() >= p_c) continue;
        // 2-tournament over pop \ {i}
        auto draw = [&] {
            std::size_t k = ctx.rng.uniform_index(size - 1);
            return k >= i ? k + 1 : k;
        };
        std::size_t a = draw(), b = draw();
        std::size_t p2 = compare(pop[b], pop[a], ctx.model.objective.sense) == Cmp::Better ? b : a;
        offspring[i] = ctx.model.m() == 1 ? single_point_crossover(ctx, pop[i], pop[p2])
                                          : two_point_crossover(ctx, pop[i], pop[p2]);
    }
    return offspring;
}

} // namespace rems
