#include "rems/qlearning.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace rems {

QState compute_state(const ProblemModel& model, const EvaluatedSolution& sol,
                     int stagnation_counter, int stagnation_threshold) {
    QState st;
    st.s[0] = model.m() == 1 ? 1 : 2;
    st.s[1] = model.ordered ? 2 : 1; // assignment variable -> 1
    st.s[2] = sol.feasible() ? 1 : 2;

    // s4..s8: per-family satisfaction for the five constraint templates.
    std::array<bool, 5> violated{};
    for (std::size_t c = 0; c < model.constraints.size(); ++c) {
        if (sol.violations[c] < kFeasTol) continue;
        switch (family_of(model.constraints[c])) {
        case ConstraintFamily::ResourceAggregate: violated[0] = true; break;
        case ConstraintFamily::TaskAggregate: violated[1] = true; break;
        case ConstraintFamily::Pairing: violated[2] = true; break;
        case ConstraintFamily::Precedence: violated[3] = true; break;
        case ConstraintFamily::ResourceTaskAggregate: violated[4] = true; break;
        case ConstraintFamily::Custom: break;
        }
    }
    for (int f = 0; f < 5; ++f) st.s[static_cast<std::size_t>(3 + f)] = violated[static_cast<std::size_t>(f)] ? 2 : 1;

    std::size_t max_load = 0;
    for (const auto& sub : sol.structure.per_resource) max_load = std::max(max_load, sub.size());
    st.s[8] = max_load <= 1 ? 1 : (max_load == 2 ? 2 : 3);

    st.s[9] = stagnation_counter >= stagnation_threshold ? 1 : 2;
    return st;
}

int reward(const ProblemModel& model, const EvaluatedSolution& prev,
           const std::optional<EvaluatedSolution>& next) {
    if (!next) return -2;
    switch (compare(*next, prev, model.objective.sense)) {
    case Cmp::Better: return 2;
    case Cmp::Equal: return 0;
    case Cmp::Worse: break;
    }
    // Worse: -1 when the constraint violations got strictly larger (previous
    // vector dominates), 1 when only the objective got worse.
    if (dominates(prev.violations, next->violations)) return -1;
    return 1;
}

void update_q(QTable& table, const QState& s_t, int action, int r, const QState& s_next,
              double alpha, double gamma) {
    double target = r + gamma * table.max_value(s_next);
    auto& row = table.q[s_t.key()];
    double& q = row[static_cast<std::size_t>(action)];
    q += alpha * (target - q);
}

int select_action(const QTable& table, const QState& state, double epsilon, Rng& rng) {
    if (rng.uniform01() < epsilon) return rng.uniform_int(0, kNumNeighborhoods - 1);

    int pool_size = static_cast<int>(std::ceil(0.2 * kNumNeighborhoods));
    std::array<int, kNumNeighborhoods> order;
    std::iota(order.begin(), order.end(), 0);
    const auto& row = table.row(state);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return row[static_cast<std::size_t>(a)] > row[static_cast<std::size_t>(b)];
    });

    double total = 0;
    for (int p = 0; p < pool_size; ++p) total += table.success_rate(order[static_cast<std::size_t>(p)]);
    if (total <= 0) return order[rng.uniform_index(static_cast<std::size_t>(pool_size))];

    double x = rng.uniform01() * total;
    for (int p = 0; p < pool_size; ++p) {
        x -= table.success_rate(order[static_cast<std::size_t>(p)]);
        if (x <= 0) return order[static_cast<std::size_t>(p)];
    }
    return order[static_cast<std::size_t>(pool_size - 1)];
}

int NeighborhoodSelector::select(SearchContext& ctx, const QState& state) {
    switch (mode_) {
    case SelectMode::QLearning:
        return select_action(table_, state, params_.epsilon, ctx.rng);
    case SelectMode::Adaptive: {
        double total = 0;
        for (int a = 0; a < kNumNeighborhoods; ++a) total += table_.success_rate(a);
        if (total <= 0) return ctx.rng.uniform_int(0, kNumNeighborhoods - 1);
        double x = ctx.rng.uniform01() * total;
        for (int a = 0; a < kNumNeighborhoods; ++a) {
            x -= table_.success_rate(a);
            if (x <= 0) return a;
        }
        return kNumNeighborhoods - 1;
    }
    case SelectMode::Random:
        return ctx.rng.uniform_int(0, kNumNeighborhoods - 1);
    }
    return 0;
}

EvaluatedSolution NeighborhoodSelector::propose(SearchContext& ctx, const EvaluatedSolution& sol,
                                                std::optional<NeighborhoodKind> forced_kind) {
    if (!table_.built) {
        table_.q.clear();
        table_.success_count.fill(0);
        table_.selected_count.fill(0);
        table_.window_used = 0;
        table_.built = true;
    }

    QState state = compute_state(ctx.model, sol, stagnation_, params_.stagnation_threshold);
    int action = forced_kind ? static_cast<int>(*forced_kind) : select(ctx, state);

    auto next = apply_neighborhood(ctx, sol, static_cast<NeighborhoodKind>(action));
    int r = reward(ctx.model, sol, next);
    last_reward_ = r;

    stagnation_ = r == 2 ? 0 : stagnation_ + 1;
    QState s_next = next ? compute_state(ctx.model, *next, stagnation_, params_.stagnation_threshold)
                         : QState::zero_state();
    update_q(table_, state, action, r, s_next, params_.alpha, params_.gamma);

    if (table_.window_used >= params_.window) {
        table_.success_count.fill(0);
        table_.selected_count.fill(0);
        table_.window_used = 0;
    }
    ++table_.selected_count[static_cast<std::size_t>(action)];
    if (r == 2) ++table_.success_count[static_cast<std::size_t>(action)];
    ++table_.window_used;

    return next ? *next : sol;
}

std::string NeighborhoodSelector::dump() const {
    std::ostringstream os;
    os << "state";
    for (int a = 0; a < kNumNeighborhoods; ++a)
        os << '\t' << neighborhood_name(static_cast<NeighborhoodKind>(a));
    os << '\n';
    for (const auto& [key, row] : table_.q) {
        os << key;
        for (double v : row) os << '\t' << v;
        os << '\n';
    }
    return os.str();
}

} // namespace rems
