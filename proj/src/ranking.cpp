#include "rems/ranking.hpp"

#include <algorithm>

namespace rems {

bool dominates(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw LengthMismatch("violation vectors differ in length");
    bool strict = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
        if (a[i] < b[i]) strict = true;
    }
    return strict;
}

namespace {

Cmp objective_cmp(double fa, double fb, Sense sense) {
    if (fa == fb) return Cmp::Equal;
    bool a_better = sense == Sense::Min ? fa < fb : fa > fb;
    return a_better ? Cmp::Better : Cmp::Worse;
}

} // namespace

Cmp compare(const EvaluatedSolution& a, const EvaluatedSolution& b, Sense sense) {
    bool fa = a.feasible(), fb = b.feasible();
    if (fa && !fb) return Cmp::Better;
    if (!fa && fb) return Cmp::Worse;
    if (fa && fb) return objective_cmp(a.objective_value, b.objective_value, sense);
    if (dominates(a.violations, b.violations)) return Cmp::Better;
    if (dominates(b.violations, a.violations)) return Cmp::Worse;
    return objective_cmp(a.objective_value, b.objective_value, sense);
}

std::vector<Rank> rank_solutions(const std::vector<EvaluatedSolution>& pop, Sense sense) {
    std::vector<std::size_t> feas, infeas;
    for (std::size_t i = 0; i < pop.size(); ++i)
        (pop[i].feasible() ? feas : infeas).push_back(i);

    auto obj_key = [&](std::size_t i) {
        return sense == Sense::Min ? pop[i].objective_value : -pop[i].objective_value;
    };

    std::vector<Rank> out;
    out.reserve(pop.size());

    std::stable_sort(feas.begin(), feas.end(),
                     [&](std::size_t a, std::size_t b) { return obj_key(a) < obj_key(b); });
    int layer = -1;
    double prev_key = 0;
    for (std::size_t pos = 0; pos < feas.size(); ++pos) {
        std::size_t i = feas[pos];
        if (pos == 0 || obj_key(i) != prev_key) ++layer;
        prev_key = obj_key(i);
        out.push_back({i, layer, pop[i].objective_value});
    }

    // Infeasible: dominance counts against the infeasible subpopulation only.
    std::vector<int> dom_count(infeas.size(), 0);
    for (std::size_t a = 0; a < infeas.size(); ++a)
        for (std::size_t b = 0; b < infeas.size(); ++b)
            if (a != b && dominates(pop[infeas[a]].violations, pop[infeas[b]].violations))
                ++dom_count[a];

    std::vector<std::size_t> order(infeas.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (dom_count[a] != dom_count[b]) return dom_count[a] > dom_count[b];
        return obj_key(infeas[a]) < obj_key(infeas[b]);
    });

    int base = layer + 1;
    int sub_layer = -1;
    int prev_count = -1;
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        std::size_t idx = order[pos];
        if (pos == 0 || dom_count[idx] != prev_count) ++sub_layer;
        prev_count = dom_count[idx];
        out.push_back({infeas[idx], base + sub_layer, pop[infeas[idx]].objective_value});
    }
    return out;
}

} // namespace rems
