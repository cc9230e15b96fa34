#include "rems/oracle.hpp"

#include <algorithm>

namespace rems {

namespace {

struct Enumerator {
    const ProblemModel& model;
    const OracleOptions& opts;
    OracleResult result;
    SolutionStructure current;
    bool aborted = false;

    explicit Enumerator(const ProblemModel& m, const OracleOptions& o)
        : model(m), opts(o), current(SolutionStructure::empty_for(m.m())) {}

    void leaf() {
        auto eval = evaluate(model, current);
        if (!eval.feasible()) return;
        bool better = result.status != OracleStatus::Optimal ||
                      (model.objective.sense == Sense::Min
                           ? eval.objective_value < result.objective
                           : eval.objective_value > result.objective);
        if (better) {
            result.status = OracleStatus::Optimal;
            result.objective = eval.objective_value;
            result.best = current;
        }
    }

    void recurse(int j) {
        if (aborted) return;
        if (++result.nodes_visited > opts.node_limit) {
            aborted = true;
            return;
        }
        if (j > model.n()) {
            leaf();
            return;
        }

        // Unassigned.
        recurse(j + 1);

        int max_used = 0;
        if (opts.symmetric_resources)
            for (int i = model.m(); i >= 1; --i)
                if (!current.per_resource[static_cast<std::size_t>(i - 1)].empty()) {
                    max_used = i;
                    break;
                }

        for (int i = 1; i <= model.m() && !aborted; ++i) {
            if (opts.symmetric_resources && i > max_used + 1) break;
            auto& sub = current.per_resource[static_cast<std::size_t>(i - 1)];
            if (static_cast<int>(sub.size()) >= model.capacity(i)) continue;
            if (model.ordered) {
                for (std::size_t p = 0; p <= sub.size() && !aborted; ++p) {
                    sub.insert(sub.begin() + static_cast<std::ptrdiff_t>(p), j);
                    recurse(j + 1);
                    sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(p));
                }
            } else {
                sub.push_back(j);
                recurse(j + 1);
                sub.pop_back();
            }
        }
    }
};

} // namespace

OracleResult brute_force_oracle(const ProblemModel& model, const OracleOptions& opts) {
    Enumerator e(model, opts);
    e.recurse(1);
    if (e.aborted) {
        e.result.status = OracleStatus::TooLarge;
        return e.result;
    }
    if (e.result.status != OracleStatus::Optimal) e.result.status = OracleStatus::Infeasible;
    return e.result;
}

} // namespace rems
