#pragma once

#include "rems/adapters.hpp"
#include "rems/operators.hpp"

namespace testutil {

// Bare model with no constraints: objective = assigned-task count, maximized,
// so construction inserts greedily.
inline rems::ProblemModel bare_model(int m, int n, bool ordered = false) {
    rems::ProblemModel model;
    for (int i = 1; i <= m; ++i) {
        rems::Resource r;
        r.index = i;
        model.resources.push_back(r);
    }
    for (int j = 1; j <= n; ++j) {
        rems::Task t;
        t.index = j;
        model.tasks.push_back(t);
    }
    model.ordered = ordered;
    model.objective.sense = rems::Sense::Max;
    model.objective.value = [](const rems::SolutionStructure& s, const rems::AttributeSet&) {
        return static_cast<double>(s.total_assigned());
    };
    model.validate();
    return model;
}

// Each task assigned exactly once (equality task aggregate).
inline rems::ConstraintSpec once_constraint(int n) {
    rems::TaskAggregate each;
    each.coeff = [](int, int, int) { return 1.0; };
    each.thresholds.assign(static_cast<std::size_t>(n), 1.0);
    each.rel = rems::Relation::Eq;
    return {"once", std::move(each)};
}

inline rems::EvaluatedSolution eval_of(const rems::ProblemModel& model,
                                       std::vector<std::vector<int>> per_resource) {
    rems::SolutionStructure s;
    s.per_resource = std::move(per_resource);
    return rems::evaluate(model, s);
}

// A synthetic EvaluatedSolution for ranking tests; structure is irrelevant.
inline rems::EvaluatedSolution ranked(double objective, std::vector<double> violations) {
    rems::EvaluatedSolution e;
    e.objective_value = objective;
    e.violations = std::move(violations);
    return e;
}

inline std::vector<int> sorted_tasks(const rems::SolutionStructure& s) {
    std::vector<int> all;
    for (const auto& sub : s.per_resource) all.insert(all.end(), sub.begin(), sub.end());
    std::sort(all.begin(), all.end());
    return all;
}

inline bool is_well_formed(const rems::ProblemModel& model, const rems::SolutionStructure& s) {
    return rems::well_formed(model, s);
}

} // namespace testutil
