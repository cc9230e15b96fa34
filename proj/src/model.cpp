#include "rems/model.hpp"

#include <cmath>
#include <cstdlib>
#include <set>

namespace rems {

ConstraintFamily family_of(const ConstraintSpec& c) {
    struct Visitor {
        ConstraintFamily operator()(const ResourceAggregate&) const { return ConstraintFamily::ResourceAggregate; }
        ConstraintFamily operator()(const TaskAggregate&) const { return ConstraintFamily::TaskAggregate; }
        ConstraintFamily operator()(const Pairing&) const { return ConstraintFamily::Pairing; }
        ConstraintFamily operator()(const Precedence&) const { return ConstraintFamily::Precedence; }
        ConstraintFamily operator()(const ResourceTaskAggregate&) const { return ConstraintFamily::ResourceTaskAggregate; }
        ConstraintFamily operator()(const CustomConstraint&) const { return ConstraintFamily::Custom; }
    };
    return std::visit(Visitor{}, c.body);
}

void ProblemModel::validate() const {
    for (int i = 1; i <= m(); ++i)
        if (resources[static_cast<std::size_t>(i - 1)].index != i)
            throw InvalidInstance("resource indices must be exactly 1..m");
    for (int j = 1; j <= n(); ++j)
        if (tasks[static_cast<std::size_t>(j - 1)].index != j)
            throw InvalidInstance("task indices must be exactly 1..n");
    for (const auto& r : resources)
        if (r.position_capacity != kUnbounded && r.position_capacity < 1)
            throw InvalidInstance("position_capacity must be >= 1");
}

bool well_formed(const ProblemModel& model, const SolutionStructure& s) {
    if (s.resource_count() != model.m()) return false;
    for (int i = 1; i <= model.m(); ++i) {
        const auto& sub = s.per_resource[static_cast<std::size_t>(i - 1)];
        if (static_cast<int>(sub.size()) > model.capacity(i)) return false;
        for (int j : sub)
            if (j < 1 || j > model.n()) return false;
    }
    return true;
}

AssignmentTensor to_assignment_tensor(const SolutionStructure& s, int n) {
    AssignmentTensor t;
    t.m = s.resource_count();
    int max_task = 0;
    for (int i = 1; i <= t.m; ++i) {
        const auto& sub = s.per_resource[static_cast<std::size_t>(i - 1)];
        for (int k = 1; k <= static_cast<int>(sub.size()); ++k) {
            int j = sub[static_cast<std::size_t>(k - 1)];
            t.entries.push_back({i, j, k});
            if (j > max_task) max_task = j;
        }
    }
    t.n = n > 0 ? n : max_task;
    return t;
}

namespace {

double relation_violation(double expr, double theta, Relation rel) {
    switch (rel) {
    case Relation::Le: return std::max(0.0, expr - theta);
    case Relation::Ge: return std::max(0.0, theta - expr);
    case Relation::Eq: return std::abs(expr - theta);
    }
    return 0.0;
}

// Resource index (1..m) of each assigned task occurrence, plus position.
struct Placement {
    int resource = 0;
    int position = 0;
    int count = 0; // occurrences; resource/position refer to the first one
};

std::vector<Placement> placements(const SolutionStructure& s, int n) {
    std::vector<Placement> p(static_cast<std::size_t>(n) + 1);
    for (int i = 1; i <= s.resource_count(); ++i) {
        const auto& sub = s.per_resource[static_cast<std::size_t>(i - 1)];
        for (int k = 1; k <= static_cast<int>(sub.size()); ++k) {
            int j = sub[static_cast<std::size_t>(k - 1)];
            auto& pl = p[static_cast<std::size_t>(j)];
            if (pl.count == 0) {
                pl.resource = i;
                pl.position = k;
            }
            ++pl.count;
        }
    }
    return p;
}

double constraint_violation(const ProblemModel& model, const ConstraintSpec& c,
                            const SolutionStructure& s, const AttributeSet& attrs) {
    struct Visitor {
        const ProblemModel& model;
        const SolutionStructure& s;
        const AttributeSet& attrs;

        double operator()(const ResourceAggregate& a) const {
            double total = 0;
            for (int i = 1; i <= model.m(); ++i) {
                const auto& sub = s.per_resource[static_cast<std::size_t>(i - 1)];
                double expr = 0;
                for (int k = 1; k <= static_cast<int>(sub.size()); ++k)
                    expr += a.coeff(i, sub[static_cast<std::size_t>(k - 1)], k);
                total += relation_violation(expr, a.thresholds[static_cast<std::size_t>(i - 1)], a.rel);
            }
            return total;
        }

        double operator()(const TaskAggregate& a) const {
            std::vector<double> expr(static_cast<std::size_t>(model.n()) + 1, 0.0);
            for (int i = 1; i <= model.m(); ++i) {
                const auto& sub = s.per_resource[static_cast<std::size_t>(i - 1)];
                for (int k = 1; k <= static_cast<int>(sub.size()); ++k) {
                    int j = sub[static_cast<std::size_t>(k - 1)];
                    expr[static_cast<std::size_t>(j)] += a.coeff(i, j, k);
                }
            }
            double total = 0;
            for (int j = 1; j <= model.n(); ++j)
                total += relation_violation(expr[static_cast<std::size_t>(j)],
                                            a.thresholds[static_cast<std::size_t>(j - 1)], a.rel);
            return total;
        }

        double operator()(const Pairing& a) const {
            auto pl = placements(s, model.n());
            double total = 0;
            for (auto [j, j2] : a.pairs) {
                const auto& p1 = pl[static_cast<std::size_t>(j)];
                const auto& p2 = pl[static_cast<std::size_t>(j2)];
                if (p1.count == 0 || p2.count == 0) continue;
                bool same = p1.resource == p2.resource;
                if (a.mode == PairingMode::SameResource ? !same : same) total += 1.0;
            }
            return total;
        }

        double operator()(const Precedence& a) const {
            auto pl = placements(s, model.n());
            double total = 0;
            for (auto [before, after] : a.pairs) {
                const auto& pb = pl[static_cast<std::size_t>(before)];
                const auto& pa = pl[static_cast<std::size_t>(after)];
                if (pb.count == 0 || pa.count == 0) continue;
                if (pb.resource == pa.resource && pb.position > pa.position) total += 1.0;
            }
            return total;
        }

        double operator()(const ResourceTaskAggregate& a) const {
            // Rows over (i, j); only occupied (i, j) pairs can have nonzero expr,
            // but EQ/GE rows with nonzero thresholds must still be counted.
            double total = 0;
            std::vector<std::vector<double>> expr(
                static_cast<std::size_t>(model.m()) + 1,
                std::vector<double>(static_cast<std::size_t>(model.n()) + 1, 0.0));
            for (int i = 1; i <= model.m(); ++i) {
                const auto& sub = s.per_resource[static_cast<std::size_t>(i - 1)];
                for (int k = 1; k <= static_cast<int>(sub.size()); ++k) {
                    int j = sub[static_cast<std::size_t>(k - 1)];
                    expr[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] += a.coeff(i, j, k);
                }
            }
            for (int i = 1; i <= model.m(); ++i)
                for (int j = 1; j <= model.n(); ++j)
                    total += relation_violation(expr[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                                                a.threshold(i, j), a.rel);
            return total;
        }

        double operator()(const CustomConstraint& a) const {
            double total = 0;
            for (double r : a.residuals(s, attrs))
                total += a.equality ? std::abs(r) : std::max(0.0, r);
            return total;
        }
    };
    return std::visit(Visitor{model, s, attrs}, c.body);
}

} // namespace

AttributeSet compute_attributes(const ProblemModel& model, const SolutionStructure& s) {
    AttributeSet attrs;
    for (const auto& ev : model.attribute_evaluators) attrs[ev.name] = ev.compute(s);
    return attrs;
}

EvaluatedSolution evaluate(const ProblemModel& model, const SolutionStructure& s) {
    if (s.resource_count() != model.m())
        throw DimensionMismatch("structure has wrong resource count");
    for (const auto& sub : s.per_resource)
        for (int j : sub)
            if (j < 1 || j > model.n()) throw DimensionMismatch("unknown task index");

    EvaluatedSolution out;
    out.structure = s;
    AttributeSet attrs = compute_attributes(model, s);
    out.objective_value = model.objective.value(s, attrs);
    out.violations.reserve(model.constraints.size());
    for (const auto& c : model.constraints)
        out.violations.push_back(constraint_violation(model, c, s, attrs));
    return out;
}

std::pair<AttributeTensor, AttributeTensor>
evaluate_vrptw_attributes(const SolutionStructure& s,
                          const std::vector<std::vector<double>>& travel,
                          const std::vector<double>& service) {
    AttributeTensor start(s.per_resource.size()), end(s.per_resource.size());
    for (std::size_t i = 0; i < s.per_resource.size(); ++i) {
        const auto& sub = s.per_resource[i];
        start[i].resize(sub.size());
        end[i].resize(sub.size());
        for (std::size_t k = 0; k < sub.size(); ++k) {
            int j = sub[k];
            if (k == 0) {
                start[i][k] = travel[0][static_cast<std::size_t>(j)];
            } else {
                int prev = sub[k - 1];
                start[i][k] = start[i][k - 1] + travel[static_cast<std::size_t>(prev)][static_cast<std::size_t>(j)];
            }
            end[i][k] = start[i][k] + service[static_cast<std::size_t>(j)];
        }
    }
    return {start, end};
}

} // namespace rems
