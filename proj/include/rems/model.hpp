#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace rems {

// Violations below this are treated as zero. Integer-valued models are exact
// anyway since their residuals are whole numbers.
inline constexpr double kFeasTol = 1e-9;

// Unbounded position capacity.
inline constexpr int kUnbounded = -1;

struct DimensionMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct WrongArity : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidInstance : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A resource owns ordered or unordered positions that accommodate tasks.
// Indices over a model are exactly 1..m.
struct Resource {
    int index = 0;
    std::map<std::string, double> attributes;
    int position_capacity = kUnbounded;
};

// Any assignable object. Indices over a model are exactly 1..n.
struct Task {
    int index = 0;
    std::map<std::string, double> attributes;
};

// The universal decision encoding: one sub-assignment (list of task indices)
// per resource. Positions are contiguous 1..|S_i|.
struct SolutionStructure {
    std::vector<std::vector<int>> per_resource;

    int resource_count() const { return static_cast<int>(per_resource.size()); }

    std::size_t total_assigned() const {
        std::size_t c = 0;
        for (const auto& s : per_resource) c += s.size();
        return c;
    }

    bool empty() const { return total_assigned() == 0; }

    static SolutionStructure empty_for(int m) {
        SolutionStructure s;
        s.per_resource.resize(static_cast<std::size_t>(m));
        return s;
    }
};

// Sparse binary matrix Y^C: one entry per occupied (resource, task, position) cell.
struct AssignmentTensor {
    struct Entry {
        int resource; // 1..m
        int task;     // 1..n
        int position; // 1..|S_i|
    };
    int m = 0;
    int n = 0;
    std::vector<Entry> entries;
};

// One value per occupied position, aligned with SolutionStructure::per_resource.
using AttributeTensor = std::vector<std::vector<double>>;
using AttributeSet = std::map<std::string, AttributeTensor>;

struct ProblemModel;

struct AttributeEvaluator {
    std::string name;
    std::function<AttributeTensor(const SolutionStructure&)> compute;
};

enum class Sense { Min, Max };

struct ObjectiveSpec {
    Sense sense = Sense::Min;
    std::function<double(const SolutionStructure&, const AttributeSet&)> value;
    // Serialization hooks for builtin objectives ("linear_cost", "used_resources",
    // "attribute_max"). Empty name means code-only.
    std::string builtin;
    std::vector<std::vector<double>> cost_table; // [m][n] for linear_cost
    std::string attribute;                       // for attribute_max
};

enum class Relation { Le, Ge, Eq };
enum class PairingMode { SameResource, DifferentResource };

using CoeffFn = std::function<double(int i, int j, int k)>;

// Sum_{k,j} rho^R_{i,j,k} y^C_{i,j,k}  (<=, >= or =)  theta^R_i, one row per resource.
struct ResourceAggregate {
    CoeffFn coeff;
    std::vector<double> thresholds; // size m
    Relation rel = Relation::Le;
    std::vector<std::vector<double>> coeff_table; // optional [m][n], for serialization
};

// Sum_{i,k} rho^T_{i,j,k} y^C_{i,j,k}  rel  theta^T_j, one row per task.
struct TaskAggregate {
    CoeffFn coeff;
    std::vector<double> thresholds; // size n
    Relation rel = Relation::Le;
    std::vector<std::vector<double>> coeff_table;
};

// Task pairs that must share a resource, or must not.
struct Pairing {
    std::vector<std::pair<int, int>> pairs;
    PairingMode mode = PairingMode::DifferentResource;
};

// (before, after): "before" must occupy an earlier position than "after"
// whenever both sit on the same resource.
struct Precedence {
    std::vector<std::pair<int, int>> pairs;
};

// Sum_k rho_{i,j,k} y^C_{i,j,k}  rel  theta_{i,j}, one row per (resource, task).
struct ResourceTaskAggregate {
    CoeffFn coeff;
    std::function<double(int i, int j)> threshold;
    Relation rel = Relation::Le;
    std::vector<std::vector<double>> coeff_table;
    std::vector<std::vector<double>> threshold_table;
};

// Arbitrary residual rows; inequality rows are g <= 0, equality rows h = 0.
struct CustomConstraint {
    std::function<std::vector<double>(const SolutionStructure&, const AttributeSet&)> residuals;
    bool equality = false;
};

using ConstraintBody = std::variant<ResourceAggregate, TaskAggregate, Pairing, Precedence,
                                    ResourceTaskAggregate, CustomConstraint>;

struct ConstraintSpec {
    std::string name;
    ConstraintBody body;
};

// Which of the five template families a constraint belongs to (Custom maps to none).
enum class ConstraintFamily {
    ResourceAggregate,
    TaskAggregate,
    Pairing,
    Precedence,
    ResourceTaskAggregate,
    Custom
};

ConstraintFamily family_of(const ConstraintSpec& c);

// Immutable after construction; shareable across concurrent workers.
struct ProblemModel {
    std::vector<Resource> resources;
    std::vector<Task> tasks;
    bool ordered = false; // sequence variable when true, assignment variable otherwise
    std::vector<AttributeEvaluator> attribute_evaluators;
    ObjectiveSpec objective;
    std::vector<ConstraintSpec> constraints;

    int m() const { return static_cast<int>(resources.size()); }
    int n() const { return static_cast<int>(tasks.size()); }

    // Effective per-resource position cap; unbounded caps fall back to n so the
    // search space stays finite.
    int capacity(int i) const {
        int c = resources[static_cast<std::size_t>(i - 1)].position_capacity;
        return c == kUnbounded ? n() : c;
    }

    void validate() const;
};

struct EvaluatedSolution {
    SolutionStructure structure;
    double objective_value = 0.0;
    std::vector<double> violations;

    double violation_sum() const {
        double s = 0;
        for (double v : violations) s += v;
        return s;
    }

    bool feasible() const {
        for (double v : violations)
            if (v >= kFeasTol) return false;
        return true;
    }
};

// Structure well-formedness against a model: every task index in 1..n,
// |S_i| within capacity, resource arity matches m.
bool well_formed(const ProblemModel& model, const SolutionStructure& s);

AssignmentTensor to_assignment_tensor(const SolutionStructure& s, int n = 0);

AttributeSet compute_attributes(const ProblemModel& model, const SolutionStructure& s);

// Full evaluation: objective plus one nonnegative violation per constraint,
// index-aligned with the model's constraint list.
EvaluatedSolution evaluate(const ProblemModel& model, const SolutionStructure& s);

// Start/end service time recursion for ordered routing-style models.
// travel is (n+1)x(n+1) with row/column 0 the depot; service is 1-based size n+1
// (index 0 unused). First position starts at travel[0][j]; later positions at
// previous start + travel. End = start + service.
std::pair<AttributeTensor, AttributeTensor>
evaluate_vrptw_attributes(const SolutionStructure& s,
                          const std::vector<std::vector<double>>& travel,
                          const std::vector<double>& service);

} // namespace rems
