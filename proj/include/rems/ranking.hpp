#pragma once

#include <vector>

#include "rems/model.hpp"

namespace rems {

enum class Cmp { Better, Worse, Equal };

struct LengthMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Strict componentwise dominance on violation vectors: a <= b everywhere and
// a < b somewhere.
bool dominates(const std::vector<double>& a, const std::vector<double>& b);

// Pairwise comparison: feasible beats infeasible; feasible pairs compare on
// the objective under the sense; infeasible pairs compare by dominance first,
// then objective.
Cmp compare(const EvaluatedSolution& a, const EvaluatedSolution& b, Sense sense);

struct Rank {
    std::size_t index; // position in the input population
    int layer;         // 0 = best layer
    double order_key;  // objective value
};

// Hierarchical ranking: feasible solutions layered by objective on top,
// infeasible ones below, layered by descending count of infeasible solutions
// they dominate. Output is sorted best-first.
std::vector<Rank> rank_solutions(const std::vector<EvaluatedSolution>& pop, Sense sense);

} // namespace rems
