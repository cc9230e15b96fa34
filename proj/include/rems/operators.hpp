#pragma once

#include <cstdint>
#include <optional>
#include <set>

#include "rems/model.hpp"
#include "rems/ranking.hpp"
#include "rems/rng.hpp"

namespace rems {

// Per-run evaluation funnel: everything the operators score goes through
// eval() so evaluation counts stay comparable across algorithms.
struct SearchContext {
    const ProblemModel& model;
    Rng& rng;
    std::uint64_t evals = 0;

    EvaluatedSolution eval(const SolutionStructure& s) {
        ++evals;
        return evaluate(model, s);
    }
};

struct ConstructionState {
    EvaluatedSolution current;
    std::set<int> infeasible_resources;             // inR
    std::vector<std::set<int>> infeasible_tasks;    // inT_i, index 0 = resource 1

    static ConstructionState from(EvaluatedSolution sol, int m) {
        ConstructionState st;
        st.current = std::move(sol);
        st.infeasible_tasks.resize(static_cast<std::size_t>(m));
        return st;
    }
};

// The ten concrete neighborhood structures derived from the six families.
enum class NeighborhoodKind {
    SwapIntra,
    SwapInter,
    ShiftIntra,
    ShiftInter,
    ShiftAllInter,
    Remove,
    Insert,
    RemoveInsert,
    ReverseIntra,
    ReverseInter,
};
inline constexpr int kNumNeighborhoods = 10;

const char* neighborhood_name(NeighborhoodKind k);

enum class AssignStatus {
    Inserted,           // unit assignment accepted
    Rejected,           // candidate worse; bookkeeping updated
    NoFeasibleResource, // FR empty: construction is complete
};

// One attempted unit assignment: pick a feasible resource,
// task and best feasible position; accept if no worse than the current
// solution. With require_non_increasing, acceptance additionally requires the
// violation vector not to increase componentwise (the insert rule for
// neighborhood moves).
AssignStatus feasible_assignment(SearchContext& ctx, ConstructionState& state,
                                 bool require_non_increasing = false);

// Greedy construction from the empty structure: loop feasible_assignment until
// no feasible resource remains.
EvaluatedSolution initial_solution(SearchContext& ctx);

// The repair loop: feasible_assignment from the given solution with fresh
// infeasibility sets.
EvaluatedSolution repair(SearchContext& ctx, EvaluatedSolution sol,
                         bool require_non_increasing = false);

// Apply one neighborhood move. nullopt = move not reachable for this solution
// (feeds the -2 reward branch).
std::optional<EvaluatedSolution> apply_neighborhood(SearchContext& ctx,
                                                    const EvaluatedSolution& sol,
                                                    NeighborhoodKind kind);

// Remove min(nd, assigned) uniformly random tasks, then repair.
EvaluatedSolution destroy_repair(SearchContext& ctx, const EvaluatedSolution& sol, int nd);

// Crossovers. Single-point requires m == 1, two-point m >= 2.
EvaluatedSolution single_point_crossover(SearchContext& ctx, const EvaluatedSolution& p1,
                                         const EvaluatedSolution& p2);
EvaluatedSolution two_point_crossover(SearchContext& ctx, const EvaluatedSolution& p1,
                                      const EvaluatedSolution& p2);

// Per individual, with probability p_c pick parent 2 by 2-tournament
// and cross; otherwise the offspring is the parent itself.
std::vector<EvaluatedSolution> crossover_operation(SearchContext& ctx,
                                                   const std::vector<EvaluatedSolution>& pop,
                                                   double p_c);

} // namespace rems
