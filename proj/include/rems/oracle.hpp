#pragma once

#include <cstdint>

#include "rems/model.hpp"

namespace rems {

enum class OracleStatus { Optimal, Infeasible, TooLarge };

struct OracleOptions {
    // Abort with TooLarge once this many structures have been enumerated.
    std::uint64_t node_limit = 50'000'000;
    // When all resources are interchangeable (same capacity, task coefficients
    // independent of the resource index), restrict enumeration so task j may
    // open resource r only if r <= (highest resource used so far) + 1.
    bool symmetric_resources = false;
};

struct OracleResult {
    OracleStatus status = OracleStatus::TooLarge;
    double objective = 0;           // valid when status == Optimal
    SolutionStructure best;         // one optimal feasible structure
    std::uint64_t nodes_visited = 0;
};

// Exhaustive search over every well-formed structure: each task is either
// unassigned or placed at one (resource, position) cell. Returns the best
// feasible structure under the model's objective sense.
OracleResult brute_force_oracle(const ProblemModel& model, const OracleOptions& opts = {});

} // namespace rems
