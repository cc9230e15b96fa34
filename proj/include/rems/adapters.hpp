#pragma once

#include "rems/model.hpp"

namespace rems {

// Generalized assignment: agents with capacities, jobs with per-agent demand
// and cost.
struct GapInstance {
    std::vector<double> capacities;           // Q_i, size m
    std::vector<std::vector<double>> demand;  // q[i][j], m x n
    std::vector<std::vector<double>> cost;    // c[i][j], m x n
};

// Bin packing with conflicts.
struct BppcInstance {
    double bin_capacity = 0;
    std::vector<double> sizes;                    // item sizes, size n
    std::vector<std::pair<int, int>> conflicts;   // 1-based item pairs
};

// Graph coloring: color nodes so adjacent nodes differ.
struct GcInstance {
    int node_count = 0;
    std::vector<std::pair<int, int>> edges; // 1-based, no self loops
    int color_count = 0;                    // available colors (resources)
};

// Job shop: per job an ordered list of (machine, duration).
struct JsspInstance {
    int machine_count = 0;
    std::vector<std::vector<std::pair<int, double>>> jobs; // 1-based machines

    int operation_count() const {
        int c = 0;
        for (const auto& j : jobs) c += static_cast<int>(j.size());
        return c;
    }
};

// VRPTW with an explicit travel-time matrix; row/column 0 is the depot.
struct VrptwInstance {
    std::vector<std::vector<double>> travel; // (n+1) x (n+1)
    std::vector<double> demand;              // size n+1, index 0 unused
    std::vector<double> service;             // size n+1, index 0 unused
    std::vector<double> window_open;         // e_j
    std::vector<double> window_close;        // l_j
    int vehicle_count = 0;
    double vehicle_capacity = 0;

    int customer_count() const { return static_cast<int>(demand.size()) - 1; }
};

ProblemModel model_gap(const GapInstance& inst);
ProblemModel model_bppc(const BppcInstance& inst);
ProblemModel model_gc(const GcInstance& inst);
ProblemModel model_jssp(const JsspInstance& inst);
ProblemModel model_vrptw(const VrptwInstance& inst);

// JSSP task numbering: operations in job order, then operation order.
int jssp_task_index(const JsspInstance& inst, int job, int op); // 1-based

} // namespace rems
