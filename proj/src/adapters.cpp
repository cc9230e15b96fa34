#include "rems/adapters.hpp"

#include <algorithm>
#include <cmath>

namespace rems {

namespace {

std::vector<Resource> make_resources(int m, int capacity = kUnbounded) {
    std::vector<Resource> r(static_cast<std::size_t>(m));
    for (int i = 1; i <= m; ++i) {
        r[static_cast<std::size_t>(i - 1)].index = i;
        r[static_cast<std::size_t>(i - 1)].position_capacity = capacity;
    }
    return r;
}

std::vector<Task> make_tasks(int n) {
    std::vector<Task> t(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) t[static_cast<std::size_t>(j - 1)].index = j;
    return t;
}

CoeffFn table_coeff(std::vector<std::vector<double>> table) {
    return [table = std::move(table)](int i, int j, int) {
        return table[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
    };
}

ConstraintSpec each_task_exactly_once(int m, int n) {
    TaskAggregate each;
    each.coeff = [](int, int, int) { return 1.0; };
    each.thresholds.assign(static_cast<std::size_t>(n), 1.0);
    each.rel = Relation::Eq;
    each.coeff_table.assign(static_cast<std::size_t>(m),
                            std::vector<double>(static_cast<std::size_t>(n), 1.0));
    return {"each_task_once", std::move(each)};
}

double used_resource_count(const SolutionStructure& s) {
    double used = 0;
    for (const auto& sub : s.per_resource)
        if (!sub.empty()) used += 1;
    return used;
}

} // namespace

ProblemModel model_gap(const GapInstance& inst) {
    int m = static_cast<int>(inst.capacities.size());
    if (m == 0 || inst.demand.size() != static_cast<std::size_t>(m) ||
        inst.cost.size() != static_cast<std::size_t>(m))
        throw InvalidInstance("gap: inconsistent agent count");
    int n = static_cast<int>(inst.demand[0].size());
    for (int i = 0; i < m; ++i)
        if (inst.demand[static_cast<std::size_t>(i)].size() != static_cast<std::size_t>(n) ||
            inst.cost[static_cast<std::size_t>(i)].size() != static_cast<std::size_t>(n))
            throw InvalidInstance("gap: ragged demand/cost matrix");
    for (const auto& row : inst.demand)
        for (double q : row)
            if (q <= 0) throw InvalidInstance("gap: demands must be positive");
    for (double q : inst.capacities)
        if (q <= 0) throw InvalidInstance("gap: capacities must be positive");

    ProblemModel model;
    model.resources = make_resources(m);
    model.tasks = make_tasks(n);
    model.ordered = false;

    ResourceAggregate cap;
    cap.coeff_table = inst.demand;
    cap.coeff = table_coeff(inst.demand);
    cap.thresholds = inst.capacities;
    cap.rel = Relation::Le;
    model.constraints.push_back({"agent_capacity", std::move(cap)});
    model.constraints.push_back(each_task_exactly_once(m, n));

    model.objective.sense = Sense::Min;
    model.objective.builtin = "linear_cost";
    model.objective.cost_table = inst.cost;
    auto cost = inst.cost;
    model.objective.value = [cost](const SolutionStructure& s, const AttributeSet&) {
        double total = 0;
        for (std::size_t i = 0; i < s.per_resource.size(); ++i)
            for (int j : s.per_resource[i]) total += cost[i][static_cast<std::size_t>(j - 1)];
        return total;
    };
    model.validate();
    return model;
}

ProblemModel model_bppc(const BppcInstance& inst) {
    int n = static_cast<int>(inst.sizes.size());
    if (n == 0 || inst.bin_capacity <= 0) throw InvalidInstance("bppc: empty instance");
    for (auto [a, b] : inst.conflicts)
        if (a < 1 || a > n || b < 1 || b > n || a == b)
            throw InvalidInstance("bppc: bad conflict pair");

    // One bin per item is always enough.
    int m = n;
    ProblemModel model;
    model.resources = make_resources(m);
    model.tasks = make_tasks(n);
    model.ordered = false;

    ResourceAggregate cap;
    cap.coeff_table.assign(static_cast<std::size_t>(m),
                           std::vector<double>(inst.sizes.begin(), inst.sizes.end()));
    cap.coeff = table_coeff(cap.coeff_table);
    cap.thresholds.assign(static_cast<std::size_t>(m), inst.bin_capacity);
    cap.rel = Relation::Le;
    model.constraints.push_back({"bin_capacity", std::move(cap)});

    Pairing conflict;
    conflict.pairs = inst.conflicts;
    conflict.mode = PairingMode::DifferentResource;
    model.constraints.push_back({"conflicts", std::move(conflict)});
    model.constraints.push_back(each_task_exactly_once(m, n));

    model.objective.sense = Sense::Min;
    model.objective.builtin = "used_resources";
    model.objective.value = [](const SolutionStructure& s, const AttributeSet&) {
        return used_resource_count(s);
    };
    model.validate();
    return model;
}

ProblemModel model_gc(const GcInstance& inst) {
    int n = inst.node_count;
    if (n == 0 || inst.color_count < 1) throw InvalidInstance("gc: empty instance");
    for (auto [a, b] : inst.edges)
        if (a < 1 || a > n || b < 1 || b > n || a == b)
            throw InvalidInstance("gc: bad edge");

    ProblemModel model;
    model.resources = make_resources(inst.color_count);
    model.tasks = make_tasks(n);
    model.ordered = false;

    model.constraints.push_back(each_task_exactly_once(inst.color_count, n));

    Pairing adj;
    adj.pairs = inst.edges;
    adj.mode = PairingMode::DifferentResource;
    model.constraints.push_back({"adjacency", std::move(adj)});

    model.objective.sense = Sense::Min;
    model.objective.builtin = "used_resources";
    model.objective.value = [](const SolutionStructure& s, const AttributeSet&) {
        return used_resource_count(s);
    };
    model.validate();
    return model;
}

int jssp_task_index(const JsspInstance& inst, int job, int op) {
    int idx = 0;
    for (int j = 1; j < job; ++j) idx += static_cast<int>(inst.jobs[static_cast<std::size_t>(j - 1)].size());
    return idx + op;
}

namespace {

struct JsspLayout {
    std::vector<int> machine_of;   // per task, 1-based
    std::vector<double> duration;  // per task
    std::vector<int> job_of;       // per task
    std::vector<int> op_of;        // per task, 1-based within the job
    std::vector<int> predecessor;  // previous op of the same job, 0 if first
};

JsspLayout jssp_layout(const JsspInstance& inst) {
    JsspLayout lay;
    int n = inst.operation_count();
    lay.machine_of.resize(static_cast<std::size_t>(n) + 1);
    lay.duration.resize(static_cast<std::size_t>(n) + 1);
    lay.job_of.resize(static_cast<std::size_t>(n) + 1);
    lay.op_of.resize(static_cast<std::size_t>(n) + 1);
    lay.predecessor.resize(static_cast<std::size_t>(n) + 1);
    int t = 0;
    for (int j = 1; j <= static_cast<int>(inst.jobs.size()); ++j) {
        const auto& ops = inst.jobs[static_cast<std::size_t>(j - 1)];
        for (int o = 1; o <= static_cast<int>(ops.size()); ++o) {
            ++t;
            lay.machine_of[static_cast<std::size_t>(t)] = ops[static_cast<std::size_t>(o - 1)].first;
            lay.duration[static_cast<std::size_t>(t)] = ops[static_cast<std::size_t>(o - 1)].second;
            lay.job_of[static_cast<std::size_t>(t)] = j;
            lay.op_of[static_cast<std::size_t>(t)] = o;
            lay.predecessor[static_cast<std::size_t>(t)] = o > 1 ? t - 1 : 0;
        }
    }
    return lay;
}

struct JsspSchedule {
    AttributeTensor start, end;
    std::vector<double> task_start, task_end; // first occurrence per task, -1 if unscheduled
    int forced = 0;                           // deadlock-forced operations
};

// List-scheduling semantics: machines process their sub-assignments in
// position order; an operation starts at max(machine ready, job ready).
// Circular waits are broken deterministically and counted.
JsspSchedule jssp_schedule(const JsspLayout& lay, const SolutionStructure& s) {
    int m = s.resource_count();
    JsspSchedule sch;
    sch.start.resize(static_cast<std::size_t>(m));
    sch.end.resize(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        sch.start[static_cast<std::size_t>(i)].assign(s.per_resource[static_cast<std::size_t>(i)].size(), 0.0);
        sch.end[static_cast<std::size_t>(i)].assign(s.per_resource[static_cast<std::size_t>(i)].size(), 0.0);
    }
    sch.task_start.assign(lay.machine_of.size(), -1.0);
    sch.task_end.assign(lay.machine_of.size(), -1.0);

    std::vector<std::size_t> pos(static_cast<std::size_t>(m), 0);
    std::vector<double> machine_ready(static_cast<std::size_t>(m), 0.0);

    auto schedule_at = [&](int i, bool forced) {
        std::size_t k = pos[static_cast<std::size_t>(i)];
        int t = s.per_resource[static_cast<std::size_t>(i)][k];
        int pred = lay.predecessor[static_cast<std::size_t>(t)];
        double job_ready = 0;
        if (pred != 0 && sch.task_end[static_cast<std::size_t>(pred)] >= 0)
            job_ready = sch.task_end[static_cast<std::size_t>(pred)];
        double st = forced ? machine_ready[static_cast<std::size_t>(i)]
                           : std::max(machine_ready[static_cast<std::size_t>(i)], job_ready);
        double en = st + lay.duration[static_cast<std::size_t>(t)];
        sch.start[static_cast<std::size_t>(i)][k] = st;
        sch.end[static_cast<std::size_t>(i)][k] = en;
        if (sch.task_start[static_cast<std::size_t>(t)] < 0) {
            sch.task_start[static_cast<std::size_t>(t)] = st;
            sch.task_end[static_cast<std::size_t>(t)] = en;
        }
        machine_ready[static_cast<std::size_t>(i)] = en;
        ++pos[static_cast<std::size_t>(i)];
    };

    while (true) {
        bool progress = false;
        for (int i = 0; i < m; ++i) {
            while (pos[static_cast<std::size_t>(i)] < s.per_resource[static_cast<std::size_t>(i)].size()) {
                int t = s.per_resource[static_cast<std::size_t>(i)][pos[static_cast<std::size_t>(i)]];
                int pred = lay.predecessor[static_cast<std::size_t>(t)];
                bool ready = pred == 0 || sch.task_end[static_cast<std::size_t>(pred)] >= 0;
                if (!ready) break;
                schedule_at(i, false);
                progress = true;
            }
        }
        if (progress) continue;
        // All done, or a circular wait: force the lowest pending machine.
        int blocked = -1;
        for (int i = 0; i < m; ++i)
            if (pos[static_cast<std::size_t>(i)] < s.per_resource[static_cast<std::size_t>(i)].size()) {
                blocked = i;
                break;
            }
        if (blocked < 0) break;
        schedule_at(blocked, true);
        ++sch.forced;
    }
    return sch;
}

} // namespace

ProblemModel model_jssp(const JsspInstance& inst) {
    int m = inst.machine_count;
    int n = inst.operation_count();
    if (m == 0 || n == 0) throw InvalidInstance("jssp: empty instance");
    for (const auto& job : inst.jobs) {
        std::vector<bool> seen(static_cast<std::size_t>(m) + 1, false);
        for (auto [mach, dur] : job) {
            if (mach < 1 || mach > m) throw InvalidInstance("jssp: bad machine index");
            if (dur < 0) throw InvalidInstance("jssp: negative duration");
            if (seen[static_cast<std::size_t>(mach)])
                throw InvalidInstance("jssp: job visits a machine twice");
            seen[static_cast<std::size_t>(mach)] = true;
        }
    }

    auto lay = jssp_layout(inst);

    ProblemModel model;
    model.resources = make_resources(m);
    model.tasks = make_tasks(n);
    model.ordered = true;

    model.attribute_evaluators.push_back(
        {"start", [lay](const SolutionStructure& s) { return jssp_schedule(lay, s).start; }});
    model.attribute_evaluators.push_back(
        {"end", [lay](const SolutionStructure& s) { return jssp_schedule(lay, s).end; }});

    model.constraints.push_back(each_task_exactly_once(m, n));

    // Machine eligibility: operation j may only run on its own machine.
    ResourceTaskAggregate elig;
    elig.coeff = [](int, int, int) { return 1.0; };
    elig.rel = Relation::Le;
    auto machine_of = lay.machine_of;
    elig.threshold = [machine_of, n](int i, int j) {
        return machine_of[static_cast<std::size_t>(j)] == i ? static_cast<double>(n) : 0.0;
    };
    model.constraints.push_back({"machine_eligibility", std::move(elig)});

    // Cross-machine job order: count job-order inversions in the computed
    // schedule plus deadlock-forced operations.
    CustomConstraint order;
    order.equality = false;
    order.residuals = [lay](const SolutionStructure& s, const AttributeSet&) {
        auto sch = jssp_schedule(lay, s);
        double inversions = 0;
        for (std::size_t t = 1; t < lay.machine_of.size(); ++t) {
            int pred = lay.predecessor[t];
            if (pred == 0) continue;
            if (sch.task_start[t] < 0 || sch.task_end[static_cast<std::size_t>(pred)] < 0) continue;
            if (sch.task_start[t] < sch.task_end[static_cast<std::size_t>(pred)] - kFeasTol)
                inversions += 1;
        }
        return std::vector<double>{inversions};
    };
    model.constraints.push_back({"job_order", std::move(order)});

    model.objective.sense = Sense::Min;
    model.objective.builtin = "attribute_max";
    model.objective.attribute = "end";
    model.objective.value = [](const SolutionStructure&, const AttributeSet& attrs) {
        double best = 0;
        for (const auto& row : attrs.at("end"))
            for (double v : row) best = std::max(best, v);
        return best;
    };
    model.validate();
    return model;
}

ProblemModel model_vrptw(const VrptwInstance& inst) {
    int n = inst.customer_count();
    if (n < 1 || inst.vehicle_count < 1) throw InvalidInstance("vrptw: empty instance");
    if (inst.travel.size() != static_cast<std::size_t>(n) + 1)
        throw InvalidInstance("vrptw: travel matrix size mismatch");
    for (const auto& row : inst.travel) {
        if (row.size() != static_cast<std::size_t>(n) + 1)
            throw InvalidInstance("vrptw: travel matrix not square");
        for (double t : row)
            if (t < 0) throw InvalidInstance("vrptw: negative travel time");
    }
    for (int j = 1; j <= n; ++j)
        if (inst.window_open[static_cast<std::size_t>(j)] > inst.window_close[static_cast<std::size_t>(j)])
            throw InvalidInstance("vrptw: empty time window");

    ProblemModel model;
    model.resources = make_resources(inst.vehicle_count);
    model.tasks = make_tasks(n);
    model.ordered = true;

    auto travel = inst.travel;
    auto service = inst.service;
    auto open = inst.window_open;
    auto close = inst.window_close;
    auto demand = inst.demand;

    // Start times follow the route recursion extended with waiting: a vehicle
    // arriving early waits until the window opens.
    auto starts = [travel, service, open](const SolutionStructure& s) {
        AttributeTensor start(s.per_resource.size());
        for (std::size_t i = 0; i < s.per_resource.size(); ++i) {
            const auto& sub = s.per_resource[i];
            start[i].resize(sub.size());
            for (std::size_t k = 0; k < sub.size(); ++k) {
                int j = sub[k];
                double arrival = k == 0 ? travel[0][static_cast<std::size_t>(j)]
                                        : start[i][k - 1] +
                                              travel[static_cast<std::size_t>(sub[k - 1])]
                                                    [static_cast<std::size_t>(j)];
                start[i][k] = std::max(arrival, open[static_cast<std::size_t>(j)]);
            }
        }
        return start;
    };
    model.attribute_evaluators.push_back({"start", starts});
    model.attribute_evaluators.push_back({"end", [starts, service](const SolutionStructure& s) {
                                              auto t = starts(s);
                                              for (std::size_t i = 0; i < t.size(); ++i)
                                                  for (std::size_t k = 0; k < t[i].size(); ++k)
                                                      t[i][k] += service[static_cast<std::size_t>(
                                                          s.per_resource[i][k])];
                                              return t;
                                          }});
    model.attribute_evaluators.push_back({"load", [demand](const SolutionStructure& s) {
                                              AttributeTensor t(s.per_resource.size());
                                              for (std::size_t i = 0; i < t.size(); ++i) {
                                                  t[i].resize(s.per_resource[i].size());
                                                  for (std::size_t k = 0; k < t[i].size(); ++k)
                                                      t[i][k] = demand[static_cast<std::size_t>(
                                                          s.per_resource[i][k])];
                                              }
                                              return t;
                                          }});

    ResourceAggregate cap;
    cap.coeff = [demand](int, int j, int) { return demand[static_cast<std::size_t>(j)]; };
    cap.thresholds.assign(static_cast<std::size_t>(inst.vehicle_count), inst.vehicle_capacity);
    cap.rel = Relation::Le;
    model.constraints.push_back({"vehicle_capacity", std::move(cap)});
    model.constraints.push_back(each_task_exactly_once(inst.vehicle_count, n));

    CustomConstraint windows;
    windows.equality = false;
    windows.residuals = [open, close](const SolutionStructure& s, const AttributeSet& attrs) {
        const auto& start = attrs.at("start");
        std::vector<double> rows;
        for (std::size_t i = 0; i < start.size(); ++i)
            for (std::size_t k = 0; k < start[i].size(); ++k) {
                int j = s.per_resource[i][k];
                rows.push_back(start[i][k] - close[static_cast<std::size_t>(j)]);
                rows.push_back(open[static_cast<std::size_t>(j)] - start[i][k]);
            }
        return rows;
    };
    model.constraints.push_back({"time_windows", std::move(windows)});

    model.objective.sense = Sense::Min;
    model.objective.value = [travel](const SolutionStructure& s, const AttributeSet&) {
        double total = 0;
        for (const auto& sub : s.per_resource) {
            if (sub.empty()) continue;
            total += travel[0][static_cast<std::size_t>(sub.front())];
            for (std::size_t k = 1; k < sub.size(); ++k)
                total += travel[static_cast<std::size_t>(sub[k - 1])][static_cast<std::size_t>(sub[k])];
            total += travel[static_cast<std::size_t>(sub.back())][0];
        }
        return total;
    };
    model.validate();
    return model;
}

} // namespace rems
