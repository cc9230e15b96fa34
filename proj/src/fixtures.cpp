#include "rems/fixtures.hpp"

#include <algorithm>
#include <cmath>

#include "rems/rng.hpp"

namespace rems {

namespace {

Fixture tiny_gap() {
    GapInstance inst;
    inst.capacities = {6, 6};
    inst.demand = {{3, 2, 2, 3}, {2, 3, 3, 2}};
    inst.cost = {{4, 1, 3, 2}, {2, 3, 4, 3}};
    return {"T-GAP-1", inst, 9};
}

Fixture tiny_bppc() {
    BppcInstance inst;
    inst.bin_capacity = 8;
    inst.sizes = {4, 3, 3, 2, 2, 2};
    inst.conflicts = {{1, 2}, {1, 3}, {2, 3}};
    return {"T-BPPC-1", inst, 3};
}

Fixture tiny_gc() {
    GcInstance inst;
    inst.node_count = 8;
    // A 5-cycle joined to a triangle: chromatic number 3, four colors offered.
    inst.edges = {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 1},
                  {6, 7}, {6, 8}, {7, 8}, {1, 6}, {3, 7}};
    inst.color_count = 4;
    return {"T-GC-1", inst, 3};
}

Fixture tiny_jssp() {
    JsspInstance inst;
    inst.machine_count = 2;
    inst.jobs = {{{1, 3}, {2, 2}}, {{2, 2}, {1, 4}}};
    return {"T-JSSP-1", inst, 7};
}

Fixture tiny_vrptw() {
    // Depot at 0 and four customers on a line, unit spacing.
    VrptwInstance inst;
    std::vector<double> x = {0, 1, 2, 3, 4};
    inst.travel.assign(5, std::vector<double>(5));
    for (std::size_t a = 0; a < 5; ++a)
        for (std::size_t b = 0; b < 5; ++b) inst.travel[a][b] = std::abs(x[a] - x[b]);
    inst.demand = {0, 1, 1, 1, 1};
    inst.service = {0, 0, 0, 0, 0};
    inst.window_open = {0, 0, 0, 0, 0};
    inst.window_close = {100, 100, 100, 100, 100};
    inst.vehicle_count = 1;
    inst.vehicle_capacity = 10;
    return {"T-VRPTW-1", inst, 8};
}

Fixture medium_gap() {
    Rng rng(101);
    int m = 4, n = 12;
    GapInstance inst;
    inst.demand.assign(static_cast<std::size_t>(m), std::vector<double>(static_cast<std::size_t>(n)));
    inst.cost.assign(static_cast<std::size_t>(m), std::vector<double>(static_cast<std::size_t>(n)));
    double total = 0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            inst.demand[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                rng.uniform_int(2, 6);
            inst.cost[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                rng.uniform_int(1, 10);
            total += inst.demand[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
    double cap = std::ceil(1.5 * total / (m * m)); // ~1.5x the mean per-agent load
    inst.capacities.assign(static_cast<std::size_t>(m), cap);
    double lb = 0;
    for (int j = 0; j < n; ++j) {
        double best = inst.cost[0][static_cast<std::size_t>(j)];
        for (int i = 1; i < m; ++i)
            best = std::min(best, inst.cost[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
        lb += best;
    }
    return {"M-GAP-1", inst, lb};
}

Fixture medium_bppc() {
    Rng rng(202);
    int n = 16;
    BppcInstance inst;
    inst.bin_capacity = 10;
    double total = 0;
    for (int j = 0; j < n; ++j) {
        inst.sizes.push_back(rng.uniform_int(2, 7));
        total += inst.sizes.back();
    }
    for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b)
            if (rng.uniform01() < 0.15) inst.conflicts.emplace_back(a, b);
    return {"M-BPPC-1", inst, std::ceil(total / inst.bin_capacity)};
}

Fixture medium_gc() {
    Rng rng(303);
    GcInstance inst;
    inst.node_count = 16;
    for (int a = 1; a <= inst.node_count; ++a)
        for (int b = a + 1; b <= inst.node_count; ++b)
            if (rng.uniform01() < 0.3) inst.edges.emplace_back(a, b);
    inst.color_count = 8;
    return {"M-GC-1", inst, inst.edges.empty() ? 1 : 2};
}

Fixture medium_jssp() {
    Rng rng(404);
    JsspInstance inst;
    inst.machine_count = 3;
    int jobs = 4;
    for (int j = 0; j < jobs; ++j) {
        std::vector<int> order = {1, 2, 3};
        for (std::size_t k = order.size(); k > 1; --k)
            std::swap(order[k - 1], order[rng.uniform_index(k)]);
        std::vector<std::pair<int, double>> ops;
        for (int mach : order) ops.emplace_back(mach, rng.uniform_int(1, 9));
        inst.jobs.push_back(std::move(ops));
    }
    std::vector<double> machine_load(4, 0);
    double job_max = 0;
    for (const auto& job : inst.jobs) {
        double jt = 0;
        for (auto [mach, dur] : job) {
            machine_load[static_cast<std::size_t>(mach)] += dur;
            jt += dur;
        }
        job_max = std::max(job_max, jt);
    }
    double lb = std::max(job_max, *std::max_element(machine_load.begin(), machine_load.end()));
    return {"M-JSSP-1", inst, lb};
}

Fixture medium_vrptw() {
    Rng rng(505);
    int n = 10;
    VrptwInstance inst;
    std::vector<double> x(static_cast<std::size_t>(n) + 1), y(static_cast<std::size_t>(n) + 1);
    x[0] = 10;
    y[0] = 10;
    for (int j = 1; j <= n; ++j) {
        x[static_cast<std::size_t>(j)] = rng.uniform_int(0, 20);
        y[static_cast<std::size_t>(j)] = rng.uniform_int(0, 20);
    }
    inst.travel.assign(static_cast<std::size_t>(n) + 1,
                       std::vector<double>(static_cast<std::size_t>(n) + 1));
    for (std::size_t a = 0; a <= static_cast<std::size_t>(n); ++a)
        for (std::size_t b = 0; b <= static_cast<std::size_t>(n); ++b)
            inst.travel[a][b] = std::hypot(x[a] - x[b], y[a] - y[b]);
    inst.demand.assign(static_cast<std::size_t>(n) + 1, 0);
    inst.service.assign(static_cast<std::size_t>(n) + 1, 0);
    inst.window_open.assign(static_cast<std::size_t>(n) + 1, 0);
    inst.window_close.assign(static_cast<std::size_t>(n) + 1, 500);
    for (int j = 1; j <= n; ++j) {
        inst.demand[static_cast<std::size_t>(j)] = rng.uniform_int(1, 8);
        inst.service[static_cast<std::size_t>(j)] = rng.uniform_int(1, 3);
    }
    inst.vehicle_count = 3;
    inst.vehicle_capacity = 30;
    return {"M-VRPTW-1", inst, 0};
}

} // namespace

std::vector<Fixture> tiny_fixtures() {
    return {tiny_gap(), tiny_bppc(), tiny_gc(), tiny_jssp(), tiny_vrptw()};
}

std::vector<Fixture> medium_fixtures() {
    return {medium_gap(), medium_bppc(), medium_gc(), medium_jssp(), medium_vrptw()};
}

std::vector<Fixture> all_fixtures() {
    auto all = tiny_fixtures();
    auto med = medium_fixtures();
    all.insert(all.end(), med.begin(), med.end());
    return all;
}

Fixture fixture_by_id(const std::string& id) {
    for (auto& f : all_fixtures())
        if (f.id == id) return f;
    throw InvalidInstance("unknown fixture id: " + id);
}

} // namespace rems
