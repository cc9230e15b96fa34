#include <doctest.h>

#include <array>

#include "helpers.hpp"
#include "rems/fixtures.hpp"
#include "rems/rng.hpp"

using namespace rems;
using testutil::bare_model;
using testutil::eval_of;

TEST_CASE("model validation rejects bad index sets") {
    auto model = bare_model(2, 2);
    model.resources[1].index = 3;
    CHECK_THROWS_AS(model.validate(), InvalidInstance);

    model = bare_model(2, 2);
    model.tasks[0].index = 2; // duplicate
    CHECK_THROWS_AS(model.validate(), InvalidInstance);

    model = bare_model(1, 1);
    model.resources[0].position_capacity = 0;
    CHECK_THROWS_AS(model.validate(), InvalidInstance);
}

TEST_CASE("assignment tensor") {
    SUBCASE("empty structure has no entries") {
        auto t = to_assignment_tensor(SolutionStructure::empty_for(2), 3);
        CHECK(t.entries.empty());
    }
    SUBCASE("m=1, S_1=(3,1)") {
        SolutionStructure s;
        s.per_resource = {{3, 1}};
        auto t = to_assignment_tensor(s, 3);
        REQUIRE(t.entries.size() == 2);
        CHECK(t.entries[0].resource == 1);
        CHECK(t.entries[0].task == 3);
        CHECK(t.entries[0].position == 1);
        CHECK(t.entries[1].task == 1);
        CHECK(t.entries[1].position == 2);
    }
    SUBCASE("entry count equals total assigned") {
        SolutionStructure s;
        s.per_resource = {{2, 1}, {}, {3}};
        CHECK(to_assignment_tensor(s, 3).entries.size() == s.total_assigned());
    }
}

TEST_CASE("violation measure hand cases") {
    auto model = bare_model(1, 1);

    SUBCASE("inequality residual g = -3 gives violation 0") {
        CustomConstraint c;
        c.equality = false;
        c.residuals = [](const SolutionStructure&, const AttributeSet&) {
            return std::vector<double>{-3.0};
        };
        model.constraints.push_back({"g", std::move(c)});
        CHECK(eval_of(model, {{}}).violations[0] == 0.0);
    }
    SUBCASE("equality residual h = -3 gives violation 3") {
        CustomConstraint c;
        c.equality = true;
        c.residuals = [](const SolutionStructure&, const AttributeSet&) {
            return std::vector<double>{-3.0};
        };
        model.constraints.push_back({"h", std::move(c)});
        CHECK(eval_of(model, {{}}).violations[0] == 3.0);
    }
}

TEST_CASE("aggregate relations expand correctly") {
    auto model = bare_model(1, 3);
    ResourceAggregate agg;
    agg.coeff = [](int, int, int) { return 1.0; };
    agg.thresholds = {2.0};

    SUBCASE("le: violation = max(0, expr - theta)") {
        agg.rel = Relation::Le;
        model.constraints.push_back({"a", agg});
        CHECK(eval_of(model, {{1}}).violations[0] == 0.0);
        CHECK(eval_of(model, {{1, 2, 3}}).violations[0] == 1.0);
    }
    SUBCASE("ge: violation = max(0, theta - expr)") {
        agg.rel = Relation::Ge;
        model.constraints.push_back({"a", agg});
        CHECK(eval_of(model, {{1}}).violations[0] == 1.0);
        CHECK(eval_of(model, {{1, 2, 3}}).violations[0] == 0.0);
    }
    SUBCASE("eq: violation = |expr - theta|") {
        agg.rel = Relation::Eq;
        model.constraints.push_back({"a", agg});
        CHECK(eval_of(model, {{}}).violations[0] == 2.0);
        CHECK(eval_of(model, {{1, 2, 3}}).violations[0] == 1.0);
    }
}

TEST_CASE("known assignment objective on the small two-agent instance") {
    auto model = model_gap(std::get<GapInstance>(fixture_by_id("T-GAP-1").instance));
    auto e = eval_of(model, {{2, 3}, {1, 4}});
    CHECK(e.objective_value == doctest::Approx(1 + 3 + 2 + 3));
    CHECK(e.feasible());
}

TEST_CASE("resource aggregate reduces to count and capacity constraints") {
    Rng rng(42);
    GapInstance inst = std::get<GapInstance>(fixture_by_id("T-GAP-1").instance);

    // Count form: coefficients 1, thresholds n_i.
    auto count_model = bare_model(2, 4);
    ResourceAggregate count_agg;
    count_agg.coeff = [](int, int, int) { return 1.0; };
    count_agg.thresholds = {2.0, 3.0};
    count_agg.rel = Relation::Le;
    count_model.constraints.push_back({"count", std::move(count_agg)});

    // Capacity form: coefficients q_{i,j}, thresholds Q_i.
    auto cap_model = bare_model(2, 4);
    ResourceAggregate cap_agg;
    cap_agg.coeff = [inst](int i, int j, int) {
        return inst.demand[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
    };
    cap_agg.thresholds = inst.capacities;
    cap_agg.rel = Relation::Le;
    cap_model.constraints.push_back({"cap", std::move(cap_agg)});

    for (int trial = 0; trial < 200; ++trial) {
        SolutionStructure s = SolutionStructure::empty_for(2);
        for (int j = 1; j <= 4; ++j) {
            int pick = rng.uniform_int(0, 2);
            if (pick > 0) s.per_resource[static_cast<std::size_t>(pick - 1)].push_back(j);
        }
        double count_expected = 0, cap_expected = 0;
        std::array<double, 2> caps{2.0, 3.0};
        for (int i = 0; i < 2; ++i) {
            const auto& sub = s.per_resource[static_cast<std::size_t>(i)];
            count_expected += std::max(0.0, static_cast<double>(sub.size()) - caps[static_cast<std::size_t>(i)]);
            double load = 0;
            for (int j : sub)
                load += inst.demand[static_cast<std::size_t>(i)][static_cast<std::size_t>(j - 1)];
            cap_expected += std::max(0.0, load - inst.capacities[static_cast<std::size_t>(i)]);
        }
        CHECK(evaluate(count_model, s).violations[0] == doctest::Approx(count_expected));
        CHECK(evaluate(cap_model, s).violations[0] == doctest::Approx(cap_expected));
    }
}

TEST_CASE("unordered models are invariant to within-resource permutation") {
    auto model = model_gap(std::get<GapInstance>(fixture_by_id("T-GAP-1").instance));
    auto a = eval_of(model, {{2, 3}, {1, 4}});
    auto b = eval_of(model, {{3, 2}, {4, 1}});
    CHECK(a.objective_value == b.objective_value);
    CHECK(a.violations == b.violations);
}

TEST_CASE("route attribute recursion") {
    std::vector<std::vector<double>> t = {{0, 0, 5, 0, 7},
                                          {0, 0, 0, 0, 0},
                                          {0, 0, 0, 0, 2},
                                          {0, 0, 0, 0, 0},
                                          {0, 0, 0, 0, 0}};
    std::vector<double> service = {0, 0, 3, 0, 1};

    SUBCASE("single-task route") {
        SolutionStructure s;
        s.per_resource = {{2}};
        auto [ys, ye] = evaluate_vrptw_attributes(s, t, service);
        CHECK(ys[0][0] == 5.0);
        CHECK(ye[0][0] == 8.0);
    }
    SUBCASE("second position starts at previous start plus travel") {
        SolutionStructure s;
        s.per_resource = {{2, 4}};
        auto [ys, ye] = evaluate_vrptw_attributes(s, t, service);
        CHECK(ys[0][1] == 7.0); // 5 + 2
        CHECK(ye[0][1] == 8.0);
    }
    SUBCASE("empty route gives empty tensors") {
        SolutionStructure s;
        s.per_resource = {{}};
        auto [ys, ye] = evaluate_vrptw_attributes(s, t, service);
        CHECK(ys[0].empty());
        CHECK(ye[0].empty());
    }
}

TEST_CASE("evaluate rejects unknown indices") {
    auto model = bare_model(1, 2);
    SolutionStructure s;
    s.per_resource = {{5}};
    CHECK_THROWS_AS(evaluate(model, s), DimensionMismatch);
    s.per_resource = {{1}, {2}};
    CHECK_THROWS_AS(evaluate(model, s), DimensionMismatch);
}

TEST_CASE("violations are always nonnegative") {
    Rng rng(7);
    auto model = model_gap(std::get<GapInstance>(fixture_by_id("T-GAP-1").instance));
    for (int trial = 0; trial < 500; ++trial) {
        SolutionStructure s = SolutionStructure::empty_for(2);
        for (int j = 1; j <= 4; ++j) {
            int pick = rng.uniform_int(0, 2);
            if (pick > 0) s.per_resource[static_cast<std::size_t>(pick - 1)].push_back(j);
        }
        for (double v : evaluate(model, s).violations) CHECK(v >= 0.0);
    }
}
