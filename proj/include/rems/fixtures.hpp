#pragma once

#include "rems/instance_io.hpp"

namespace rems {

// Shipped benchmark fixtures: five tiny oracle-verifiable instances (one per
// problem kind, <= 8 tasks each) and five medium instances generated
// deterministically for comparative runs.
struct Fixture {
    std::string id;
    ParsedInstance instance;
    // Reference objective for gap computation: the exact optimum for tiny
    // fixtures, a valid lower bound for medium ones.
    double lower_bound = 0;
};

std::vector<Fixture> tiny_fixtures();
std::vector<Fixture> medium_fixtures();
std::vector<Fixture> all_fixtures(); // tiny + medium

Fixture fixture_by_id(const std::string& id); // throws InvalidInstance

} // namespace rems
