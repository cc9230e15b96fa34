#pragma once

#include <iosfwd>

#include "rems/model.hpp"

namespace rems {

struct NotRepresentable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// JSON model-description schema:
// {
//   "ordered": bool,
//   "resources": [{"index": 1, "position_capacity": 3|null, "attributes": {..}}, ...],
//   "tasks":     [{"index": 1, "attributes": {..}}, ...],
//   "objective": {"sense": "min"|"max", "builtin": "linear_cost"|"used_resources"|"attribute_max",
//                 "cost_table": [[..]], "attribute": "name"},
//   "constraints": [
//     {"name": .., "type": "resource_aggregate"|"task_aggregate",
//      "coeff_table": [[m x n]], "thresholds": [..], "relation": "le"|"ge"|"eq"},
//     {"name": .., "type": "pairing", "mode": "same"|"different", "pairs": [[j,j'],..]},
//     {"name": .., "type": "precedence", "pairs": [[before,after],..]},
//     {"name": .., "type": "resource_task_aggregate",
//      "coeff_table": [[m x n]], "threshold_table": [[m x n]], "relation": ..}
//   ]
// }
// Custom constraints, attribute evaluators and code-only objectives have no
// file form; save_model raises NotRepresentable for them.
ProblemModel load_model(std::istream& in);
ProblemModel load_model_file(const std::string& path);
void save_model(std::ostream& out, const ProblemModel& model);

} // namespace rems
