#pragma once

#include "taskcode/cost.hpp"
#include "taskcode/partition.hpp"
#include "taskcode/prob.hpp"
#include "taskcode/task_encoder.hpp"

#include <json.hpp>

#include <string>

namespace taskcode {

using Json = nlohmann::ordered_json;

// Reads a whole file as JSON; InvalidArgument on I/O or parse errors.
Json load_json(const std::string& path);

// {"alphabet": [...], "probs": [...]}. Mass must be within 1e-9 of 1 unless
// `normalize`.
Pmf pmf_from_json(const Json& j, bool normalize = false);
Json to_json(const Pmf& p);

// {"x_alphabet": [...], "y_alphabet": [...], "probs": [[...], ...]}
JointPmf joint_from_json(const Json& j, bool normalize = false);
Json to_json(const JointPmf& j);

// {"alphabet": [...], "costs": [...]}
CostFn cost_from_json(const Json& j);

// {"M": 8, "assign": {"symbol": index, ...}} with indices 1..M.
Json to_json(const TaskEncoder& enc);
TaskEncoder encoder_from_json(const Json& j, const Alphabet& alphabet);

// {"blocks": [["c", "d"], ["a"], ["b"]]}
Json to_json(const Partition& part);

}  // namespace taskcode
