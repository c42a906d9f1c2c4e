#pragma once

// JSON forms of the records the pipeline persists and serves. Every stored
// record carries "schema": kRecordSchemaVersion.

#include <string>

#include "json.hpp"

#include "tracegraph/core/trial.hpp"
#include "tracegraph/validator/validator.hpp"

namespace tracegraph::pipeline {

inline constexpr int kRecordSchemaVersion = 1;

// Trial record:
//   {"trial_id": "t01", "participant_id": "p01", "problem": [3,3,8,8],
//    "transcript": "...", "response": "8/(3-8/3)" | null, "response_time_s": 95.5,
//    "correct": true, "condition": "think_aloud" | "control", "stimulus_group": "A"}
// On input, "problem" may also be the string "3 3 8 8"; condition defaults to
// think_aloud, response and stimulus_group are optional.
nlohmann::json trial_to_json(const Trial& trial);
// Throws SchemaError naming the offending field.
Trial trial_from_json(const nlohmann::json& j);

// [{"kind": "WrongResult", "statement": 2, "line": 2, "detail": "..."}, ...]
nlohmann::json report_to_json(const ValidationReport& report);
ValidationReport report_from_json(const nlohmann::json& j);

}  // namespace tracegraph::pipeline
