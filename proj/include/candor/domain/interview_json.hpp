#pragma once

#include <nlohmann/json.hpp>

#include "candor/domain/types.hpp"

namespace candor {

// JSON mapping used by the HTTP API and the record store. from_json throws
// InvalidValue (or nlohmann::json::exception) on malformed input and runs
// validate() on the result.
nlohmann::json interview_to_json(const InterviewReport& report);
InterviewReport interview_from_json(const nlohmann::json& doc);

}  // namespace candor
