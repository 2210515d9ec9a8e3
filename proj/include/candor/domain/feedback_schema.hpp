#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "candor/domain/expected.hpp"
#include "candor/domain/types.hpp"

namespace candor {

inline constexpr std::string_view kStrengthsKey = "strengths";
inline constexpr std::string_view kImprovementsKey = "areas_for_improvement";

enum class SchemaErrorKind {
    NotParseable,
    MissingKey,
    ExtraKey,
    WrongType,       // list value is not an array
    BadCardinality,
    BadItemShape,
};

struct SchemaError {
    SchemaErrorKind kind = SchemaErrorKind::NotParseable;
    std::string key;        // root key involved, if any
    std::size_t index = 0;  // item index for BadItemShape
    std::size_t count = 0;  // list length for BadCardinality
    std::string message;

    bool operator==(const SchemaError&) const = default;

    /// One-line description suitable for feeding back to a model.
    [[nodiscard]] std::string describe() const;
};

std::string to_string(SchemaErrorKind kind);

using FeedbackValidation = Expected<FeedbackReport, SchemaError>;

/// Accepts exactly a root object with the two list keys, each holding 2-4
/// objects with string "title" and "detail" fields and nothing else.
/// Never throws: any input string maps to a report or the first violation.
FeedbackValidation validate_feedback_document(std::string_view doc) noexcept;

/// Same checks on an already parsed value.
FeedbackValidation validate_feedback_json(const nlohmann::json& root) noexcept;

/// Canonical wire form: strengths first, then areas_for_improvement.
nlohmann::ordered_json feedback_to_json(const FeedbackReport& report);
std::string serialize_feedback(const FeedbackReport& report, int indent = -1);

/// Number of Unicode code points in a UTF-8 string.
std::size_t utf8_length(std::string_view text) noexcept;

}  // namespace candor
