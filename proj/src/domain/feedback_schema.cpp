#include "candor/domain/feedback_schema.hpp"

#include <array>

namespace candor {
namespace {

using nlohmann::json;

SchemaError make_error(SchemaErrorKind kind, std::string key, std::string message,
                       std::size_t index = 0, std::size_t count = 0) {
    SchemaError err;
    err.kind = kind;
    err.key = std::move(key);
    err.index = index;
    err.count = count;
    err.message = std::move(message);
    return err;
}

bool is_blank(const std::string& s) {
    return s.find_first_not_of(" \t\r\n") == std::string::npos;
}

// Returns an error message for a malformed item, or empty string when fine.
std::string item_problem(const json& item) {
    if (!item.is_object()) return "item is not an object";
    for (const auto& [name, _] : item.items()) {
        if (name != "title" && name != "detail") return "unexpected field '" + name + "'";
    }
    for (const char* field : {"title", "detail"}) {
        auto it = item.find(field);
        if (it == item.end()) return std::string("missing field '") + field + "'";
        if (!it->is_string()) return std::string("field '") + field + "' is not a string";
        if (is_blank(it->get_ref<const std::string&>())) {
            return std::string("field '") + field + "' is empty";
        }
    }
    if (utf8_length(item["detail"].get_ref<const std::string&>()) > FeedbackItem::kMaxDetailChars) {
        return "detail exceeds " + std::to_string(FeedbackItem::kMaxDetailChars) + " characters";
    }
    return {};
}

}  // namespace

std::string to_string(SchemaErrorKind kind) {
    switch (kind) {
        case SchemaErrorKind::NotParseable: return "NotParseable";
        case SchemaErrorKind::MissingKey: return "MissingKey";
        case SchemaErrorKind::ExtraKey: return "ExtraKey";
        case SchemaErrorKind::WrongType: return "WrongType";
        case SchemaErrorKind::BadCardinality: return "BadCardinality";
        case SchemaErrorKind::BadItemShape: return "BadItemShape";
    }
    return "Unknown";
}

std::string SchemaError::describe() const {
    switch (kind) {
        case SchemaErrorKind::NotParseable:
            return "response is not a JSON object: " + message;
        case SchemaErrorKind::MissingKey:
            return "missing required key \"" + key + "\"";
        case SchemaErrorKind::ExtraKey:
            return "unexpected key \"" + key + "\"; return only the requested JSON";
        case SchemaErrorKind::WrongType:
            return "\"" + key + "\" must be an array";
        case SchemaErrorKind::BadCardinality:
            return "\"" + key + "\" has " + std::to_string(count) + " items; expected " + message;
        case SchemaErrorKind::BadItemShape:
            return "\"" + key + "\" item " + std::to_string(index) + ": " + message;
    }
    return message;
}

std::size_t utf8_length(std::string_view text) noexcept {
    std::size_t n = 0;
    for (unsigned char c : text) {
        if ((c & 0xC0) != 0x80) ++n;
    }
    return n;
}

FeedbackValidation validate_feedback_json(const json& root) noexcept {
    try {
        if (!root.is_object()) {
            return make_error(SchemaErrorKind::NotParseable, "", "root is not an object");
        }
        const std::array<std::string_view, 2> required{kStrengthsKey, kImprovementsKey};
        for (auto key : required) {
            if (!root.contains(std::string(key))) {
                return make_error(SchemaErrorKind::MissingKey, std::string(key), "missing key");
            }
        }
        for (const auto& [name, _] : root.items()) {
            if (name != kStrengthsKey && name != kImprovementsKey) {
                return make_error(SchemaErrorKind::ExtraKey, name, "extra key");
            }
        }

        FeedbackReport report;
        for (auto key : required) {
            const json& list = root.at(std::string(key));
            const std::string key_name(key);
            if (!list.is_array()) {
                return make_error(SchemaErrorKind::WrongType, key_name, "not an array");
            }
            if (list.size() < FeedbackReport::kMinItems || list.size() > FeedbackReport::kMaxItems) {
                return make_error(SchemaErrorKind::BadCardinality, key_name,
                                  std::to_string(FeedbackReport::kMinItems) + "-" +
                                      std::to_string(FeedbackReport::kMaxItems),
                                  0, list.size());
            }
            auto& out = key == kStrengthsKey ? report.strengths : report.areas_for_improvement;
            for (std::size_t i = 0; i < list.size(); ++i) {
                if (auto problem = item_problem(list[i]); !problem.empty()) {
                    return make_error(SchemaErrorKind::BadItemShape, key_name, problem, i);
                }
                out.push_back({list[i]["title"].get<std::string>(), list[i]["detail"].get<std::string>()});
            }
        }
        return report;
    } catch (const std::exception& e) {
        return make_error(SchemaErrorKind::NotParseable, "", e.what());
    }
}

FeedbackValidation validate_feedback_document(std::string_view doc) noexcept {
    try {
        json root = json::parse(doc.begin(), doc.end(), nullptr, /*allow_exceptions=*/false);
        if (root.is_discarded()) {
            return make_error(SchemaErrorKind::NotParseable, "", "invalid JSON");
        }
        return validate_feedback_json(root);
    } catch (const std::exception& e) {
        return make_error(SchemaErrorKind::NotParseable, "", e.what());
    }
}

nlohmann::ordered_json feedback_to_json(const FeedbackReport& report) {
    auto list = [](const std::vector<FeedbackItem>& items) {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& item : items) {
            arr.push_back({{"title", item.title}, {"detail", item.detail}});
        }
        return arr;
    };
    nlohmann::ordered_json out;
    out[std::string(kStrengthsKey)] = list(report.strengths);
    out[std::string(kImprovementsKey)] = list(report.areas_for_improvement);
    return out;
}

std::string serialize_feedback(const FeedbackReport& report, int indent) {
    return feedback_to_json(report).dump(indent);
}

}  // namespace candor
