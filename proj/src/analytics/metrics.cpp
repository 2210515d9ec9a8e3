#include "candor/analytics/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>

namespace candor::analytics {

std::string to_string(AnalyticsErrorCode code) {
    switch (code) {
        case AnalyticsErrorCode::ZeroDenominator: return "ZeroDenominator";
        case AnalyticsErrorCode::CountExceedsTotal: return "CountExceedsTotal";
        case AnalyticsErrorCode::EmptyInput: return "EmptyInput";
        case AnalyticsErrorCode::RatingOutOfRange: return "RatingOutOfRange";
    }
    return "Unknown";
}

double round_to(double value, int places) {
    const double scale = std::pow(10.0, places);
    return std::round(value * scale) / scale;
}

double feedback_request_rate(std::size_t unsuccessful_interviews, std::size_t feedback_requests) {
    if (unsuccessful_interviews == 0) {
        throw AnalyticsError(AnalyticsErrorCode::ZeroDenominator, "no unsuccessful interviews");
    }
    if (feedback_requests > unsuccessful_interviews) {
        throw AnalyticsError(AnalyticsErrorCode::CountExceedsTotal, "more requests than interviews");
    }
    return static_cast<double>(feedback_requests) / static_cast<double>(unsuccessful_interviews);
}

double deflection_rate(std::span<const QueryEvent> events) {
    if (events.empty()) throw AnalyticsError(AnalyticsErrorCode::EmptyInput, "no query events");
    const auto resolved = std::count_if(events.begin(), events.end(), [](const auto& e) { return e.resolved; });
    return static_cast<double>(resolved) / static_cast<double>(events.size());
}

double satisfaction_mean(std::span<const int> ratings) {
    if (ratings.empty()) throw AnalyticsError(AnalyticsErrorCode::EmptyInput, "no ratings");
    long long sum = 0;
    for (int r : ratings) {
        if (r < 1 || r > 5) {
            throw AnalyticsError(AnalyticsErrorCode::RatingOutOfRange, "rating " + std::to_string(r) + " outside [1,5]");
        }
        sum += r;
    }
    return static_cast<double>(sum) / static_cast<double>(ratings.size());
}

std::vector<ScoreComparison> comparison_table() {
    return {
        {"technical_question_quality", 7.78, 8.38, 8.60},
        {"conversational_dynamics", 5.49, 7.77, 8.27},
    };
}

std::string comparison_csv(std::span<const ScoreComparison> rows) {
    std::ostringstream out;
    out << "metric,human_led,previous_system,current_system\n";
    out << std::fixed << std::setprecision(2);
    for (const auto& r : rows) {
        out << r.metric_name << ',' << r.human_led << ',' << r.previous_system << ',' << r.current_system << '\n';
    }
    return out.str();
}

nlohmann::json metrics_snapshot(const MetricsInputs& inputs) {
    using nlohmann::json;
    json out;
    out["feedback_request_rate"] =
        inputs.unsuccessful_interviews == 0
            ? json(nullptr)
            : json(round_to(feedback_request_rate(inputs.unsuccessful_interviews, inputs.feedback_requests), 3));
    out["deflection_rate"] = inputs.queries.empty() ? json(nullptr) : json(round_to(deflection_rate(inputs.queries), 3));
    out["satisfaction_mean"] =
        inputs.ratings.empty() ? json(nullptr) : json(round_to(satisfaction_mean(inputs.ratings), 2));
    out["nps"] = out["satisfaction_mean"];
    out["counts"] = {{"unsuccessful_interviews", inputs.unsuccessful_interviews},
                     {"feedback_requests", inputs.feedback_requests},
                     {"queries", inputs.queries.size()},
                     {"resolved_queries", std::count_if(inputs.queries.begin(), inputs.queries.end(),
                                                        [](const auto& e) { return e.resolved; })},
                     {"ratings", inputs.ratings.size()}};
    json comparisons = json::array();
    for (const auto& row : comparison_table()) {
        comparisons.push_back({{"metric_name", row.metric_name},
                               {"human_led", row.human_led},
                               {"previous_system", row.previous_system},
                               {"current_system", row.current_system}});
    }
    out["comparisons"] = std::move(comparisons);
    return out;
}

}  // namespace candor::analytics
