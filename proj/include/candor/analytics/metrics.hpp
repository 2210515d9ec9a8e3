#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "candor/domain/types.hpp"

namespace candor::analytics {

enum class AnalyticsErrorCode { ZeroDenominator, CountExceedsTotal, EmptyInput, RatingOutOfRange };

std::string to_string(AnalyticsErrorCode code);

class AnalyticsError : public std::invalid_argument {
public:
    AnalyticsError(AnalyticsErrorCode code, const std::string& what)
        : std::invalid_argument(to_string(code) + ": " + what), code_(code) {}
    [[nodiscard]] AnalyticsErrorCode code() const noexcept { return code_; }

private:
    AnalyticsErrorCode code_;
};

struct QueryEvent {
    Timestamp timestamp{};
    bool resolved = false;

    bool operator==(const QueryEvent&) const = default;
};

struct ScoreComparison {
    std::string metric_name;
    double human_led = 0.0;
    double previous_system = 0.0;
    double current_system = 0.0;  // 0-10 scale, like the others

    bool operator==(const ScoreComparison&) const = default;
};

/// Figures observed in the production deployment. Display and regression
/// use only; nothing here is recomputed from live data.
namespace reference {
inline constexpr std::size_t kUnsuccessfulInterviews = 4820;
inline constexpr double kFeedbackRequestRate = 0.107;
inline constexpr double kDeflectionRate = 0.75;
inline constexpr std::size_t kSatisfactionRatings = 400;
inline constexpr double kSatisfactionMean = 4.37;
}  // namespace reference

/// Half-away-from-zero rounding to a number of decimal places.
double round_to(double value, int places);

/// feedback_requests / unsuccessful_interviews (unrounded).
double feedback_request_rate(std::size_t unsuccessful_interviews, std::size_t feedback_requests);

/// resolved / total over a non-empty event list.
double deflection_rate(std::span<const QueryEvent> events);

/// Arithmetic mean of 1..5 ratings ("NPS" in reports, though not the
/// standard -100..100 net promoter score).
double satisfaction_mean(std::span<const int> ratings);

/// Interview-quality reference table: technical question quality and
/// conversational dynamics, 0-10 scale.
std::vector<ScoreComparison> comparison_table();

/// "metric,human_led,previous_system,current_system" header plus one row each.
std::string comparison_csv(std::span<const ScoreComparison> rows);

struct MetricsInputs {
    std::size_t unsuccessful_interviews = 0;
    std::size_t feedback_requests = 0;
    std::vector<QueryEvent> queries;
    std::vector<int> ratings;
};

/// Rates rounded to 3 places, the satisfaction mean to 2; a metric whose
/// input is empty is null.
nlohmann::json metrics_snapshot(const MetricsInputs& inputs);

}  // namespace candor::analytics
