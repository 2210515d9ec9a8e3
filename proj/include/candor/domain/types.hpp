#pragma once

#include <chrono>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace candor {

using Timestamp = std::chrono::system_clock::time_point;

/// Raised when a domain value is constructed in violation of its invariants.
class InvalidValue : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class Speaker { Interviewer, Candidate };
enum class InterviewOutcome { Successful, Unsuccessful };

struct Turn {
    Speaker speaker = Speaker::Interviewer;
    std::string text;

    bool operator==(const Turn&) const = default;
};

struct SkillAssessment {
    std::string skill_name;
    std::vector<std::string> evidence;
    int rating = 1;  // 1..10

    bool operator==(const SkillAssessment&) const = default;
};

struct InterviewReport {
    std::string interview_id;
    std::string role_title;
    std::vector<SkillAssessment> skills;
    std::vector<Turn> transcript;
    InterviewOutcome outcome = InterviewOutcome::Unsuccessful;
    Timestamp created_at{};
    // Delivery address for the feedback email; not part of the prompt.
    std::string candidate_email;

    bool operator==(const InterviewReport&) const = default;
};

/// Throws InvalidValue on the first broken invariant.
void validate(const InterviewReport& report);

struct FeedbackItem {
    static constexpr std::size_t kMaxDetailChars = 600;

    std::string title;
    std::string detail;

    bool operator==(const FeedbackItem&) const = default;
};

struct FeedbackReport {
    static constexpr std::size_t kMinItems = 2;
    static constexpr std::size_t kMaxItems = 4;

    std::vector<FeedbackItem> strengths;
    std::vector<FeedbackItem> areas_for_improvement;

    bool operator==(const FeedbackReport&) const = default;
};

struct Exemplar {
    std::string input;
    std::string output;

    bool operator==(const Exemplar&) const = default;
};

/// The unit sent to the model gateway.
struct PromptBundle {
    std::string system;
    std::string user;
    std::vector<Exemplar> exemplars;

    bool operator==(const PromptBundle&) const = default;
};

void validate(const PromptBundle& bundle);

std::string to_string(Speaker speaker);
std::string to_string(InterviewOutcome outcome);
Speaker speaker_from_string(const std::string& text);
InterviewOutcome outcome_from_string(const std::string& text);

/// ISO-8601 UTC with second precision, e.g. "2025-03-01T12:00:00Z".
std::string format_timestamp(Timestamp ts);
Timestamp parse_timestamp(const std::string& text);

}  // namespace candor
