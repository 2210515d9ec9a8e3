#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "candor/domain/types.hpp"
#include "candor/feedback/guardrails.hpp"
#include "candor/gateway/gateway.hpp"

namespace candor::feedback {

enum class JobStatus { Pending, Drafted, Reviewed, Delivered, Failed };

std::string to_string(JobStatus status);
JobStatus job_status_from_string(const std::string& text);

struct FeedbackJob {
    std::string job_id;
    std::string interview_id;
    JobStatus status = JobStatus::Pending;
    int attempts = 0;
    std::optional<FeedbackReport> result;
    std::vector<std::string> errors;

    bool operator==(const FeedbackJob&) const = default;
};

enum class FeedbackErrorCode { OutcomeNotEligible, RetriesExhausted, BackendUnavailable, ReviewOutputInvalid };

std::string to_string(FeedbackErrorCode code);

class FeedbackError : public std::runtime_error {
public:
    FeedbackError(FeedbackErrorCode code, std::vector<std::string> issues, int attempts = 0,
                  std::vector<GuardrailViolation> violations = {});

    [[nodiscard]] FeedbackErrorCode code() const noexcept { return code_; }
    /// Problems from the final attempt, one line each.
    [[nodiscard]] const std::vector<std::string>& last_errors() const noexcept { return issues_; }
    [[nodiscard]] const std::vector<GuardrailViolation>& violations() const noexcept { return violations_; }
    [[nodiscard]] int attempts() const noexcept { return attempts_; }

private:
    FeedbackErrorCode code_;
    std::vector<std::string> issues_;
    int attempts_;
    std::vector<GuardrailViolation> violations_;
};

struct PipelineOptions {
    int max_retries = 2;
    double temperature = 0.2;
    std::size_t target_min_items = 2;
    std::size_t target_max_items = 3;
    std::vector<Exemplar> exemplars;
    GuardrailLexicon lexicon;
};

struct FeedbackRun {
    FeedbackReport report;
    int attempts = 0;
};

/// Chain-of-thought feedback generation:
///   build prompt -> draft -> validate -> reflective review -> guardrail scan.
/// A failed validation, review, or scan retries from the draft stage with the
/// problems appended to the user prompt, up to max_retries extra attempts.
class FeedbackPipeline {
public:
    using StageCallback = std::function<void(JobStatus stage, int attempt)>;

    FeedbackPipeline(gateway::ChatBackend& backend, PipelineOptions options = {});

    [[nodiscard]] PromptBundle build_prompt(const InterviewReport& report) const;

    /// Second completion that softens a valid draft. Throws
    /// FeedbackError(ReviewOutputInvalid) if the reply does not validate or
    /// changes either list length.
    FeedbackReport reflective_review(const FeedbackReport& draft);

    [[nodiscard]] std::vector<GuardrailViolation> scan(const FeedbackReport& report) const {
        return guardrail_scan(report, options_.lexicon);
    }

    /// Runs the whole pipeline. on_stage, when set, sees Drafted/Reviewed as
    /// each attempt progresses.
    FeedbackRun generate(const InterviewReport& report, const StageCallback& on_stage = {});

    [[nodiscard]] const PipelineOptions& options() const noexcept { return options_; }

private:
    std::string call(const PromptBundle& bundle);

    gateway::ChatBackend& backend_;
    PipelineOptions options_;
};

}  // namespace candor::feedback
