#include "candor/feedback/pipeline.hpp"

#include "candor/domain/feedback_schema.hpp"
#include "candor/feedback/prompts.hpp"

namespace candor::feedback {
namespace {

std::string join(const std::vector<std::string>& lines) {
    std::string out;
    for (const auto& l : lines) {
        if (!out.empty()) out += "; ";
        out += l;
    }
    return out;
}

}  // namespace

std::string to_string(JobStatus status) {
    switch (status) {
        case JobStatus::Pending: return "pending";
        case JobStatus::Drafted: return "drafted";
        case JobStatus::Reviewed: return "reviewed";
        case JobStatus::Delivered: return "delivered";
        case JobStatus::Failed: return "failed";
    }
    return "unknown";
}

JobStatus job_status_from_string(const std::string& text) {
    for (auto s : {JobStatus::Pending, JobStatus::Drafted, JobStatus::Reviewed, JobStatus::Delivered,
                   JobStatus::Failed}) {
        if (to_string(s) == text) return s;
    }
    throw InvalidValue("unknown job status '" + text + "'");
}

std::string to_string(FeedbackErrorCode code) {
    switch (code) {
        case FeedbackErrorCode::OutcomeNotEligible: return "OutcomeNotEligible";
        case FeedbackErrorCode::RetriesExhausted: return "RetriesExhausted";
        case FeedbackErrorCode::BackendUnavailable: return "BackendUnavailable";
        case FeedbackErrorCode::ReviewOutputInvalid: return "ReviewOutputInvalid";
    }
    return "Unknown";
}

FeedbackError::FeedbackError(FeedbackErrorCode code, std::vector<std::string> issues, int attempts,
                             std::vector<GuardrailViolation> violations)
    : std::runtime_error(to_string(code) + (issues.empty() ? "" : ": " + join(issues))),
      code_(code),
      issues_(std::move(issues)),
      attempts_(attempts),
      violations_(std::move(violations)) {}

FeedbackPipeline::FeedbackPipeline(gateway::ChatBackend& backend, PipelineOptions options)
    : backend_(backend), options_(std::move(options)) {
    if (options_.max_retries < 0 || options_.max_retries > gateway::CompletionRequest::kMaxRetriesLimit) {
        throw InvalidValue("max_retries outside [0,5]");
    }
}

PromptBundle FeedbackPipeline::build_prompt(const InterviewReport& report) const {
    return build_feedback_prompt(report, options_.exemplars);
}

std::string FeedbackPipeline::call(const PromptBundle& bundle) {
    gateway::CompletionRequest request;
    request.bundle = bundle;
    request.temperature = options_.temperature;
    try {
        return backend_.complete(request);
    } catch (const gateway::GatewayError& e) {
        if (e.code() == gateway::GatewayErrorCode::BackendUnavailable) {
            throw FeedbackError(FeedbackErrorCode::BackendUnavailable, {e.what()});
        }
        throw;
    }
}

FeedbackReport FeedbackPipeline::reflective_review(const FeedbackReport& draft) {
    const auto reply = call(build_review_prompt(draft));
    auto reviewed = validate_feedback_document(reply);
    if (!reviewed) {
        throw FeedbackError(FeedbackErrorCode::ReviewOutputInvalid,
                            {"review output invalid: " + reviewed.error().describe()});
    }
    if (reviewed->strengths.size() != draft.strengths.size() ||
        reviewed->areas_for_improvement.size() != draft.areas_for_improvement.size()) {
        throw FeedbackError(FeedbackErrorCode::ReviewOutputInvalid,
                            {"review changed the number of items; keep the same structure as the draft"});
    }
    return std::move(reviewed).value();
}

FeedbackRun FeedbackPipeline::generate(const InterviewReport& report, const StageCallback& on_stage) {
    if (report.outcome != InterviewOutcome::Unsuccessful) {
        throw FeedbackError(FeedbackErrorCode::OutcomeNotEligible,
                            {"feedback is offered only for unsuccessful interviews"});
    }
    validate(report);

    const PromptBundle base = build_prompt(report);
    std::vector<std::string> issues;
    std::vector<GuardrailViolation> violations;
    const int max_attempts = options_.max_retries + 1;

    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        const auto reply = call(with_corrections(base, issues));
        issues.clear();
        violations.clear();

        auto draft = validate_feedback_document(reply);
        if (!draft) {
            issues.push_back(draft.error().describe());
            continue;
        }
        auto out_of_target = [&](const std::vector<FeedbackItem>& items, std::string_view key) {
            if (items.size() < options_.target_min_items || items.size() > options_.target_max_items) {
                issues.push_back("\"" + std::string(key) + "\" has " + std::to_string(items.size()) +
                                 " items; provide " + std::to_string(options_.target_min_items) + "-" +
                                 std::to_string(options_.target_max_items));
            }
        };
        out_of_target(draft->strengths, kStrengthsKey);
        out_of_target(draft->areas_for_improvement, kImprovementsKey);
        if (!issues.empty()) continue;
        if (on_stage) on_stage(JobStatus::Drafted, attempt);

        FeedbackReport reviewed;
        try {
            reviewed = reflective_review(*draft);
        } catch (const FeedbackError& e) {
            if (e.code() != FeedbackErrorCode::ReviewOutputInvalid) throw;
            issues = e.last_errors();
            continue;
        }
        if (on_stage) on_stage(JobStatus::Reviewed, attempt);

        violations = scan(reviewed);
        if (violations.empty()) return {std::move(reviewed), attempt};
        for (const auto& v : violations) issues.push_back(v.describe());
    }
    throw FeedbackError(FeedbackErrorCode::RetriesExhausted, std::move(issues), max_attempts, std::move(violations));
}

}  // namespace candor::feedback
