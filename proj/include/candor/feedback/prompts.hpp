#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "candor/domain/types.hpp"

namespace candor::feedback {

// Text assets compiled in from assets/prompts/*.v1.txt.
std::string_view feedback_system_prompt() noexcept;
std::string_view feedback_user_template() noexcept;
std::string_view review_user_template() noexcept;
std::string_view answer_system_prompt() noexcept;
std::string_view answer_user_template() noexcept;

inline constexpr std::string_view kReportPlaceholder = "{INTERVIEW_REPORT}";
inline constexpr std::string_view kDraftPlaceholder = "{DRAFT_FEEDBACK}";

/// Ordered, labeled plain-text rendering of a report used inside the prompt.
/// Stable for equal reports, so prompt digests are stable too. The candidate
/// email is never included.
std::string canonical_report_text(const InterviewReport& report);

/// Replaces the first occurrence of placeholder; throws if absent.
std::string fill_template(std::string_view tmpl, std::string_view placeholder, std::string_view value);

/// Text between <tag> and </tag>, or empty when the tags are missing.
std::string extract_tagged(std::string_view text, std::string_view tag);

PromptBundle build_feedback_prompt(const InterviewReport& report, const std::vector<Exemplar>& exemplars);
PromptBundle build_review_prompt(const FeedbackReport& draft);

/// Appends numbered corrective instructions to a bundle's user prompt.
PromptBundle with_corrections(PromptBundle bundle, const std::vector<std::string>& issues);

}  // namespace candor::feedback
