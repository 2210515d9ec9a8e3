#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "candor/domain/types.hpp"
#include "candor/gateway/mock_backend.hpp"
#include "candor/rag/faq_index.hpp"
#include "candor/rag/router.hpp"

namespace candor::testing {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& prefix = "candor-test");
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    [[nodiscard]] const std::filesystem::path& path() const noexcept { return path_; }

private:
    std::filesystem::path path_;
};

InterviewReport frontend_interview(const std::string& id = "int-001",
                                   InterviewOutcome outcome = InterviewOutcome::Unsuccessful);

/// Addresses the reader as "you", no lexicon hits, 2 + 2 items.
FeedbackReport clean_feedback();
/// Same shape with 3 + 3 items.
FeedbackReport clean_feedback_3x3();

std::string to_document(const FeedbackReport& report);

bool is_review_prompt(const PromptBundle& bundle);
bool is_feedback_prompt(const PromptBundle& bundle);
bool is_answer_prompt(const PromptBundle& bundle);

/// Feedback prompt -> draft; review prompt -> the draft it carries;
/// answer prompt -> the FAQ answer text it carries.
gateway::MockChatBackend::Responder scripted_responder(std::string draft_document);

std::optional<std::string> echo_review(const PromptBundle& bundle);
std::optional<std::string> echo_faq_answer(const PromptBundle& bundle);

std::filesystem::path fixture_path(const std::string& name);
std::vector<rag::FaqRecord> faq_fixture();

/// 100 labeled queries against the 50-entry fixture.
std::vector<rag::LabeledQuery> labeled_query_fixture();

}  // namespace candor::testing
