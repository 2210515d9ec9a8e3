#include "fixtures.hpp"

#include <fstream>
#include <random>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "candor/domain/feedback_schema.hpp"
#include "candor/feedback/prompts.hpp"

namespace candor::testing {

TempDir::TempDir(const std::string& prefix) {
    std::random_device rd;
    const auto base = std::filesystem::temp_directory_path();
    for (int i = 0; i < 100; ++i) {
        auto candidate = base / (prefix + "-" + std::to_string(rd()));
        if (std::filesystem::create_directory(candidate)) {
            path_ = candidate;
            return;
        }
    }
    throw std::runtime_error("could not create temp dir");
}

TempDir::~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
}

InterviewReport frontend_interview(const std::string& id, InterviewOutcome outcome) {
    InterviewReport r;
    r.interview_id = id;
    r.role_title = "Frontend Developer";
    r.skills = {
        {"HTML/CSS", {"Built a responsive layout in the coding challenge"}, 7},
        {"JavaScript", {"Described event handling but not event delegation"}, 5},
        {"React", {"Listed hooks; lifecycle methods were unclear"}, 5},
    };
    r.transcript = {
        {Speaker::Interviewer, "Can you explain how semantic HTML helps accessibility?"},
        {Speaker::Candidate, "It gives screen readers structure, like using nav and main elements."},
        {Speaker::Interviewer, "How does event delegation work in JavaScript?"},
        {Speaker::Candidate, "You attach a listener to every element, I think."},
        {Speaker::Candidate, "Sorry, could you clarify what you mean by delegation?"},
        {Speaker::Interviewer, "Handling child events through a single listener on a parent."},
    };
    r.outcome = outcome;
    r.created_at = parse_timestamp("2025-03-01T12:00:00Z");
    r.candidate_email = "candidate@example.com";
    return r;
}

FeedbackReport clean_feedback() {
    return {
        {{"Coding challenge", "You completed the coding challenge with a clean, responsive layout."},
         {"HTML foundations", "Your answer on semantic elements showed solid HTML and CSS knowledge."}},
        {{"Event delegation", "You could have explained event delegation in more depth with an example."},
         {"React lifecycle", "You could have described React lifecycle methods more precisely."}},
    };
}

FeedbackReport clean_feedback_3x3() {
    auto r = clean_feedback();
    r.strengths.push_back({"Accessibility awareness", "You connected semantic markup to screen reader support."});
    r.areas_for_improvement.push_back({"Angular concepts", "You could have compared Angular modules with React components."});
    return r;
}

std::string to_document(const FeedbackReport& report) {
    return serialize_feedback(report);
}

bool is_review_prompt(const PromptBundle& bundle) {
    return bundle.user.find("<draft_feedback>") != std::string::npos;
}

bool is_feedback_prompt(const PromptBundle& bundle) {
    return bundle.user.find("<interview_report>") != std::string::npos;
}

bool is_answer_prompt(const PromptBundle& bundle) {
    return bundle.user.find("<faq_answer>") != std::string::npos;
}

std::optional<std::string> echo_review(const PromptBundle& bundle) {
    if (!is_review_prompt(bundle)) return std::nullopt;
    return feedback::extract_tagged(bundle.user, "draft_feedback");
}

std::optional<std::string> echo_faq_answer(const PromptBundle& bundle) {
    if (!is_answer_prompt(bundle)) return std::nullopt;
    return feedback::extract_tagged(bundle.user, "faq_answer");
}

gateway::MockChatBackend::Responder scripted_responder(std::string draft_document) {
    return [draft = std::move(draft_document)](const PromptBundle& b) -> std::optional<std::string> {
        if (is_feedback_prompt(b)) return draft;
        if (auto r = echo_review(b)) return r;
        return echo_faq_answer(b);
    };
}

std::filesystem::path fixture_path(const std::string& name) {
    return std::filesystem::path(CANDOR_FIXTURE_DIR) / name;
}

std::vector<rag::FaqRecord> faq_fixture() {
    return rag::read_faq_corpus(fixture_path("faq_corpus.jsonl"));
}

std::vector<rag::LabeledQuery> labeled_query_fixture() {
    std::ifstream in(fixture_path("labeled_queries.jsonl"));
    if (!in) throw std::runtime_error("missing labeled_queries.jsonl");
    std::vector<rag::LabeledQuery> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto doc = nlohmann::json::parse(line);
        rag::LabeledQuery q;
        q.question = doc.at("question").get<std::string>();
        if (!doc.at("expected_faq_id").is_null()) q.expected_faq_id = doc.at("expected_faq_id").get<std::string>();
        out.push_back(std::move(q));
    }
    return out;
}

}  // namespace candor::testing
