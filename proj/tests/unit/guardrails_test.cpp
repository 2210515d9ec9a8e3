#include <gtest/gtest.h>

#include <fstream>
#include <random>

#include "candor/feedback/guardrails.hpp"
#include "../support/fixtures.hpp"

namespace candor::feedback {
namespace {

std::vector<ViolationKind> kinds(const std::vector<GuardrailViolation>& vs) {
    std::vector<ViolationKind> out;
    for (const auto& v : vs) out.push_back(v.kind);
    return out;
}

bool occurs_case_insensitive(const std::string& haystack, const std::string& needle) {
    auto lower = [](std::string s) {
        for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        return s;
    };
    return lower(haystack).find(lower(needle)) != std::string::npos;
}

TEST(GuardrailScan, CleanReportHasNoViolations) {
    EXPECT_TRUE(guardrail_scan(testing::clean_feedback()).empty());
    EXPECT_TRUE(guardrail_scan(testing::clean_feedback_3x3()).empty());
}

TEST(GuardrailScan, CommunicationInImprovementIsSoftSkill) {
    auto r = testing::clean_feedback();
    r.areas_for_improvement[0].detail = "your communication was unclear";
    const auto vs = guardrail_scan(r);
    ASSERT_EQ(kinds(vs), std::vector{ViolationKind::SoftSkillInImprovement});
    EXPECT_EQ(vs[0].list, FeedbackList::AreasForImprovement);
    EXPECT_EQ(vs[0].item_index, 0u);
    EXPECT_EQ(vs[0].matched_text, "communication");
}

TEST(GuardrailScan, SeniorInStrengthIsSeniorityRating) {
    auto r = testing::clean_feedback();
    r.strengths[1].detail = "you performed at a senior level";
    const auto vs = guardrail_scan(r);
    ASSERT_EQ(kinds(vs), std::vector{ViolationKind::SeniorityRating});
    EXPECT_EQ(vs[0].list, FeedbackList::Strengths);
    EXPECT_EQ(vs[0].item_index, 1u);
}

TEST(GuardrailScan, SoftSkillsInStrengthsAreNotFlagged) {
    auto r = testing::clean_feedback();
    r.strengths[0].detail = "Your communication and soft skills were a pleasure to see.";
    EXPECT_TRUE(guardrail_scan(r).empty());
}

TEST(GuardrailScan, ThirdPersonAndNegativeTerms) {
    auto r = testing::clean_feedback();
    r.areas_for_improvement[1].detail = "The candidate failed to explain closures; she seemed unsure.";
    const auto vs = guardrail_scan(r);
    EXPECT_EQ(kinds(vs), (std::vector{ViolationKind::NegativeLanguage, ViolationKind::ThirdPerson,
                                      ViolationKind::ThirdPerson}));
    EXPECT_EQ(vs[0].matched_text, "failed");
    EXPECT_EQ(vs[1].matched_text, "The candidate");
    EXPECT_EQ(vs[2].matched_text, "she");
}

TEST(GuardrailScan, MatchedTextOccursInCitedItem) {
    auto r = testing::clean_feedback();
    r.strengths[0].title = "Junior-level HTML";
    r.areas_for_improvement[1].title = "Weak Communication";
    for (const auto& v : guardrail_scan(r)) {
        const auto& items = v.list == FeedbackList::Strengths ? r.strengths : r.areas_for_improvement;
        const auto& item = items.at(v.item_index);
        EXPECT_TRUE(occurs_case_insensitive(item.title + "\n" + item.detail, v.matched_text)) << v.describe();
    }
}

TEST(GuardrailScan, OneViolationPerItemAndTerm) {
    auto r = testing::clean_feedback();
    r.areas_for_improvement[0].title = "Poor structure";
    r.areas_for_improvement[0].detail = "poor naming and poor tests";
    const auto vs = guardrail_scan(r);
    ASSERT_EQ(vs.size(), 1u);
    EXPECT_EQ(vs[0].matched_text, "Poor");
}

TEST(FindTerm, WholeWordsCaseInsensitivePlurals) {
    EXPECT_EQ(find_term("A Senior engineer", "senior"), 2u);
    EXPECT_EQ(find_term("seniors", "senior"), 0u);
    EXPECT_EQ(find_term("seniority", "senior"), std::string_view::npos);
    EXPECT_EQ(find_term("the theme", "he"), std::string_view::npos);
    EXPECT_EQ(find_term("he said", "he"), 0u);
    EXPECT_EQ(find_term("(he)", "he"), 1u);
    EXPECT_EQ(find_term("they're", "they"), 0u);
    EXPECT_EQ(find_term("weakness", "weak"), std::string_view::npos);
    EXPECT_EQ(find_term("Soft Skills matter", "soft skill"), 0u);
    EXPECT_EQ(find_term("anything", ""), std::string_view::npos);
}

TEST(GuardrailLexicon, NegativeTermsFromFile) {
    testing::TempDir dir;
    const auto path = dir.path() / "lexicon.txt";
    std::ofstream(path) << "# custom list\n\nsloppy\n  careless  \n";
    const auto lexicon = GuardrailLexicon::with_negative_terms_from(path);
    EXPECT_EQ(lexicon.negative, (std::vector<std::string>{"sloppy", "careless"}));

    auto r = testing::clean_feedback();
    r.strengths[0].detail = "Your sloppy variable names were noticed.";
    EXPECT_EQ(kinds(guardrail_scan(r, lexicon)), std::vector{ViolationKind::NegativeLanguage});
    r.strengths[0].detail = "You failed the test.";
    EXPECT_TRUE(guardrail_scan(r, lexicon).empty());
    EXPECT_THROW(GuardrailLexicon::with_negative_terms_from(dir.path() / "missing.txt"), std::runtime_error);
}

TEST(GuardrailScanProperty, PureAndIdempotent) {
    const std::vector<std::string> words{"you", "your", "junior", "senior", "they", "communication", "failed",
                                         "solid", "structured", "react", "the", "candidate", "he", "she",
                                         "explained", "soft", "skill", "could", "have", "better"};
    std::mt19937_64 rng(404);
    std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
    auto sentence = [&] {
        std::string s;
        for (int i = 0; i < 8; ++i) s += (i ? " " : "") + words[pick(rng)];
        return s;
    };
    for (int trial = 0; trial < 300; ++trial) {
        FeedbackReport r;
        for (int i = 0; i < 3; ++i) {
            r.strengths.push_back({sentence(), sentence()});
            r.areas_for_improvement.push_back({sentence(), sentence()});
        }
        const auto first = guardrail_scan(r);
        EXPECT_EQ(first, guardrail_scan(r));
        for (const auto& v : first) {
            if (v.list == FeedbackList::Strengths) EXPECT_NE(v.kind, ViolationKind::SoftSkillInImprovement);
        }
    }
}

}  // namespace
}  // namespace candor::feedback
