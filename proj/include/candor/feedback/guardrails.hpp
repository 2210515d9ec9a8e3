#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "candor/domain/types.hpp"

namespace candor::feedback {

enum class ViolationKind { NegativeLanguage, SeniorityRating, ThirdPerson, SoftSkillInImprovement };

std::string to_string(ViolationKind kind);

enum class FeedbackList { Strengths, AreasForImprovement };

std::string to_string(FeedbackList list);

struct GuardrailViolation {
    ViolationKind kind = ViolationKind::NegativeLanguage;
    FeedbackList list = FeedbackList::Strengths;
    std::size_t item_index = 0;
    std::string matched_text;  // as it appears in the item

    bool operator==(const GuardrailViolation&) const = default;

    [[nodiscard]] std::string describe() const;
};

/// Term lists for the lexical scan. Matching is case-insensitive on word
/// boundaries, and a trailing plural "s" on the input word is tolerated.
struct GuardrailLexicon {
    std::vector<std::string> negative{"failed", "poor", "weak", "inadequate", "terrible"};
    std::vector<std::string> seniority{"senior", "junior"};
    std::vector<std::string> third_person{"the candidate", "he", "she", "they"};
    std::vector<std::string> soft_skill{"communication", "soft skill"};

    /// Replaces the negative list with the words in a file: one term per
    /// line, blank lines and lines starting with '#' ignored.
    static GuardrailLexicon with_negative_terms_from(const std::filesystem::path& path);
};

/// Position of the first whole-word, case-insensitive occurrence of term in
/// text, or npos. Exposed for tests.
std::size_t find_term(std::string_view text, std::string_view term) noexcept;

/// Deterministic lexical scan. Soft-skill terms are checked only inside
/// areas_for_improvement. At most one violation per (item, term); results are
/// ordered by list, item, kind, then term order in the lexicon.
std::vector<GuardrailViolation> guardrail_scan(const FeedbackReport& report,
                                               const GuardrailLexicon& lexicon = {});

}  // namespace candor::feedback
