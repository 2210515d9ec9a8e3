#include "candor/feedback/guardrails.hpp"

#include <cctype>
#include <fstream>
#include <stdexcept>

namespace candor::feedback {
namespace {

bool word_char(unsigned char c) {
    return std::isalnum(c) != 0 || c >= 0x80;
}

bool iequal_at(std::string_view text, std::size_t pos, std::string_view term) {
    if (pos + term.size() > text.size()) return false;
    for (std::size_t i = 0; i < term.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(text[pos + i])) !=
            std::tolower(static_cast<unsigned char>(term[i]))) {
            return false;
        }
    }
    return true;
}

std::size_t match_length(std::string_view text, std::size_t pos, std::string_view term) {
    if (!iequal_at(text, pos, term)) return 0;
    if (pos > 0 && word_char(static_cast<unsigned char>(text[pos - 1]))) return 0;
    std::size_t end = pos + term.size();
    if (end < text.size() && std::tolower(static_cast<unsigned char>(text[end])) == 's' &&
        (end + 1 == text.size() || !word_char(static_cast<unsigned char>(text[end + 1])))) {
        return term.size() + 1;
    }
    if (end < text.size() && word_char(static_cast<unsigned char>(text[end]))) return 0;
    return term.size();
}

// Returns matched text (original case) or empty.
std::string find_in_item(const FeedbackItem& item, std::string_view term) {
    for (const std::string* field : {&item.title, &item.detail}) {
        std::string_view text = *field;
        for (std::size_t pos = 0; pos + term.size() <= text.size(); ++pos) {
            if (auto len = match_length(text, pos, term)) return std::string(text.substr(pos, len));
        }
    }
    return {};
}

void scan_list(const std::vector<FeedbackItem>& items, FeedbackList list, const GuardrailLexicon& lexicon,
               std::vector<GuardrailViolation>& out) {
    struct Rule {
        ViolationKind kind;
        const std::vector<std::string>* terms;
    };
    std::vector<Rule> rules{{ViolationKind::NegativeLanguage, &lexicon.negative},
                            {ViolationKind::SeniorityRating, &lexicon.seniority},
                            {ViolationKind::ThirdPerson, &lexicon.third_person}};
    if (list == FeedbackList::AreasForImprovement) {
        rules.push_back({ViolationKind::SoftSkillInImprovement, &lexicon.soft_skill});
    }
    for (std::size_t i = 0; i < items.size(); ++i) {
        for (const auto& rule : rules) {
            for (const auto& term : *rule.terms) {
                if (term.empty()) continue;
                if (auto hit = find_in_item(items[i], term); !hit.empty()) {
                    out.push_back({rule.kind, list, i, std::move(hit)});
                }
            }
        }
    }
}

}  // namespace

std::string to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::NegativeLanguage: return "NegativeLanguage";
        case ViolationKind::SeniorityRating: return "SeniorityRating";
        case ViolationKind::ThirdPerson: return "ThirdPerson";
        case ViolationKind::SoftSkillInImprovement: return "SoftSkillInImprovement";
    }
    return "Unknown";
}

std::string to_string(FeedbackList list) {
    return list == FeedbackList::Strengths ? "strengths" : "areas_for_improvement";
}

std::string GuardrailViolation::describe() const {
    const std::string where = to_string(list) + " item " + std::to_string(item_index);
    switch (kind) {
        case ViolationKind::NegativeLanguage:
            return where + " uses negative language (\"" + matched_text + "\"); rephrase it constructively";
        case ViolationKind::SeniorityRating:
            return where + " gives a seniority rating (\"" + matched_text + "\"); avoid ratings such as senior or junior";
        case ViolationKind::ThirdPerson:
            return where + " refers to the candidate in the third person (\"" + matched_text +
                   "\"); address the candidate as 'you' or 'your'";
        case ViolationKind::SoftSkillInImprovement:
            return where + " comments on soft skills (\"" + matched_text +
                   "\"); give no feedback on soft skills and communication";
    }
    return where;
}

std::size_t find_term(std::string_view text, std::string_view term) noexcept {
    if (term.empty()) return std::string_view::npos;
    for (std::size_t pos = 0; pos + term.size() <= text.size(); ++pos) {
        if (match_length(text, pos, term) != 0) return pos;
    }
    return std::string_view::npos;
}

GuardrailLexicon GuardrailLexicon::with_negative_terms_from(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open lexicon file " + path.string());
    GuardrailLexicon lexicon;
    lexicon.negative.clear();
    std::string line;
    while (std::getline(in, line)) {
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#') continue;
        const auto e = line.find_last_not_of(" \t\r");
        lexicon.negative.push_back(line.substr(b, e - b + 1));
    }
    return lexicon;
}

std::vector<GuardrailViolation> guardrail_scan(const FeedbackReport& report, const GuardrailLexicon& lexicon) {
    std::vector<GuardrailViolation> out;
    scan_list(report.strengths, FeedbackList::Strengths, lexicon, out);
    scan_list(report.areas_for_improvement, FeedbackList::AreasForImprovement, lexicon, out);
    return out;
}

}  // namespace candor::feedback
