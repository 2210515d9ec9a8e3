#include "candor/feedback/prompts.hpp"

#include <sstream>
#include <stdexcept>

#include "candor/domain/feedback_schema.hpp"

namespace candor::feedback {

std::string canonical_report_text(const InterviewReport& report) {
    std::ostringstream out;
    out << "Role: " << report.role_title << '\n';
    out << "Outcome: " << to_string(report.outcome) << '\n';
    out << "Skill assessments:";
    if (report.skills.empty()) out << " none";
    out << '\n';
    for (const auto& skill : report.skills) {
        out << "- " << skill.skill_name << " (rating " << skill.rating << "/10)\n";
        for (const auto& ev : skill.evidence) out << "  Evidence: " << ev << '\n';
    }
    out << "Transcript:";
    for (const auto& turn : report.transcript) {
        out << '\n' << (turn.speaker == Speaker::Interviewer ? "Interviewer: " : "Candidate: ") << turn.text;
    }
    return out.str();
}

std::string fill_template(std::string_view tmpl, std::string_view placeholder, std::string_view value) {
    const auto pos = tmpl.find(placeholder);
    if (pos == std::string_view::npos) {
        throw std::logic_error("template lacks placeholder " + std::string(placeholder));
    }
    std::string out;
    out.reserve(tmpl.size() + value.size());
    out.append(tmpl.substr(0, pos));
    out.append(value);
    out.append(tmpl.substr(pos + placeholder.size()));
    return out;
}

std::string extract_tagged(std::string_view text, std::string_view tag) {
    const std::string open = "<" + std::string(tag) + ">";
    const std::string close = "</" + std::string(tag) + ">";
    const auto b = text.find(open);
    if (b == std::string_view::npos) return {};
    const auto start = b + open.size();
    const auto e = text.find(close, start);
    if (e == std::string_view::npos) return {};
    return std::string(text.substr(start, e - start));
}

PromptBundle build_feedback_prompt(const InterviewReport& report, const std::vector<Exemplar>& exemplars) {
    PromptBundle bundle;
    bundle.system = std::string(feedback_system_prompt());
    bundle.user = fill_template(feedback_user_template(), kReportPlaceholder, canonical_report_text(report));
    bundle.exemplars = exemplars;
    return bundle;
}

PromptBundle build_review_prompt(const FeedbackReport& draft) {
    PromptBundle bundle;
    bundle.system = std::string(feedback_system_prompt());
    bundle.user = fill_template(review_user_template(), kDraftPlaceholder, serialize_feedback(draft, 2));
    return bundle;
}

PromptBundle with_corrections(PromptBundle bundle, const std::vector<std::string>& issues) {
    if (issues.empty()) return bundle;
    bundle.user += "\n\nYour previous response could not be accepted for these reasons:";
    for (std::size_t i = 0; i < issues.size(); ++i) {
        bundle.user += "\n" + std::to_string(i + 1) + ". " + issues[i];
    }
    bundle.user += "\nReturn corrected feedback that follows every instruction above.";
    return bundle;
}

}  // namespace candor::feedback
