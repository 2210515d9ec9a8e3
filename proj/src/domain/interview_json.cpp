#include "candor/domain/interview_json.hpp"

namespace candor {

using nlohmann::json;

json interview_to_json(const InterviewReport& report) {
    json skills = json::array();
    for (const auto& s : report.skills) {
        skills.push_back({{"skill_name", s.skill_name}, {"evidence", s.evidence}, {"rating", s.rating}});
    }
    json transcript = json::array();
    for (const auto& t : report.transcript) {
        transcript.push_back({{"speaker", to_string(t.speaker)}, {"text", t.text}});
    }
    return {
        {"interview_id", report.interview_id},
        {"role_title", report.role_title},
        {"skills", std::move(skills)},
        {"transcript", std::move(transcript)},
        {"outcome", to_string(report.outcome)},
        {"created_at", format_timestamp(report.created_at)},
        {"candidate_email", report.candidate_email},
    };
}

InterviewReport interview_from_json(const json& doc) {
    if (!doc.is_object()) throw InvalidValue("interview report must be a JSON object");
    InterviewReport report;
    report.interview_id = doc.at("interview_id").get<std::string>();
    report.role_title = doc.value("role_title", "");
    for (const auto& s : doc.value("skills", json::array())) {
        SkillAssessment skill;
        skill.skill_name = s.at("skill_name").get<std::string>();
        skill.evidence = s.value("evidence", std::vector<std::string>{});
        skill.rating = s.at("rating").get<int>();
        report.skills.push_back(std::move(skill));
    }
    for (const auto& t : doc.at("transcript")) {
        report.transcript.push_back(
            {speaker_from_string(t.at("speaker").get<std::string>()), t.at("text").get<std::string>()});
    }
    report.outcome = outcome_from_string(doc.at("outcome").get<std::string>());
    if (doc.contains("created_at")) {
        report.created_at = parse_timestamp(doc.at("created_at").get<std::string>());
    } else {
        report.created_at = std::chrono::time_point_cast<std::chrono::seconds>(std::chrono::system_clock::now());
    }
    report.candidate_email = doc.value("candidate_email", "");
    validate(report);
    return report;
}

}  // namespace candor
