#include "candor/domain/types.hpp"

#include <algorithm>
#include <cctype>
#include <ctime>
#include <iomanip>
#include <sstream>

namespace candor {
namespace {

bool blank(const std::string& s) {
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) != 0; });
}

}  // namespace

void validate(const InterviewReport& report) {
    if (blank(report.interview_id)) throw InvalidValue("interview_id is empty");
    if (report.transcript.empty()) throw InvalidValue("transcript is empty");
    for (std::size_t i = 0; i < report.transcript.size(); ++i) {
        if (blank(report.transcript[i].text)) {
            throw InvalidValue("transcript turn " + std::to_string(i) + " has empty text");
        }
    }
    for (const auto& skill : report.skills) {
        if (blank(skill.skill_name)) throw InvalidValue("skill_name is empty");
        if (skill.rating < 1 || skill.rating > 10) {
            throw InvalidValue("rating for '" + skill.skill_name + "' outside [1,10]");
        }
    }
}

void validate(const PromptBundle& bundle) {
    if (blank(bundle.system)) throw InvalidValue("prompt bundle has empty system text");
    if (blank(bundle.user)) throw InvalidValue("prompt bundle has empty user text");
}

std::string to_string(Speaker speaker) {
    return speaker == Speaker::Interviewer ? "interviewer" : "candidate";
}

std::string to_string(InterviewOutcome outcome) {
    return outcome == InterviewOutcome::Successful ? "successful" : "unsuccessful";
}

Speaker speaker_from_string(const std::string& text) {
    if (text == "interviewer") return Speaker::Interviewer;
    if (text == "candidate") return Speaker::Candidate;
    throw InvalidValue("unknown speaker '" + text + "'");
}

InterviewOutcome outcome_from_string(const std::string& text) {
    if (text == "successful") return InterviewOutcome::Successful;
    if (text == "unsuccessful") return InterviewOutcome::Unsuccessful;
    throw InvalidValue("unknown outcome '" + text + "'");
}

std::string format_timestamp(Timestamp ts) {
    const auto secs = std::chrono::time_point_cast<std::chrono::seconds>(ts);
    const std::time_t t = std::chrono::system_clock::to_time_t(secs);
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream out;
    out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return out.str();
}

Timestamp parse_timestamp(const std::string& text) {
    std::tm tm{};
    std::istringstream in(text);
    in >> std::get_time(&tm, "%Y-%m-%dT%H:%M:%S");
    if (in.fail()) throw InvalidValue("bad timestamp '" + text + "'");
    char zone = 0;
    if (!(in >> zone) || zone != 'Z') throw InvalidValue("timestamp must be UTC ('Z'): " + text);
    return std::chrono::system_clock::from_time_t(timegm(&tm));
}

}  // namespace candor
