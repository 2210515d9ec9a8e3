#include "candor/service/store.hpp"

#include <stdexcept>

#include "candor/domain/feedback_schema.hpp"
#include "candor/domain/interview_json.hpp"

namespace candor::service {

using nlohmann::json;
using feedback::FeedbackJob;
using feedback::JobStatus;

namespace {

constexpr const char* kEventsFile = "events.jsonl";
constexpr const char* kSnapshotFile = "snapshot.json";

Timestamp now_seconds() {
    return std::chrono::time_point_cast<std::chrono::seconds>(std::chrono::system_clock::now());
}

std::string padded(const char* prefix, std::uint64_t n) {
    std::string digits = std::to_string(n);
    if (digits.size() < 6) digits.insert(0, 6 - digits.size(), '0');
    return prefix + digits;
}

template <typename T>
json optional_json(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

template <typename T>
std::optional<T> optional_from(const json& doc, const char* key) {
    auto it = doc.find(key);
    if (it == doc.end() || it->is_null()) return std::nullopt;
    return it->get<T>();
}

EscalationTicket ticket_from_json(const json& doc) {
    EscalationTicket t;
    t.ticket_id = doc.at("ticket_id").get<std::string>();
    t.question_text = doc.at("question_text").get<std::string>();
    t.best_score = optional_from<double>(doc, "best_score");
    t.created_at = parse_timestamp(doc.at("created_at").get<std::string>());
    t.status = doc.at("status").get<std::string>() == "open" ? TicketStatus::Open : TicketStatus::AnsweredByHuman;
    return t;
}

json query_to_json(const QueryRecord& q) {
    return {{"at", format_timestamp(q.at)},
            {"resolved", q.resolved},
            {"faq_id", optional_json(q.faq_id)},
            {"score", optional_json(q.score)},
            {"ticket_id", optional_json(q.ticket_id)}};
}

QueryRecord query_from_json(const json& doc) {
    QueryRecord q;
    q.at = parse_timestamp(doc.at("at").get<std::string>());
    q.resolved = doc.at("resolved").get<bool>();
    q.faq_id = optional_from<std::string>(doc, "faq_id");
    q.score = optional_from<double>(doc, "score");
    q.ticket_id = optional_from<std::string>(doc, "ticket_id");
    return q;
}

json state_to_json(const StoreState& s) {
    json interviews = json::array();
    for (const auto& [_, r] : s.interviews) interviews.push_back(interview_to_json(r));
    json jobs = json::array();
    for (const auto& [_, j] : s.jobs) jobs.push_back(job_to_json(j));
    json tickets = json::array();
    for (const auto& t : s.tickets) tickets.push_back(ticket_to_json(t));
    json queries = json::array();
    for (const auto& q : s.queries) queries.push_back(query_to_json(q));
    return {{"last_seq", s.last_seq},
            {"interviews", std::move(interviews)},
            {"jobs", std::move(jobs)},
            {"tickets", std::move(tickets)},
            {"queries", std::move(queries)},
            {"ratings", s.ratings},
            {"faq_generation", s.faq_generation},
            {"next_job", s.next_job},
            {"next_ticket", s.next_ticket}};
}

StoreState state_from_json(const json& doc) {
    StoreState s;
    s.last_seq = doc.at("last_seq").get<std::uint64_t>();
    for (const auto& r : doc.at("interviews")) {
        auto report = interview_from_json(r);
        s.interviews.emplace(report.interview_id, std::move(report));
    }
    for (const auto& j : doc.at("jobs")) {
        auto job = job_from_json(j);
        s.job_by_interview[job.interview_id] = job.job_id;
        s.jobs.emplace(job.job_id, std::move(job));
    }
    for (const auto& t : doc.at("tickets")) s.tickets.push_back(ticket_from_json(t));
    for (const auto& q : doc.at("queries")) s.queries.push_back(query_from_json(q));
    s.ratings = doc.at("ratings").get<std::map<std::string, int>>();
    s.faq_generation = doc.at("faq_generation").get<std::uint64_t>();
    s.next_job = doc.at("next_job").get<std::uint64_t>();
    s.next_ticket = doc.at("next_ticket").get<std::uint64_t>();
    return s;
}

}  // namespace

json job_to_json(const FeedbackJob& job) {
    json out{{"job_id", job.job_id},
             {"interview_id", job.interview_id},
             {"status", feedback::to_string(job.status)},
             {"attempts", job.attempts},
             {"errors", job.errors}};
    out["result"] = job.result ? json::parse(serialize_feedback(*job.result)) : json(nullptr);
    return out;
}

FeedbackJob job_from_json(const json& doc) {
    FeedbackJob job;
    job.job_id = doc.at("job_id").get<std::string>();
    job.interview_id = doc.at("interview_id").get<std::string>();
    job.status = feedback::job_status_from_string(doc.at("status").get<std::string>());
    job.attempts = doc.at("attempts").get<int>();
    job.errors = doc.value("errors", std::vector<std::string>{});
    if (auto it = doc.find("result"); it != doc.end() && !it->is_null()) {
        auto report = validate_feedback_json(*it);
        if (!report) throw std::runtime_error("stored feedback invalid: " + report.error().describe());
        job.result = std::move(report).value();
    }
    return job;
}

json ticket_to_json(const EscalationTicket& t) {
    return {{"ticket_id", t.ticket_id},
            {"question_text", t.question_text},
            {"best_score", optional_json(t.best_score)},
            {"created_at", format_timestamp(t.created_at)},
            {"status", t.status == TicketStatus::Open ? "open" : "answered_by_human"}};
}

RecordStore::RecordStore(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
    replay();
    log_.open(dir_ / kEventsFile, std::ios::app);
    if (!log_) throw std::runtime_error("cannot open event log in " + dir_.string());
}

void RecordStore::replay() {
    if (std::ifstream snap(dir_ / kSnapshotFile); snap) {
        state_ = state_from_json(json::parse(snap));
    }
    const auto path = dir_ / kEventsFile;
    std::uintmax_t good = 0;
    bool torn = false;
    {
        std::ifstream in(path, std::ios::binary);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() && !in.eof()) {
                ++good;
                continue;
            }
            const json event = json::parse(line, nullptr, false);
            // Only the final line can be torn; anything after it is absent.
            if (in.eof() || event.is_discarded()) {
                torn = !line.empty();
                break;
            }
            good += line.size() + 1;
            if (event.at("seq").get<std::uint64_t>() <= state_.last_seq) continue;
            apply(event);
        }
    }
    // Cut the torn tail so new events start on a fresh line.
    if (torn) std::filesystem::resize_file(path, good);
}

void RecordStore::append(json event) {
    if (sealed_) return;
    event["seq"] = state_.last_seq + 1;
    log_ << event.dump() << '\n';
    log_.flush();
    if (!log_) throw std::runtime_error("event log write failed");
    apply(event);
}

void RecordStore::apply(const json& e) {
    const auto& type = e.at("type").get_ref<const std::string&>();
    state_.last_seq = e.at("seq").get<std::uint64_t>();
    if (type == "interview_added") {
        auto report = interview_from_json(e.at("interview"));
        state_.interviews.emplace(report.interview_id, std::move(report));
    } else if (type == "job_created") {
        FeedbackJob job;
        job.job_id = e.at("job_id").get<std::string>();
        job.interview_id = e.at("interview_id").get<std::string>();
        state_.job_by_interview[job.interview_id] = job.job_id;
        state_.jobs[job.job_id] = job;
        ++state_.next_job;
    } else if (type == "job_updated") {
        auto job = job_from_json(e.at("job"));
        state_.jobs[job.job_id] = std::move(job);
    } else if (type == "query_recorded") {
        auto q = query_from_json(e.at("query"));
        if (auto t = e.find("ticket"); t != e.end() && !t->is_null()) {
            state_.tickets.push_back(ticket_from_json(*t));
            ++state_.next_ticket;
        }
        state_.queries.push_back(std::move(q));
    } else if (type == "rating_recorded") {
        state_.ratings[e.at("interview_id").get<std::string>()] = e.at("rating").get<int>();
    } else if (type == "faq_generation") {
        state_.faq_generation = e.at("generation").get<std::uint64_t>();
    } else {
        throw std::runtime_error("unknown event type '" + type + "'");
    }
}

bool RecordStore::add_interview(const InterviewReport& report) {
    std::lock_guard lock(mutex_);
    if (state_.interviews.count(report.interview_id)) return false;
    append({{"type", "interview_added"}, {"interview", interview_to_json(report)}});
    return true;
}

std::pair<FeedbackJob, bool> RecordStore::create_or_get_job(const std::string& interview_id) {
    std::lock_guard lock(mutex_);
    if (auto it = state_.job_by_interview.find(interview_id); it != state_.job_by_interview.end()) {
        return {state_.jobs.at(it->second), false};
    }
    const auto job_id = padded("job-", state_.next_job);
    append({{"type", "job_created"}, {"job_id", job_id}, {"interview_id", interview_id}});
    if (sealed_) {
        FeedbackJob ghost;
        ghost.job_id = job_id;
        ghost.interview_id = interview_id;
        return {ghost, true};
    }
    return {state_.jobs.at(job_id), true};
}

void RecordStore::update_job(const FeedbackJob& job) {
    std::lock_guard lock(mutex_);
    if (!state_.jobs.count(job.job_id)) throw std::out_of_range("unknown job " + job.job_id);
    append({{"type", "job_updated"}, {"job", job_to_json(job)}});
}

QueryRecord RecordStore::record_query(const std::string& question, bool resolved, std::optional<std::string> faq_id,
                                      std::optional<double> score) {
    std::lock_guard lock(mutex_);
    QueryRecord q;
    q.at = now_seconds();
    q.resolved = resolved;
    q.faq_id = std::move(faq_id);
    q.score = score;
    json ticket = nullptr;
    if (!resolved) {
        EscalationTicket t;
        t.ticket_id = padded("ticket-", state_.next_ticket);
        t.question_text = question;
        t.best_score = score;
        t.created_at = q.at;
        q.ticket_id = t.ticket_id;
        ticket = ticket_to_json(t);
    }
    append({{"type", "query_recorded"}, {"query", query_to_json(q)}, {"ticket", std::move(ticket)}});
    return q;
}

void RecordStore::record_rating(const std::string& interview_id, int rating) {
    std::lock_guard lock(mutex_);
    append({{"type", "rating_recorded"}, {"interview_id", interview_id}, {"rating", rating}});
}

std::uint64_t RecordStore::record_faq_generation(std::size_t entry_count) {
    std::lock_guard lock(mutex_);
    const auto generation = state_.faq_generation + 1;
    append({{"type", "faq_generation"}, {"generation", generation}, {"count", entry_count}});
    return generation;
}

std::optional<InterviewReport> RecordStore::interview(const std::string& id) const {
    std::lock_guard lock(mutex_);
    auto it = state_.interviews.find(id);
    if (it == state_.interviews.end()) return std::nullopt;
    return it->second;
}

std::optional<FeedbackJob> RecordStore::job(const std::string& job_id) const {
    std::lock_guard lock(mutex_);
    auto it = state_.jobs.find(job_id);
    if (it == state_.jobs.end()) return std::nullopt;
    return it->second;
}

std::vector<FeedbackJob> RecordStore::jobs() const {
    std::lock_guard lock(mutex_);
    std::vector<FeedbackJob> out;
    for (const auto& [_, j] : state_.jobs) out.push_back(j);
    return out;
}

std::vector<EscalationTicket> RecordStore::tickets() const {
    std::lock_guard lock(mutex_);
    return state_.tickets;
}

analytics::MetricsInputs RecordStore::metrics_inputs() const {
    std::lock_guard lock(mutex_);
    analytics::MetricsInputs in;
    for (const auto& [_, r] : state_.interviews) {
        if (r.outcome == InterviewOutcome::Unsuccessful) ++in.unsuccessful_interviews;
    }
    in.feedback_requests = state_.jobs.size();
    for (const auto& q : state_.queries) in.queries.push_back({q.at, q.resolved});
    for (const auto& [_, rating] : state_.ratings) in.ratings.push_back(rating);
    return in;
}

StoreState RecordStore::state() const {
    std::lock_guard lock(mutex_);
    return state_;
}

void RecordStore::compact() {
    std::lock_guard lock(mutex_);
    if (sealed_) return;
    const auto tmp = dir_ / "snapshot.json.tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        out << state_to_json(state_).dump();
        out.flush();
        if (!out) throw std::runtime_error("snapshot write failed");
    }
    std::filesystem::rename(tmp, dir_ / kSnapshotFile);
    log_.close();
    log_.open(dir_ / kEventsFile, std::ios::trunc);
}

void RecordStore::seal() {
    std::lock_guard lock(mutex_);
    sealed_ = true;
    log_.close();
}

}  // namespace candor::service
