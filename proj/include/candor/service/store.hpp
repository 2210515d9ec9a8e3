#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "candor/analytics/metrics.hpp"
#include "candor/domain/types.hpp"
#include "candor/feedback/pipeline.hpp"

namespace candor::service {

enum class TicketStatus { Open, AnsweredByHuman };

struct EscalationTicket {
    std::string ticket_id;
    std::string question_text;
    std::optional<double> best_score;
    Timestamp created_at{};
    TicketStatus status = TicketStatus::Open;

    bool operator==(const EscalationTicket&) const = default;
};

struct QueryRecord {
    Timestamp at{};
    bool resolved = false;
    std::optional<std::string> faq_id;
    std::optional<double> score;
    std::optional<std::string> ticket_id;

    bool operator==(const QueryRecord&) const = default;
};

struct RatingRecord {
    std::string interview_id;
    int rating = 0;

    bool operator==(const RatingRecord&) const = default;
};

/// Everything the service persists besides the outbox and the FAQ snapshot.
struct StoreState {
    std::uint64_t last_seq = 0;
    std::map<std::string, InterviewReport> interviews;
    std::map<std::string, feedback::FeedbackJob> jobs;
    std::map<std::string, std::string> job_by_interview;
    std::vector<EscalationTicket> tickets;
    std::vector<QueryRecord> queries;
    std::map<std::string, int> ratings;  // last write wins per interview
    std::uint64_t faq_generation = 0;
    std::uint64_t next_job = 1;
    std::uint64_t next_ticket = 1;

    bool operator==(const StoreState&) const = default;
};

/// Single-writer embedded record store.
///
/// Layout under the store directory:
///   events.jsonl   append-only event log, one JSON object per line
///   snapshot.json  compacted state as of some sequence number
/// Opening loads the snapshot and replays newer events; a torn final line
/// from an interrupted write is ignored. Every mutation is flushed before
/// its effect becomes visible to readers.
class RecordStore {
public:
    explicit RecordStore(std::filesystem::path dir);

    RecordStore(const RecordStore&) = delete;
    RecordStore& operator=(const RecordStore&) = delete;

    /// False when the interview id already exists.
    bool add_interview(const InterviewReport& report);
    /// Returns the job and whether it was created by this call.
    std::pair<feedback::FeedbackJob, bool> create_or_get_job(const std::string& interview_id);
    void update_job(const feedback::FeedbackJob& job);
    /// Appends a query event; an escalated query also opens one ticket.
    QueryRecord record_query(const std::string& question, bool resolved, std::optional<std::string> faq_id,
                             std::optional<double> score);
    void record_rating(const std::string& interview_id, int rating);
    std::uint64_t record_faq_generation(std::size_t entry_count);

    [[nodiscard]] std::optional<InterviewReport> interview(const std::string& id) const;
    [[nodiscard]] std::optional<feedback::FeedbackJob> job(const std::string& job_id) const;
    [[nodiscard]] std::vector<feedback::FeedbackJob> jobs() const;
    [[nodiscard]] std::vector<EscalationTicket> tickets() const;
    [[nodiscard]] analytics::MetricsInputs metrics_inputs() const;
    [[nodiscard]] StoreState state() const;

    /// Writes snapshot.json and truncates the event log.
    void compact();
    /// Drops every later write, as if the process had died here.
    void seal();

    [[nodiscard]] const std::filesystem::path& directory() const noexcept { return dir_; }

private:
    void append(nlohmann::json event);
    void apply(const nlohmann::json& event);
    void replay();

    std::filesystem::path dir_;
    mutable std::mutex mutex_;
    std::ofstream log_;
    StoreState state_;
    bool sealed_ = false;
};

nlohmann::json job_to_json(const feedback::FeedbackJob& job);
feedback::FeedbackJob job_from_json(const nlohmann::json& doc);
nlohmann::json ticket_to_json(const EscalationTicket& ticket);

}  // namespace candor::service
