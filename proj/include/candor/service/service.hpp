#pragma once

#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "candor/feedback/pipeline.hpp"
#include "candor/gateway/gateway.hpp"
#include "candor/rag/router.hpp"
#include "candor/service/config.hpp"
#include "candor/service/outbox.hpp"
#include "candor/service/store.hpp"
#include "candor/service/worker_pool.hpp"

namespace candor::service {

struct ApiResponse {
    ApiResponse() = default;
    ApiResponse(int s, nlohmann::json b) : status(s), body(std::move(b)) {}

    int status = 200;
    nlohmann::json body;
    std::string content_type = "application/json";
    std::string raw;  // used instead of body when non-empty

    [[nodiscard]] std::string payload() const { return raw.empty() ? body.dump() : raw; }
};

struct ServiceOptions {
    /// When false, accepted jobs stay pending until start_workers().
    bool start_workers = true;
    std::vector<Exemplar> exemplars;
};

/// Everything a restart must reproduce.
struct ServiceState {
    StoreState store;
    std::vector<std::string> outbox_lines;
    nlohmann::json metrics;

    bool operator==(const ServiceState&) const = default;
};

/// Candidate-facing operations behind the REST endpoints. Each handler maps
/// straight onto one route and returns status + JSON body, so the HTTP layer
/// stays a thin adapter.
class CandidateService {
public:
    CandidateService(ServiceConfig config, gateway::ChatBackend& chat, gateway::EmbeddingBackend& embedder,
                     ServiceOptions options = {});
    ~CandidateService();

    CandidateService(const CandidateService&) = delete;
    CandidateService& operator=(const CandidateService&) = delete;

    ApiResponse post_interview(const nlohmann::json& body);                // POST /v1/interviews
    ApiResponse post_feedback_request(const nlohmann::json& body);         // POST /v1/feedback-requests
    ApiResponse get_feedback(const std::string& job_id) const;             // GET  /v1/feedback/{job_id}
    ApiResponse post_query(const nlohmann::json& body);                    // POST /v1/queries
    ApiResponse post_faqs(const std::string& corpus_jsonl);                // POST /v1/faqs
    ApiResponse post_nps(const nlohmann::json& body);                      // POST /v1/nps
    ApiResponse get_metrics(bool csv = false) const;                       // GET  /v1/metrics
    ApiResponse health() const;                                            // GET  /healthz

    /// Starts the pool (if deferred) and enqueues every unfinished job.
    void start_workers();
    void wait_idle();
    /// Stops all persistence immediately, like a killed process. Any work
    /// still in flight finishes against sealed stores and leaves no trace.
    void simulate_crash();

    [[nodiscard]] ServiceState state() const;
    [[nodiscard]] std::shared_ptr<const rag::FaqIndex> index() const { return index_.current(); }
    [[nodiscard]] const ServiceConfig& config() const noexcept { return config_; }
    [[nodiscard]] const Outbox& outbox() const noexcept { return outbox_; }
    [[nodiscard]] const RecordStore& store() const noexcept { return store_; }

private:
    void enqueue(const std::string& job_id);
    void run_job(const std::string& job_id);
    [[nodiscard]] std::filesystem::path index_path() const;

    ServiceConfig config_;
    gateway::ChatBackend& chat_;
    gateway::EmbeddingBackend& embedder_;
    ServiceOptions options_;
    RecordStore store_;
    Outbox outbox_;
    rag::IndexHandle index_;
    feedback::PipelineOptions pipeline_options_;
    std::mutex scheduled_mutex_;
    std::set<std::string> scheduled_;
    std::unique_ptr<WorkerPool> pool_;
};

/// Plain-text email body for a delivered feedback report.
std::string render_feedback_email(const InterviewReport& interview, const FeedbackReport& report);

/// Outbox message id for a job; one message per job.
std::string message_id_for(const std::string& job_id);

}  // namespace candor::service
