#include "candor/service/service.hpp"

#include <algorithm>
#include <sstream>

#include "candor/analytics/metrics.hpp"
#include "candor/domain/feedback_schema.hpp"
#include "candor/domain/interview_json.hpp"

namespace candor::service {

using nlohmann::json;
using feedback::FeedbackJob;
using feedback::JobStatus;

namespace {

ApiResponse error(int status, const std::string& message) {
    return {status, json{{"error", message}}};
}

bool finished(JobStatus s) {
    return s == JobStatus::Delivered || s == JobStatus::Failed;
}

json job_view(const FeedbackJob& job) {
    json out{{"job_id", job.job_id},
             {"interview_id", job.interview_id},
             {"status", feedback::to_string(job.status)},
             {"attempts", job.attempts}};
    if (job.status == JobStatus::Delivered && job.result) {
        out["report"] = json::parse(serialize_feedback(*job.result));
    }
    if (job.status == JobStatus::Failed) out["errors"] = job.errors;
    return out;
}

}  // namespace

std::string message_id_for(const std::string& job_id) {
    return "msg-" + job_id;
}

std::string render_feedback_email(const InterviewReport& interview, const FeedbackReport& report) {
    std::ostringstream out;
    out << "Hello,\n\nThank you for interviewing";
    if (!interview.role_title.empty()) out << " for the " << interview.role_title << " role";
    out << ". Here is the feedback you requested.\n\nStrengths\n";
    for (const auto& item : report.strengths) out << "- " << item.title << ": " << item.detail << '\n';
    out << "\nAreas for improvement\n";
    for (const auto& item : report.areas_for_improvement) out << "- " << item.title << ": " << item.detail << '\n';
    out << "\nWe wish you the best in your search.\n";
    return out.str();
}

CandidateService::CandidateService(ServiceConfig config, gateway::ChatBackend& chat,
                                   gateway::EmbeddingBackend& embedder, ServiceOptions options)
    : config_(std::move(config)),
      chat_(chat),
      embedder_(embedder),
      options_(std::move(options)),
      store_(config_.store_path),
      outbox_(config_.store_path / "outbox.jsonl"),
      index_(nullptr) {
    validate(config_);
    if (embedder_.dimension() != config_.embedding_dimension) {
        throw ConfigError("embedder dimension " + std::to_string(embedder_.dimension()) +
                          " differs from embedding.dimension " + std::to_string(config_.embedding_dimension));
    }
    if (std::filesystem::exists(index_path())) {
        auto loaded = rag::FaqIndex::load(index_path());
        if (loaded.dimension() != config_.embedding_dimension) {
            throw ConfigError("stored FAQ index dimension differs from configuration");
        }
        index_.swap_in(std::make_shared<const rag::FaqIndex>(std::move(loaded)));
    } else {
        index_.swap_in(std::make_shared<const rag::FaqIndex>(
            rag::FaqIndex::empty(config_.embedding_dimension, config_.embedding_seed, config_.rag_threshold)));
    }

    pipeline_options_.max_retries = config_.feedback_max_retries;
    pipeline_options_.temperature = config_.feedback_temperature;
    pipeline_options_.exemplars = options_.exemplars;
    if (config_.lexicon_path) {
        pipeline_options_.lexicon = feedback::GuardrailLexicon::with_negative_terms_from(*config_.lexicon_path);
    }
    if (options_.start_workers) start_workers();
}

CandidateService::~CandidateService() {
    pool_.reset();
}

std::filesystem::path CandidateService::index_path() const {
    return config_.store_path / "faq_index.json";
}

void CandidateService::start_workers() {
    if (pool_) return;
    pool_ = std::make_unique<WorkerPool>(config_.worker_threads);
    for (const auto& job : store_.jobs()) {
        if (!finished(job.status)) enqueue(job.job_id);
    }
}

void CandidateService::wait_idle() {
    if (pool_) pool_->wait_idle();
}

void CandidateService::simulate_crash() {
    store_.seal();
    outbox_.seal();
    if (pool_) pool_->stop();
}

void CandidateService::enqueue(const std::string& job_id) {
    if (!pool_) return;
    {
        std::lock_guard lock(scheduled_mutex_);
        if (!scheduled_.insert(job_id).second) return;
    }
    pool_->submit([this, job_id] {
        run_job(job_id);
        std::lock_guard lock(scheduled_mutex_);
        scheduled_.erase(job_id);
    });
}

void CandidateService::run_job(const std::string& job_id) {
    auto job = store_.job(job_id);
    if (!job || finished(job->status)) return;
    const auto interview = store_.interview(job->interview_id);
    if (!interview) return;

    if (!job->result) {
        try {
            feedback::FeedbackPipeline pipeline(chat_, pipeline_options_);
            auto run = pipeline.generate(*interview, [&](JobStatus stage, int attempt) {
                if (stage != JobStatus::Drafted) return;
                job->status = JobStatus::Drafted;
                job->attempts = attempt;
                store_.update_job(*job);
            });
            job->status = JobStatus::Reviewed;
            job->attempts = run.attempts;
            job->result = std::move(run.report);
            job->errors.clear();
            store_.update_job(*job);
        } catch (const feedback::FeedbackError& e) {
            job->status = JobStatus::Failed;
            job->attempts = std::max(job->attempts, e.attempts());
            job->errors = e.last_errors();
            store_.update_job(*job);
            return;
        } catch (const std::exception& e) {
            job->status = JobStatus::Failed;
            job->errors = {e.what()};
            store_.update_job(*job);
            return;
        }
    }

    // A job with a result may already have its message from before a restart.
    OutboxMessage message;
    message.message_id = message_id_for(job->job_id);
    message.recipient = interview->candidate_email.empty() ? interview->interview_id + "@candidates.invalid"
                                                           : interview->candidate_email;
    message.subject = "Your interview feedback";
    message.body = render_feedback_email(*interview, *job->result);
    message.created_at = std::chrono::time_point_cast<std::chrono::seconds>(std::chrono::system_clock::now());
    outbox_.append(message);
    outbox_.mark_delivered(message.message_id);

    job->status = JobStatus::Delivered;
    store_.update_job(*job);
}

ApiResponse CandidateService::post_interview(const json& body) {
    InterviewReport report;
    try {
        report = interview_from_json(body);
    } catch (const std::exception& e) {
        return error(400, std::string("invalid interview report: ") + e.what());
    }
    if (!store_.add_interview(report)) return error(409, "interview " + report.interview_id + " already exists");
    return {201, json{{"interview_id", report.interview_id}}};
}

ApiResponse CandidateService::post_feedback_request(const json& body) {
    if (!body.is_object() || !body.contains("interview_id") || !body["interview_id"].is_string()) {
        return error(400, "body must be {\"interview_id\": string}");
    }
    const auto id = body["interview_id"].get<std::string>();
    const auto interview = store_.interview(id);
    if (!interview) return error(404, "unknown interview " + id);
    if (interview->outcome != InterviewOutcome::Unsuccessful) {
        return error(409, "feedback is available only for unsuccessful interviews");
    }
    auto [job, created] = store_.create_or_get_job(id);
    if (created) enqueue(job.job_id);
    return {created ? 202 : 200, json{{"job_id", job.job_id}, {"status", feedback::to_string(job.status)}}};
}

ApiResponse CandidateService::get_feedback(const std::string& job_id) const {
    const auto job = store_.job(job_id);
    if (!job) return error(404, "unknown job " + job_id);
    return {200, job_view(*job)};
}

ApiResponse CandidateService::post_query(const json& body) {
    if (!body.is_object() || !body.contains("question") || !body["question"].is_string()) {
        return error(400, "body must be {\"question\": string}");
    }
    const auto question = body["question"].get<std::string>();
    const auto index = index_.current();
    rag::FaqRouter router(chat_, embedder_);
    rag::Resolution resolution;
    try {
        resolution = router.resolve(*index, question);
    } catch (const rag::RagError& e) {
        if (e.code() == rag::RagErrorCode::EmptyQuestion) return error(400, "question is empty");
        return error(500, e.what());
    } catch (const gateway::GatewayError& e) {
        return error(503, e.what());
    }

    json out = rag::to_json(resolution);
    if (const auto* a = std::get_if<rag::Answered>(&resolution)) {
        store_.record_query(question, true, a->matched_faq_id, a->score);
    } else {
        const auto& esc = std::get<rag::Escalated>(resolution);
        const auto rec = store_.record_query(question, false, std::nullopt, esc.best_score);
        out["ticket_id"] = rec.ticket_id ? json(*rec.ticket_id) : json(nullptr);
    }
    return {200, std::move(out)};
}

ApiResponse CandidateService::post_faqs(const std::string& corpus_jsonl) {
    try {
        std::istringstream in(corpus_jsonl);
        const auto records = rag::parse_faq_corpus(in);
        rag::IngestOptions opts;
        opts.threshold = config_.rag_threshold;
        opts.seed = config_.embedding_seed;
        auto result = rag::ingest(records, embedder_, opts);
        result.index.save(index_path());
        const auto generation = store_.record_faq_generation(result.stats.count);
        index_.swap_in(std::make_shared<const rag::FaqIndex>(std::move(result.index)));
        json out = rag::to_json(result.stats);
        out["generation"] = generation;
        return {200, std::move(out)};
    } catch (const rag::RagError& e) {
        return error(400, e.what());
    } catch (const gateway::GatewayError& e) {
        return error(503, e.what());
    }
}

ApiResponse CandidateService::post_nps(const json& body) {
    if (!body.is_object() || !body.contains("interview_id") || !body["interview_id"].is_string() ||
        !body.contains("rating") || !body["rating"].is_number_integer()) {
        return error(400, "body must be {\"interview_id\": string, \"rating\": integer}");
    }
    const auto rating = body["rating"].get<long long>();
    if (rating < 1 || rating > 5) return error(400, "rating must lie in [1,5]");
    const auto id = body["interview_id"].get<std::string>();
    if (!store_.interview(id)) return error(404, "unknown interview " + id);
    store_.record_rating(id, static_cast<int>(rating));
    return {200, json{{"interview_id", id}, {"rating", rating}}};
}

ApiResponse CandidateService::get_metrics(bool csv) const {
    if (csv) {
        const auto rows = analytics::comparison_table();
        ApiResponse r;
        r.content_type = "text/csv";
        r.raw = analytics::comparison_csv(rows);
        return r;
    }
    json out = analytics::metrics_snapshot(store_.metrics_inputs());
    const auto tickets = store_.tickets();
    out["counts"]["open_tickets"] = std::count_if(tickets.begin(), tickets.end(),
                                                  [](const auto& t) { return t.status == TicketStatus::Open; });
    return {200, std::move(out)};
}

ApiResponse CandidateService::health() const {
    const auto index = index_.current();
    return {200, json{{"status", "ok"}, {"faq_entries", index->size()}, {"backend", config_.model_backend}}};
}

ServiceState CandidateService::state() const {
    return {store_.state(), outbox_.lines(), get_metrics().body};
}

}  // namespace candor::service
