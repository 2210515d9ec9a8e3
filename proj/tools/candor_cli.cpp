// candor: command-line entry point for the candidate-support service.
#include <CLI11.hpp>

#include <csignal>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <nlohmann/json.hpp>

#include "candor/analytics/metrics.hpp"
#include "candor/domain/feedback_schema.hpp"
#include "candor/feedback/prompts.hpp"
#include "candor/gateway/http_backend.hpp"
#include "candor/gateway/mock_backend.hpp"
#include "candor/rag/faq_index.hpp"
#include "candor/rag/router.hpp"
#include "candor/service/http_server.hpp"
#include "candor/service/service.hpp"

namespace {

using nlohmann::json;
using namespace candor;

std::string read_all(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<double> parse_thresholds(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
}

// Offline chat responses for the mock backend. A script file may hold
// {"scripts": {"<bundle digest>": "<text>"}, "default_feedback": "<json>"}.
// Review prompts echo their draft and FAQ prompts echo the stored answer.
std::unique_ptr<gateway::MockChatBackend> make_mock_chat(const std::string& script_path) {
    gateway::ScriptBook book;
    std::optional<std::string> default_feedback;
    if (!script_path.empty()) {
        const auto doc = json::parse(read_all(script_path));
        for (const auto& [digest, text] : doc.value("scripts", json::object()).items()) {
            book.add_digest(digest, text.get<std::string>());
        }
        if (doc.contains("default_feedback")) default_feedback = doc["default_feedback"].get<std::string>();
    }
    auto responder = [default_feedback](const PromptBundle& b) -> std::optional<std::string> {
        if (b.user.find("<draft_feedback>") != std::string::npos) {
            return feedback::extract_tagged(b.user, "draft_feedback");
        }
        if (b.user.find("<faq_answer>") != std::string::npos) return feedback::extract_tagged(b.user, "faq_answer");
        if (b.user.find("<interview_report>") != std::string::npos) return default_feedback;
        return std::nullopt;
    };
    return std::make_unique<gateway::MockChatBackend>(std::move(book), responder);
}

service::HttpServer* g_server = nullptr;

void on_signal(int) {
    if (g_server) g_server->stop();
}

int cmd_serve(const std::optional<std::string>& config_path, const std::string& mock_script) {
    auto config = service::load_config(config_path ? std::optional<std::filesystem::path>(*config_path) : std::nullopt);
    std::unique_ptr<gateway::ChatBackend> chat;
    std::unique_ptr<gateway::EmbeddingBackend> embedder;
    gateway::HttpModelBackend* http = nullptr;
    if (config.model_backend == "http") {
        auto backend = std::make_unique<gateway::HttpModelBackend>(config.http);
        http = backend.get();
        chat = std::move(backend);
    } else {
        chat = make_mock_chat(mock_script);
        embedder = std::make_unique<gateway::HashEmbedder>(config.embedding_dimension, config.embedding_seed);
    }
    gateway::EmbeddingBackend& emb = http ? static_cast<gateway::EmbeddingBackend&>(*http) : *embedder;

    service::CandidateService svc(config, *chat, emb);
    service::HttpServer server(svc);
    g_server = &server;
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    std::cerr << "listening on " << config.listen_host << ":" << config.listen_port << " (backend "
              << config.model_backend << ", store " << config.store_path << ")\n";
    if (!server.listen(config.listen_host, config.listen_port)) {
        std::cerr << "failed to bind " << config.listen_host << ":" << config.listen_port << "\n";
        return 1;
    }
    return 0;
}

int cmd_validate(const std::string& path) {
    const auto result = validate_feedback_document(read_all(path));
    if (!result) {
        std::cout << json{{"valid", false},
                          {"error", to_string(result.error().kind)},
                          {"message", result.error().describe()}}
                         .dump(2)
                  << "\n";
        return 2;
    }
    std::cout << serialize_feedback(*result, 2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Candidate feedback and FAQ resolution service"};
    app.require_subcommand(1);

    std::optional<std::string> config_path;
    std::string mock_script;
    auto* serve = app.add_subcommand("serve", "Run the REST service");
    serve->add_option("-c,--config", config_path, "JSON config file (env CANDOR_* overrides apply)");
    serve->add_option("--mock-script", mock_script, "Scripted responses for the mock chat backend");

    std::string doc_path;
    auto* validate = app.add_subcommand("validate", "Validate a feedback JSON document ('-' for stdin)");
    validate->add_option("file", doc_path)->required();

    std::string corpus, out_path;
    std::size_t dimension = 256;
    std::uint64_t seed = gateway::HashEmbedder::kDefaultSeed;
    double threshold = rag::FaqIndex::kDefaultThreshold;
    auto* ingest = app.add_subcommand("ingest", "Build a FAQ index snapshot from a JSON-lines corpus");
    ingest->add_option("--corpus", corpus)->required();
    ingest->add_option("--out", out_path)->required();
    ingest->add_option("--dimension", dimension);
    ingest->add_option("--seed", seed);
    ingest->add_option("--threshold", threshold);

    std::string index_path, question;
    std::size_t k = 3;
    auto* query = app.add_subcommand("query", "Route a question against an index snapshot (no model call)");
    query->add_option("--index", index_path)->required();
    query->add_option("-k", k, "Number of neighbours to list");
    query->add_option("question", question)->required();

    std::string labels, thresholds_csv = "0.5,0.6,0.7,0.75,0.8,0.9";
    auto* sweep = app.add_subcommand("sweep", "Deflection/precision per threshold for labeled queries");
    sweep->add_option("--index", index_path)->required();
    sweep->add_option("--labels", labels, "JSON lines {question, expected_faq_id|null}")->required();
    sweep->add_option("--thresholds", thresholds_csv);

    std::string store_path;
    bool csv = false;
    auto* metrics = app.add_subcommand("metrics", "Print metrics computed from a store directory");
    metrics->add_option("--store", store_path)->required();
    metrics->add_flag("--csv", csv, "Print the comparison table as CSV instead");

    auto* comparison = app.add_subcommand("comparison", "Print the interview-quality comparison table");
    comparison->add_flag("--csv", csv);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*serve) return cmd_serve(config_path, mock_script);
        if (*validate) return cmd_validate(doc_path);
        if (*ingest) {
            gateway::HashEmbedder embedder(dimension, seed);
            const auto records = rag::read_faq_corpus(corpus);
            auto result = rag::ingest(records, embedder, {threshold, seed});
            result.index.save(out_path);
            std::cout << rag::to_json(result.stats).dump(2) << "\n";
            return 0;
        }
        if (*query || *sweep) {
            const auto index = rag::FaqIndex::load(index_path);
            gateway::HashEmbedder embedder(index.dimension(), index.seed());
            gateway::MockChatBackend unused;
            rag::FaqRouter router(unused, embedder);
            if (*query) {
                const auto q = router.embed_query(question);
                json out = json::array();
                for (const auto& m : index.nearest(q, k)) {
                    out.push_back({{"faq_id", m.faq_id},
                                   {"score", m.score},
                                   {"question", index.find(m.faq_id)->question},
                                   {"passes", rag::passes_threshold(m.score, index.threshold())}});
                }
                std::cout << out.dump(2) << "\n";
                return 0;
            }
            std::vector<rag::LabeledQuery> labeled;
            std::istringstream in(read_all(labels));
            std::string line;
            while (std::getline(in, line)) {
                if (line.empty()) continue;
                const auto doc = json::parse(line);
                rag::LabeledQuery lq{doc.at("question").get<std::string>(), std::nullopt};
                if (!doc.at("expected_faq_id").is_null()) lq.expected_faq_id = doc["expected_faq_id"].get<std::string>();
                labeled.push_back(std::move(lq));
            }
            const auto ts = parse_thresholds(thresholds_csv);
            json out = json::array();
            for (const auto& p : rag::sweep_threshold(index, router, labeled, ts)) out.push_back(rag::to_json(p));
            std::cout << out.dump(2) << "\n";
            return 0;
        }
        if (*metrics) {
            if (csv) {
                std::cout << analytics::comparison_csv(analytics::comparison_table());
                return 0;
            }
            service::RecordStore store(store_path);
            std::cout << analytics::metrics_snapshot(store.metrics_inputs()).dump(2) << "\n";
            return 0;
        }
        if (*comparison) {
            const auto rows = analytics::comparison_table();
            if (csv) {
                std::cout << analytics::comparison_csv(rows);
            } else {
                json out = json::array();
                for (const auto& r : rows) {
                    out.push_back({{"metric_name", r.metric_name},
                                   {"human_led", r.human_led},
                                   {"previous_system", r.previous_system},
                                   {"current_system", r.current_system}});
                }
                std::cout << out.dump(2) << "\n";
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
