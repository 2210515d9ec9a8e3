#include "candor/service/http_server.hpp"

#include <httplib.h>

namespace candor::service {

using nlohmann::json;

namespace {

void send(httplib::Response& res, const ApiResponse& api) {
    res.status = api.status;
    res.set_content(api.payload(), api.content_type);
}

// Parses a JSON body; on failure writes a 400 and returns nullopt.
std::optional<json> parse_body(const httplib::Request& req, httplib::Response& res) {
    json body = json::parse(req.body, nullptr, false);
    if (body.is_discarded()) {
        send(res, {400, json{{"error", "request body is not valid JSON"}}});
        return std::nullopt;
    }
    return body;
}

}  // namespace

HttpServer::HttpServer(CandidateService& service)
    : service_(service), server_(std::make_unique<httplib::Server>()) {
    install_routes();
}

HttpServer::~HttpServer() {
    stop();
}

void HttpServer::install_routes() {
    auto& s = *server_;
    s.Post("/v1/interviews", [this](const httplib::Request& req, httplib::Response& res) {
        if (auto body = parse_body(req, res)) send(res, service_.post_interview(*body));
    });
    s.Post("/v1/feedback-requests", [this](const httplib::Request& req, httplib::Response& res) {
        if (auto body = parse_body(req, res)) send(res, service_.post_feedback_request(*body));
    });
    s.Get(R"(/v1/feedback/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
        send(res, service_.get_feedback(req.matches[1]));
    });
    s.Post("/v1/queries", [this](const httplib::Request& req, httplib::Response& res) {
        if (auto body = parse_body(req, res)) send(res, service_.post_query(*body));
    });
    s.Post("/v1/faqs", [this](const httplib::Request& req, httplib::Response& res) {
        send(res, service_.post_faqs(req.body));
    });
    s.Post("/v1/nps", [this](const httplib::Request& req, httplib::Response& res) {
        if (auto body = parse_body(req, res)) send(res, service_.post_nps(*body));
    });
    s.Get("/v1/metrics", [this](const httplib::Request& req, httplib::Response& res) {
        send(res, service_.get_metrics(req.get_param_value("format") == "csv"));
    });
    s.Get("/healthz", [this](const httplib::Request&, httplib::Response& res) { send(res, service_.health()); });
}

int HttpServer::start(const std::string& host, int port) {
    const int bound = port == 0 ? server_->bind_to_any_port(host) : (server_->bind_to_port(host, port) ? port : -1);
    if (bound < 0) return -1;
    thread_ = std::thread([this] { server_->listen_after_bind(); });
    server_->wait_until_ready();
    return bound;
}

bool HttpServer::listen(const std::string& host, int port) {
    return server_->listen(host, port);
}

void HttpServer::stop() {
    if (server_) server_->stop();
    if (thread_.joinable()) thread_.join();
}

}  // namespace candor::service
