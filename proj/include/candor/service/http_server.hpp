#pragma once

#include <memory>
#include <string>
#include <thread>

#include "candor/service/service.hpp"

namespace httplib {
class Server;
}

namespace candor::service {

/// REST adapter over CandidateService (HTTP/1.1, JSON bodies).
///
///   POST /v1/interviews          record an interview report
///   POST /v1/feedback-requests   {"interview_id"}            -> 202 new job / 200 existing
///   GET  /v1/feedback/{job_id}                               -> job status and report
///   POST /v1/queries             {"question"}                -> resolution
///   POST /v1/faqs                JSON-lines corpus body      -> ingest statistics
///   POST /v1/nps                 {"interview_id", "rating"}
///   GET  /v1/metrics[?format=csv]
///   GET  /healthz
class HttpServer {
public:
    explicit HttpServer(CandidateService& service);
    ~HttpServer();

    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Binds host:port (port 0 picks a free one) and serves on a background
    /// thread. Returns the bound port.
    int start(const std::string& host, int port);
    /// Binds and serves on the calling thread until stop().
    bool listen(const std::string& host, int port);
    void stop();

private:
    void install_routes();

    CandidateService& service_;
    std::unique_ptr<httplib::Server> server_;
    std::thread thread_;
};

}  // namespace candor::service
