#include "candor/gateway/http_backend.hpp"

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "candor/gateway/mock_backend.hpp"

namespace candor::gateway {

using nlohmann::json;

HttpModelBackend::HttpModelBackend(HttpBackendOptions options) : options_(std::move(options)) {}

std::string HttpModelBackend::post_json(const std::string& path, const std::string& body, int max_retries) const {
    std::string last_error;
    for (int attempt = 0; attempt <= max_retries; ++attempt) {
        httplib::Client client(options_.base_url);
        client.set_connection_timeout(options_.timeout_seconds);
        client.set_read_timeout(options_.timeout_seconds);
        httplib::Headers headers;
        if (!options_.api_key.empty()) headers.emplace("Authorization", "Bearer " + options_.api_key);
        auto res = client.Post(path, headers, body, "application/json");
        if (!res) {
            last_error = httplib::to_string(res.error());
            continue;
        }
        if (res->status >= 200 && res->status < 300) return res->body;
        last_error = "HTTP " + std::to_string(res->status);
    }
    throw GatewayError(GatewayErrorCode::BackendUnavailable, path + ": " + last_error);
}

std::string HttpModelBackend::complete(const CompletionRequest& request) {
    validate(request);
    json messages = json::array();
    messages.push_back({{"role", "system"}, {"content", request.bundle.system}});
    for (const auto& ex : request.bundle.exemplars) {
        messages.push_back({{"role", "user"}, {"content", ex.input}});
        messages.push_back({{"role", "assistant"}, {"content", ex.output}});
    }
    messages.push_back({{"role", "user"}, {"content", request.bundle.user}});
    const json body{{"model", options_.chat_model},
                    {"temperature", request.temperature},
                    {"messages", std::move(messages)}};

    const auto reply = post_json("/v1/chat/completions", body.dump(), request.max_retries);
    try {
        return json::parse(reply).at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const json::exception& e) {
        throw GatewayError(GatewayErrorCode::BackendUnavailable, std::string("malformed completion: ") + e.what());
    }
}

Embedding HttpModelBackend::embed(std::string_view text) {
    if (embedding_tokens(text).empty()) throw GatewayError(GatewayErrorCode::EmptyText, "nothing to embed");
    const json body{{"model", options_.embedding_model}, {"input", std::string(text)}};
    const auto reply = post_json("/v1/embeddings", body.dump(), 0);
    std::vector<double> values;
    try {
        values = json::parse(reply).at("data").at(0).at("embedding").get<std::vector<double>>();
    } catch (const json::exception& e) {
        throw GatewayError(GatewayErrorCode::BackendUnavailable, std::string("malformed embedding: ") + e.what());
    }
    if (values.size() != options_.dimension) {
        throw GatewayError(GatewayErrorCode::DimensionMismatch,
                           "provider returned " + std::to_string(values.size()) + " dims, configured " +
                               std::to_string(options_.dimension));
    }
    return Embedding::normalized(std::move(values));
}

}  // namespace candor::gateway
