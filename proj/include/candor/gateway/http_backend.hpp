#pragma once

#include <string>

#include "candor/gateway/gateway.hpp"

namespace candor::gateway {

struct HttpBackendOptions {
    std::string base_url = "http://127.0.0.1:8000";  // scheme://host[:port]
    std::string chat_model = "gpt-4o";
    std::string embedding_model = "text-embedding-3-small";
    std::string api_key;  // sent as a Bearer token when non-empty
    std::size_t dimension = 256;
    int timeout_seconds = 30;
};

/// OpenAI-compatible chat + embeddings client.
///
/// complete() posts to /v1/chat/completions with the system prompt, each
/// exemplar as a user/assistant pair, then the user prompt; it returns
/// choices[0].message.content. Transport failures and non-2xx replies are
/// retried max_retries times, then surface as BackendUnavailable.
/// embed() posts to /v1/embeddings, checks the dimension, and re-normalizes.
class HttpModelBackend final : public ChatBackend, public EmbeddingBackend {
public:
    explicit HttpModelBackend(HttpBackendOptions options);

    std::string complete(const CompletionRequest& request) override;
    Embedding embed(std::string_view text) override;
    [[nodiscard]] std::size_t dimension() const noexcept override { return options_.dimension; }

private:
    std::string post_json(const std::string& path, const std::string& body, int max_retries) const;

    HttpBackendOptions options_;
};

}  // namespace candor::gateway
