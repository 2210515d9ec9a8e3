#include "candor/gateway/mock_backend.hpp"

#include <cctype>

namespace candor::gateway {
namespace {

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

bool is_edge_punct(unsigned char c) {
    return std::ispunct(c) != 0;
}

}  // namespace

ScriptBook& ScriptBook::add(const PromptBundle& bundle, std::string response) {
    return add_digest(bundle_digest(bundle), std::move(response));
}

ScriptBook& ScriptBook::add_digest(std::string digest, std::string response) {
    scripts_[std::move(digest)] = std::move(response);
    return *this;
}

const std::string* ScriptBook::find(const std::string& digest) const {
    auto it = scripts_.find(digest);
    return it == scripts_.end() ? nullptr : &it->second;
}

MockChatBackend::MockChatBackend(ScriptBook scripts, Responder responder)
    : scripts_(std::move(scripts)), responder_(std::move(responder)) {}

std::string MockChatBackend::complete(const CompletionRequest& request) {
    validate(request);
    {
        std::lock_guard lock(log_mutex_);
        log_.push_back(request.bundle);
    }
    const std::string digest = bundle_digest(request.bundle);
    if (const auto* text = scripts_.find(digest)) return *text;
    if (responder_) {
        if (auto text = responder_(request.bundle)) return *std::move(text);
    }
    throw GatewayError(GatewayErrorCode::NoScriptedResponse, "no script for bundle " + digest);
}

std::vector<PromptBundle> MockChatBackend::calls() const {
    std::lock_guard lock(log_mutex_);
    return log_;
}

std::size_t MockChatBackend::call_count() const {
    std::lock_guard lock(log_mutex_);
    return log_.size();
}

std::vector<std::string> embedding_tokens(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    auto flush = [&] {
        std::size_t b = 0;
        std::size_t e = current.size();
        while (b < e && is_edge_punct(static_cast<unsigned char>(current[b]))) ++b;
        while (e > b && is_edge_punct(static_cast<unsigned char>(current[e - 1]))) --e;
        if (e > b) tokens.push_back(current.substr(b, e - b));
        current.clear();
    };
    for (unsigned char c : text) {
        if (std::isspace(c)) {
            flush();
        } else {
            current.push_back(static_cast<char>(std::tolower(c)));
        }
    }
    flush();
    return tokens;
}

HashEmbedder::HashEmbedder(std::size_t dimension, std::uint64_t seed) : dimension_(dimension), seed_(seed) {
    if (dimension_ == 0) throw GatewayError(GatewayErrorCode::InvalidRequest, "dimension must be positive");
}

Embedding HashEmbedder::embed(std::string_view text) {
    {
        std::lock_guard lock(log_mutex_);
        log_.emplace_back(text);
    }
    const auto tokens = embedding_tokens(text);
    if (tokens.empty()) throw GatewayError(GatewayErrorCode::EmptyText, "nothing to embed");

    std::vector<double> sum(dimension_, 0.0);
    for (const auto& token : tokens) {
        std::uint64_t state = fnv1a64(token, seed_);
        for (double& v : sum) {
            // Top 53 bits -> [0,1) -> [-1,1).
            const double unit = static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
            v += 2.0 * unit - 1.0;
        }
    }
    return Embedding::normalized(std::move(sum));
}

std::vector<std::string> HashEmbedder::calls() const {
    std::lock_guard lock(log_mutex_);
    return log_;
}

void HashEmbedder::clear_calls() {
    std::lock_guard lock(log_mutex_);
    log_.clear();
}

}  // namespace candor::gateway
