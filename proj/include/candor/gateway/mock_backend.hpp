#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "candor/gateway/gateway.hpp"

namespace candor::gateway {

/// Bundle digest -> canned completion text.
class ScriptBook {
public:
    ScriptBook& add(const PromptBundle& bundle, std::string response);
    ScriptBook& add_digest(std::string digest, std::string response);
    [[nodiscard]] const std::string* find(const std::string& digest) const;
    [[nodiscard]] std::size_t size() const noexcept { return scripts_.size(); }

private:
    std::map<std::string, std::string> scripts_;
};

/// Deterministic offline chat backend.
///
/// Lookup order: exact bundle digest in the script book, then the optional
/// responder. If neither yields text the call fails with NoScriptedResponse,
/// which in a test means the fixture is missing a script. The script book is
/// immutable after construction; only the call log mutates.
class MockChatBackend final : public ChatBackend {
public:
    using Responder = std::function<std::optional<std::string>(const PromptBundle&)>;

    explicit MockChatBackend(ScriptBook scripts = {}, Responder responder = {});

    std::string complete(const CompletionRequest& request) override;

    [[nodiscard]] std::vector<PromptBundle> calls() const;
    [[nodiscard]] std::size_t call_count() const;

private:
    const ScriptBook scripts_;
    const Responder responder_;
    mutable std::mutex log_mutex_;
    std::vector<PromptBundle> log_;
};

/// Lowercased whitespace tokens with leading/trailing punctuation removed.
std::vector<std::string> embedding_tokens(std::string_view text);

/// Seeded token-hash bag-of-words embedder.
///
/// Every token is hashed with the seed into a splitmix64 stream that fills a
/// D-dimensional vector with uniform values in [-1, 1); token vectors are
/// summed and the sum is L2-normalized. Equal token multisets give equal
/// vectors, and shared tokens give shared components.
class HashEmbedder final : public EmbeddingBackend {
public:
    static constexpr std::size_t kDefaultDimension = 256;
    static constexpr std::uint64_t kDefaultSeed = 0x5eed;

    explicit HashEmbedder(std::size_t dimension = kDefaultDimension, std::uint64_t seed = kDefaultSeed);

    Embedding embed(std::string_view text) override;
    [[nodiscard]] std::size_t dimension() const noexcept override { return dimension_; }
    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }

    /// Every text passed to embed(), in call order.
    [[nodiscard]] std::vector<std::string> calls() const;
    void clear_calls();

private:
    std::size_t dimension_;
    std::uint64_t seed_;
    mutable std::mutex log_mutex_;
    std::vector<std::string> log_;
};

}  // namespace candor::gateway
