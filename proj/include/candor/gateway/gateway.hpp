#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "candor/domain/types.hpp"

namespace candor::gateway {

enum class GatewayErrorCode {
    BackendUnavailable,
    NoScriptedResponse,
    EmptyText,
    DimensionMismatch,
    InvalidRequest,
};

std::string to_string(GatewayErrorCode code);

class GatewayError : public std::runtime_error {
public:
    GatewayError(GatewayErrorCode code, const std::string& what)
        : std::runtime_error(to_string(code) + ": " + what), code_(code) {}

    [[nodiscard]] GatewayErrorCode code() const noexcept { return code_; }

private:
    GatewayErrorCode code_;
};

struct CompletionRequest {
    static constexpr int kMaxRetriesLimit = 5;

    PromptBundle bundle;
    double temperature = 0.0;
    int max_retries = 0;
};

/// Throws GatewayError(InvalidRequest) when the request breaks its bounds.
void validate(const CompletionRequest& request);

/// Unit-norm vector. Construction normalizes; a zero vector is rejected.
class Embedding {
public:
    static constexpr double kNormTolerance = 1e-9;

    Embedding() = default;
    static Embedding normalized(std::vector<double> raw);
    /// Adopts values that are already unit norm (checked against kNormTolerance).
    static Embedding from_unit(std::vector<double> unit);

    [[nodiscard]] std::size_t dimension() const noexcept { return values_.size(); }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }

    bool operator==(const Embedding&) const = default;

private:
    explicit Embedding(std::vector<double> v) : values_(std::move(v)) {}
    std::vector<double> values_;
};

class ChatBackend {
public:
    virtual ~ChatBackend() = default;
    /// Implementations must be safe for concurrent calls.
    virtual std::string complete(const CompletionRequest& request) = 0;
};

class EmbeddingBackend {
public:
    virtual ~EmbeddingBackend() = default;
    virtual Embedding embed(std::string_view text) = 0;
    [[nodiscard]] virtual std::size_t dimension() const noexcept = 0;
};

/// Stable hex digest of a bundle (system, user and exemplars, length-prefixed).
std::string bundle_digest(const PromptBundle& bundle);

/// 64-bit FNV-1a, optionally seeded by mixing the seed into the offset basis.
std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed = 0) noexcept;

}  // namespace candor::gateway
