#include "candor/gateway/gateway.hpp"

#include <cmath>
#include <cstdio>

namespace candor::gateway {

std::string to_string(GatewayErrorCode code) {
    switch (code) {
        case GatewayErrorCode::BackendUnavailable: return "BackendUnavailable";
        case GatewayErrorCode::NoScriptedResponse: return "NoScriptedResponse";
        case GatewayErrorCode::EmptyText: return "EmptyText";
        case GatewayErrorCode::DimensionMismatch: return "DimensionMismatch";
        case GatewayErrorCode::InvalidRequest: return "InvalidRequest";
    }
    return "Unknown";
}

void validate(const CompletionRequest& request) {
    if (request.max_retries < 0 || request.max_retries > CompletionRequest::kMaxRetriesLimit) {
        throw GatewayError(GatewayErrorCode::InvalidRequest, "max_retries outside [0,5]");
    }
    if (!(request.temperature >= 0.0)) {
        throw GatewayError(GatewayErrorCode::InvalidRequest, "temperature must be >= 0");
    }
    try {
        candor::validate(request.bundle);
    } catch (const InvalidValue& e) {
        throw GatewayError(GatewayErrorCode::InvalidRequest, e.what());
    }
}

Embedding Embedding::normalized(std::vector<double> raw) {
    double sq = 0.0;
    for (double v : raw) sq += v * v;
    const double norm = std::sqrt(sq);
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw GatewayError(GatewayErrorCode::InvalidRequest, "cannot normalize a zero or non-finite vector");
    }
    for (double& v : raw) v /= norm;
    return Embedding(std::move(raw));
}

Embedding Embedding::from_unit(std::vector<double> unit) {
    double sq = 0.0;
    for (double v : unit) sq += v * v;
    if (std::abs(std::sqrt(sq) - 1.0) > kNormTolerance) {
        throw GatewayError(GatewayErrorCode::InvalidRequest, "embedding is not unit norm");
    }
    return Embedding(std::move(unit));
}

std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed) noexcept {
    constexpr std::uint64_t kOffset = 0xcbf29ce484222325ULL;
    constexpr std::uint64_t kPrime = 0x100000001b3ULL;
    std::uint64_t h = kOffset ^ (seed * 0x9e3779b97f4a7c15ULL);
    for (unsigned char c : data) {
        h ^= c;
        h *= kPrime;
    }
    return h;
}

std::string bundle_digest(const PromptBundle& bundle) {
    std::string canon;
    auto field = [&canon](std::string_view tag, std::string_view text) {
        canon.append(tag);
        canon.append(std::to_string(text.size()));
        canon.push_back(':');
        canon.append(text);
    };
    field("S", bundle.system);
    field("U", bundle.user);
    for (const auto& ex : bundle.exemplars) {
        field("I", ex.input);
        field("O", ex.output);
    }
    // Two independent 64-bit lanes keep accidental collisions out of reach.
    char buf[33];
    std::snprintf(buf, sizeof buf, "%016llx%016llx",
                  static_cast<unsigned long long>(fnv1a64(canon, 1)),
                  static_cast<unsigned long long>(fnv1a64(canon, 2)));
    return buf;
}

}  // namespace candor::gateway
