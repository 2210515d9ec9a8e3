#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "candor/gateway/http_backend.hpp"

namespace candor::service {

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct ServiceConfig {
    std::string model_backend = "mock";  // mock | http
    gateway::HttpBackendOptions http;
    std::size_t embedding_dimension = 256;
    std::uint64_t embedding_seed = 0x5eed;
    double rag_threshold = 0.75;
    int feedback_max_retries = 2;
    double feedback_temperature = 0.2;
    std::optional<std::filesystem::path> lexicon_path;
    std::filesystem::path store_path = "candor-data";
    std::string listen_host = "127.0.0.1";
    int listen_port = 8080;
    std::size_t worker_threads = 4;
};

/// Throws ConfigError on any broken invariant.
void validate(const ServiceConfig& config);

/// Defaults as a nested JSON document, e.g. {"model": {"backend": "mock"}}.
nlohmann::json default_config_json();

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

/// Every leaf key "a.b" can be overridden by the environment variable
/// CANDOR_A_B; values are parsed as JSON when possible, else taken as strings.
void apply_env_overrides(nlohmann::json& doc, const EnvLookup& lookup);

/// defaults <- file (if given) <- environment, then validated.
ServiceConfig load_config(const std::optional<std::filesystem::path>& file, const EnvLookup& lookup);
ServiceConfig load_config(const std::optional<std::filesystem::path>& file = std::nullopt);

ServiceConfig config_from_json(const nlohmann::json& doc);

}  // namespace candor::service
