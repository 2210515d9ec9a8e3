#include "candor/service/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>

namespace candor::service {

using nlohmann::json;

namespace {

void merge(json& base, const json& overlay) {
    for (const auto& [key, value] : overlay.items()) {
        if (value.is_object() && base.contains(key) && base[key].is_object()) {
            merge(base[key], value);
        } else {
            base[key] = value;
        }
    }
}

void override_leaves(json& node, const std::string& prefix, const EnvLookup& lookup) {
    for (auto& [key, value] : node.items()) {
        std::string name = prefix + "_";
        for (char c : key) name.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
        if (value.is_object()) {
            override_leaves(value, name, lookup);
            continue;
        }
        auto raw = lookup(name);
        if (!raw) continue;
        json parsed = json::parse(*raw, nullptr, false);
        if (value.is_string() || value.is_null() || parsed.is_discarded()) {
            value = *raw;
        } else {
            value = std::move(parsed);
        }
    }
}

template <typename T>
T get_as(const json& doc, const char* section, const char* key) {
    try {
        return doc.at(section).at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config ") + section + "." + key + ": " + e.what());
    }
}

}  // namespace

json default_config_json() {
    const ServiceConfig d;
    return {
        {"model",
         {{"backend", d.model_backend},
          {"url", d.http.base_url},
          {"chat_model", d.http.chat_model},
          {"embedding_model", d.http.embedding_model},
          {"api_key", ""},
          {"timeout_seconds", d.http.timeout_seconds}}},
        {"embedding", {{"dimension", d.embedding_dimension}, {"seed", d.embedding_seed}}},
        {"rag", {{"threshold", d.rag_threshold}}},
        {"feedback", {{"max_retries", d.feedback_max_retries}, {"temperature", d.feedback_temperature}, {"lexicon", ""}}},
        {"store", {{"path", d.store_path.string()}}},
        {"server", {{"host", d.listen_host}, {"port", d.listen_port}, {"workers", d.worker_threads}}},
    };
}

void apply_env_overrides(json& doc, const EnvLookup& lookup) {
    override_leaves(doc, "CANDOR", lookup);
}

ServiceConfig config_from_json(const json& doc) {
    ServiceConfig c;
    c.model_backend = get_as<std::string>(doc, "model", "backend");
    c.http.base_url = get_as<std::string>(doc, "model", "url");
    c.http.chat_model = get_as<std::string>(doc, "model", "chat_model");
    c.http.embedding_model = get_as<std::string>(doc, "model", "embedding_model");
    c.http.api_key = get_as<std::string>(doc, "model", "api_key");
    c.http.timeout_seconds = get_as<int>(doc, "model", "timeout_seconds");
    const auto dim = get_as<long long>(doc, "embedding", "dimension");
    if (dim < 0) throw ConfigError("embedding.dimension must be >= 8");
    c.embedding_dimension = static_cast<std::size_t>(dim);
    c.http.dimension = c.embedding_dimension;
    c.embedding_seed = get_as<std::uint64_t>(doc, "embedding", "seed");
    c.rag_threshold = get_as<double>(doc, "rag", "threshold");
    c.feedback_max_retries = get_as<int>(doc, "feedback", "max_retries");
    c.feedback_temperature = get_as<double>(doc, "feedback", "temperature");
    if (auto lex = get_as<std::string>(doc, "feedback", "lexicon"); !lex.empty()) c.lexicon_path = lex;
    c.store_path = get_as<std::string>(doc, "store", "path");
    c.listen_host = get_as<std::string>(doc, "server", "host");
    c.listen_port = get_as<int>(doc, "server", "port");
    const auto workers = get_as<long long>(doc, "server", "workers");
    if (workers < 0) throw ConfigError("server.workers must be >= 1");
    c.worker_threads = static_cast<std::size_t>(workers);
    validate(c);
    return c;
}

void validate(const ServiceConfig& c) {
    if (c.model_backend != "mock" && c.model_backend != "http") {
        throw ConfigError("model.backend must be 'mock' or 'http'");
    }
    if (!(c.rag_threshold >= 0.0 && c.rag_threshold <= 1.0)) throw ConfigError("rag.threshold must lie in [0,1]");
    if (c.embedding_dimension < 8) throw ConfigError("embedding.dimension must be >= 8");
    if (c.feedback_max_retries < 0 || c.feedback_max_retries > 5) {
        throw ConfigError("feedback.max_retries must lie in [0,5]");
    }
    if (c.worker_threads < 1) throw ConfigError("server.workers must be >= 1");
    if (c.listen_port < 0 || c.listen_port > 65535) throw ConfigError("server.port out of range");
    if (c.store_path.empty()) throw ConfigError("store.path is empty");
}

ServiceConfig load_config(const std::optional<std::filesystem::path>& file, const EnvLookup& lookup) {
    json doc = default_config_json();
    if (file) {
        std::ifstream in(*file);
        if (!in) throw ConfigError("cannot open config file " + file->string());
        const json overlay = json::parse(in, nullptr, false);
        if (overlay.is_discarded() || !overlay.is_object()) {
            throw ConfigError("config file " + file->string() + " is not a JSON object");
        }
        merge(doc, overlay);
    }
    apply_env_overrides(doc, lookup);
    return config_from_json(doc);
}

ServiceConfig load_config(const std::optional<std::filesystem::path>& file) {
    return load_config(file, [](const std::string& name) -> std::optional<std::string> {
        if (const char* v = std::getenv(name.c_str())) return std::string(v);
        return std::nullopt;
    });
}

}  // namespace candor::service
