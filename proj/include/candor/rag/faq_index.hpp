#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "candor/gateway/gateway.hpp"

namespace candor::rag {

using gateway::Embedding;

enum class RagErrorCode {
    EmptyCorpus,
    EmptyField,
    DimensionMismatch,
    EmptyQuestion,
    EmptyLabelSet,
    InvalidThreshold,
    DuplicateId,
    BadCorpus,
    BadSnapshot,
    InvalidK,
};

std::string to_string(RagErrorCode code);

class RagError : public std::runtime_error {
public:
    RagError(RagErrorCode code, const std::string& what, std::size_t index = 0)
        : std::runtime_error(to_string(code) + ": " + what), code_(code), index_(index) {}

    [[nodiscard]] RagErrorCode code() const noexcept { return code_; }
    /// Offending record index for EmptyField / BadCorpus.
    [[nodiscard]] std::size_t index() const noexcept { return index_; }

private:
    RagErrorCode code_;
    std::size_t index_;
};

/// Lowercase, collapse runs of whitespace, trim, strip terminal punctuation.
std::string normalize_question(std::string_view text);

/// dot(a,b) / (|a||b|), clamped to [-1, 1].
double cosine_similarity(const Embedding& a, const Embedding& b);

struct FaqRecord {
    std::string question;
    std::string answer;
};

struct FaqEntry {
    std::string faq_id;
    std::string question;
    std::string answer;
    Embedding embedding;  // of the normalized question only
};

struct Match {
    std::string faq_id;
    double score = 0.0;

    bool operator==(const Match&) const = default;
};

/// Immutable exhaustive-scan index over unit-norm question embeddings.
class FaqIndex {
public:
    static constexpr double kDefaultThreshold = 0.75;

    FaqIndex(std::vector<FaqEntry> entries, std::size_t dimension, std::uint64_t seed, double threshold);
    static FaqIndex empty(std::size_t dimension, std::uint64_t seed, double threshold);

    [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
    [[nodiscard]] bool is_empty() const noexcept { return entries_.empty(); }
    [[nodiscard]] std::size_t dimension() const noexcept { return dimension_; }
    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
    [[nodiscard]] double threshold() const noexcept { return threshold_; }
    [[nodiscard]] std::span<const FaqEntry> entries() const noexcept { return entries_; }
    [[nodiscard]] const FaqEntry* find(const std::string& faq_id) const;

    /// k best entries by score (dot product of unit vectors), descending,
    /// ties by ascending faq_id. Returns min(k, size()) matches.
    [[nodiscard]] std::vector<Match> nearest(const Embedding& query, std::size_t k) const;

    /// Same entries under a different threshold.
    [[nodiscard]] FaqIndex with_threshold(double threshold) const;

    [[nodiscard]] nlohmann::json to_snapshot() const;
    static FaqIndex from_snapshot(const nlohmann::json& doc);
    void save(const std::filesystem::path& path) const;
    static FaqIndex load(const std::filesystem::path& path);

private:
    std::vector<FaqEntry> entries_;
    std::size_t dimension_;
    std::uint64_t seed_;
    double threshold_;
};

struct DuplicateQuestion {
    std::size_t record_index = 0;
    std::string question;
    std::string kept_faq_id;
};

struct IngestStats {
    std::size_t count = 0;
    std::size_t dimension = 0;
    std::vector<DuplicateQuestion> duplicate_questions;
    // Distinct normalized questions whose embeddings came out identical
    // (e.g. reordered words under a bag-of-words embedder). Dropped like duplicates.
    std::vector<DuplicateQuestion> embedding_collisions;
};

nlohmann::json to_json(const IngestStats& stats);

struct IngestResult {
    FaqIndex index;
    IngestStats stats;
};

struct IngestOptions {
    double threshold = FaqIndex::kDefaultThreshold;
    std::uint64_t seed = 0;  // recorded in snapshots
};

/// Embeds each record's normalized question (never the answer) and builds a
/// fresh index. Duplicate normalized questions keep the first occurrence.
IngestResult ingest(std::span<const FaqRecord> records, gateway::EmbeddingBackend& embedder,
                    const IngestOptions& options = {});

/// One JSON object {"question": str, "answer": str} per line; blank lines skipped.
std::vector<FaqRecord> parse_faq_corpus(std::istream& in);
std::vector<FaqRecord> read_faq_corpus(const std::filesystem::path& path);

/// Current index generation. Readers get a consistent snapshot; writers swap
/// whole generations.
class IndexHandle {
public:
    explicit IndexHandle(std::shared_ptr<const FaqIndex> initial);

    [[nodiscard]] std::shared_ptr<const FaqIndex> current() const;
    void swap_in(std::shared_ptr<const FaqIndex> next);
    [[nodiscard]] std::uint64_t generation() const;

private:
    mutable std::mutex mutex_;
    std::shared_ptr<const FaqIndex> index_;
    std::uint64_t generation_ = 0;
};

}  // namespace candor::rag
