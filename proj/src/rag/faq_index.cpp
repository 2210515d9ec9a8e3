#include "candor/rag/faq_index.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace candor::rag {
namespace {

using nlohmann::json;

constexpr const char* kSnapshotFormat = "candor-faq-index";
constexpr int kSnapshotVersion = 1;

bool better(const Match& a, const Match& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.faq_id < b.faq_id;
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

std::string make_faq_id(std::size_t n) {
    std::ostringstream out;
    out << "faq-";
    out.width(6);
    out.fill('0');
    out << n;
    return out.str();
}

void check_threshold(double threshold) {
    if (!(threshold >= 0.0 && threshold <= 1.0)) {
        throw RagError(RagErrorCode::InvalidThreshold, "threshold must lie in [0,1]");
    }
}

}  // namespace

std::string to_string(RagErrorCode code) {
    switch (code) {
        case RagErrorCode::EmptyCorpus: return "EmptyCorpus";
        case RagErrorCode::EmptyField: return "EmptyField";
        case RagErrorCode::DimensionMismatch: return "DimensionMismatch";
        case RagErrorCode::EmptyQuestion: return "EmptyQuestion";
        case RagErrorCode::EmptyLabelSet: return "EmptyLabelSet";
        case RagErrorCode::InvalidThreshold: return "InvalidThreshold";
        case RagErrorCode::DuplicateId: return "DuplicateId";
        case RagErrorCode::BadCorpus: return "BadCorpus";
        case RagErrorCode::BadSnapshot: return "BadSnapshot";
        case RagErrorCode::InvalidK: return "InvalidK";
    }
    return "Unknown";
}

std::string normalize_question(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    bool pending_space = false;
    for (unsigned char c : text) {
        if (std::isspace(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) out.push_back(' ');
        pending_space = false;
        out.push_back(static_cast<char>(std::tolower(c)));
    }
    while (!out.empty() && (std::ispunct(static_cast<unsigned char>(out.back())) || out.back() == ' ')) {
        out.pop_back();
    }
    return out;
}

double cosine_similarity(const Embedding& a, const Embedding& b) {
    if (a.dimension() != b.dimension()) {
        throw RagError(RagErrorCode::DimensionMismatch,
                       std::to_string(a.dimension()) + " vs " + std::to_string(b.dimension()));
    }
    const auto av = a.values();
    const auto bv = b.values();
    const double denom = std::sqrt(dot(av, av)) * std::sqrt(dot(bv, bv));
    if (denom == 0.0) return 0.0;
    return std::clamp(dot(av, bv) / denom, -1.0, 1.0);
}

FaqIndex::FaqIndex(std::vector<FaqEntry> entries, std::size_t dimension, std::uint64_t seed, double threshold)
    : entries_(std::move(entries)), dimension_(dimension), seed_(seed), threshold_(threshold) {
    check_threshold(threshold_);
    std::set<std::string> ids;
    for (const auto& e : entries_) {
        if (e.embedding.dimension() != dimension_) {
            throw RagError(RagErrorCode::DimensionMismatch, "entry " + e.faq_id + " has wrong dimension");
        }
        if (!ids.insert(e.faq_id).second) throw RagError(RagErrorCode::DuplicateId, e.faq_id);
    }
}

FaqIndex FaqIndex::empty(std::size_t dimension, std::uint64_t seed, double threshold) {
    return FaqIndex({}, dimension, seed, threshold);
}

const FaqEntry* FaqIndex::find(const std::string& faq_id) const {
    auto it = std::find_if(entries_.begin(), entries_.end(), [&](const auto& e) { return e.faq_id == faq_id; });
    return it == entries_.end() ? nullptr : &*it;
}

std::vector<Match> FaqIndex::nearest(const Embedding& query, std::size_t k) const {
    if (k == 0) throw RagError(RagErrorCode::InvalidK, "k must be positive");
    if (query.dimension() != dimension_) {
        throw RagError(RagErrorCode::DimensionMismatch,
                       "query has " + std::to_string(query.dimension()) + " dims, index " +
                           std::to_string(dimension_));
    }
    std::vector<Match> scored;
    scored.reserve(entries_.size());
    const auto q = query.values();
    for (const auto& e : entries_) {
        scored.push_back({e.faq_id, std::clamp(dot(q, e.embedding.values()), -1.0, 1.0)});
    }
    const auto take = std::min(k, scored.size());
    std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(take), scored.end(), better);
    scored.resize(take);
    return scored;
}

FaqIndex FaqIndex::with_threshold(double threshold) const {
    return FaqIndex(entries_, dimension_, seed_, threshold);
}

json FaqIndex::to_snapshot() const {
    json entries = json::array();
    for (const auto& e : entries_) {
        const auto v = e.embedding.values();
        entries.push_back({{"faq_id", e.faq_id},
                           {"question", e.question},
                           {"answer", e.answer},
                           {"embedding", std::vector<double>(v.begin(), v.end())}});
    }
    return {{"format", kSnapshotFormat},
            {"version", kSnapshotVersion},
            {"dimension", dimension_},
            {"seed", seed_},
            {"threshold", threshold_},
            {"entries", std::move(entries)}};
}

FaqIndex FaqIndex::from_snapshot(const json& doc) {
    try {
        if (doc.value("format", "") != kSnapshotFormat || doc.value("version", 0) != kSnapshotVersion) {
            throw RagError(RagErrorCode::BadSnapshot, "unrecognized snapshot format");
        }
        std::vector<FaqEntry> entries;
        for (const auto& e : doc.at("entries")) {
            entries.push_back({e.at("faq_id").get<std::string>(), e.at("question").get<std::string>(),
                               e.at("answer").get<std::string>(),
                               Embedding::from_unit(e.at("embedding").get<std::vector<double>>())});
        }
        return FaqIndex(std::move(entries), doc.at("dimension").get<std::size_t>(),
                        doc.at("seed").get<std::uint64_t>(), doc.at("threshold").get<double>());
    } catch (const json::exception& e) {
        throw RagError(RagErrorCode::BadSnapshot, e.what());
    } catch (const gateway::GatewayError& e) {
        throw RagError(RagErrorCode::BadSnapshot, e.what());
    }
}

void FaqIndex::save(const std::filesystem::path& path) const {
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw RagError(RagErrorCode::BadSnapshot, "cannot write " + tmp);
        out << to_snapshot().dump();
        if (!out.flush()) throw RagError(RagErrorCode::BadSnapshot, "write failed: " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

FaqIndex FaqIndex::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw RagError(RagErrorCode::BadSnapshot, "cannot open " + path.string());
    const json doc = json::parse(in, nullptr, false);
    if (doc.is_discarded()) throw RagError(RagErrorCode::BadSnapshot, "snapshot is not valid JSON");
    return from_snapshot(doc);
}

json to_json(const IngestStats& stats) {
    auto list = [](const std::vector<DuplicateQuestion>& items) {
        json arr = json::array();
        for (const auto& d : items) {
            arr.push_back({{"record_index", d.record_index}, {"question", d.question}, {"kept_faq_id", d.kept_faq_id}});
        }
        return arr;
    };
    return {{"count", stats.count},
            {"dimension", stats.dimension},
            {"duplicate_questions", list(stats.duplicate_questions)},
            {"embedding_collisions", list(stats.embedding_collisions)}};
}

IngestResult ingest(std::span<const FaqRecord> records, gateway::EmbeddingBackend& embedder,
                    const IngestOptions& options) {
    if (records.empty()) throw RagError(RagErrorCode::EmptyCorpus, "no FAQ records");
    check_threshold(options.threshold);

    IngestStats stats;
    stats.dimension = embedder.dimension();
    std::vector<FaqEntry> entries;
    std::map<std::string, std::string> by_question;
    std::map<std::vector<double>, std::string> by_vector;

    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& rec = records[i];
        const auto normalized = normalize_question(rec.question);
        if (normalized.empty() || rec.answer.find_first_not_of(" \t\r\n") == std::string::npos) {
            throw RagError(RagErrorCode::EmptyField, "record " + std::to_string(i) + " has an empty field", i);
        }
        if (auto it = by_question.find(normalized); it != by_question.end()) {
            stats.duplicate_questions.push_back({i, rec.question, it->second});
            continue;
        }
        Embedding emb;
        try {
            emb = embedder.embed(normalized);
        } catch (const gateway::GatewayError& e) {
            if (e.code() == gateway::GatewayErrorCode::EmptyText) {
                throw RagError(RagErrorCode::EmptyField, "record " + std::to_string(i) + " question has no tokens", i);
            }
            throw;
        }
        if (emb.dimension() != stats.dimension) {
            throw RagError(RagErrorCode::DimensionMismatch, "embedder returned wrong dimension");
        }
        std::vector<double> key(emb.values().begin(), emb.values().end());
        if (auto it = by_vector.find(key); it != by_vector.end()) {
            stats.embedding_collisions.push_back({i, rec.question, it->second});
            continue;
        }
        auto id = make_faq_id(entries.size() + 1);
        by_question.emplace(normalized, id);
        by_vector.emplace(std::move(key), id);
        entries.push_back({std::move(id), rec.question, rec.answer, std::move(emb)});
    }
    stats.count = entries.size();
    return {FaqIndex(std::move(entries), stats.dimension, options.seed, options.threshold), std::move(stats)};
}

std::vector<FaqRecord> parse_faq_corpus(std::istream& in) {
    std::vector<FaqRecord> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const json doc = json::parse(line, nullptr, false);
        if (doc.is_discarded() || !doc.is_object()) {
            throw RagError(RagErrorCode::BadCorpus, "line " + std::to_string(line_no) + " is not a JSON object",
                           records.size());
        }
        auto q = doc.find("question");
        auto a = doc.find("answer");
        if (q == doc.end() || a == doc.end() || !q->is_string() || !a->is_string()) {
            throw RagError(RagErrorCode::BadCorpus,
                           "line " + std::to_string(line_no) + " needs string \"question\" and \"answer\"",
                           records.size());
        }
        records.push_back({q->get<std::string>(), a->get<std::string>()});
    }
    return records;
}

std::vector<FaqRecord> read_faq_corpus(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw RagError(RagErrorCode::BadCorpus, "cannot open " + path.string());
    return parse_faq_corpus(in);
}

IndexHandle::IndexHandle(std::shared_ptr<const FaqIndex> initial) : index_(std::move(initial)) {}

std::shared_ptr<const FaqIndex> IndexHandle::current() const {
    std::lock_guard lock(mutex_);
    return index_;
}

void IndexHandle::swap_in(std::shared_ptr<const FaqIndex> next) {
    std::lock_guard lock(mutex_);
    index_ = std::move(next);
    ++generation_;
}

std::uint64_t IndexHandle::generation() const {
    std::lock_guard lock(mutex_);
    return generation_;
}

}  // namespace candor::rag
