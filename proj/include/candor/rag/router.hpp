#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "candor/rag/faq_index.hpp"

namespace candor::rag {

enum class EscalationReason { BelowThreshold, EmptyIndex };

std::string to_string(EscalationReason reason);

struct Answered {
    std::string answer_text;
    std::string matched_faq_id;
    double score = 0.0;

    bool operator==(const Answered&) const = default;
};

struct Escalated {
    EscalationReason reason = EscalationReason::BelowThreshold;
    std::optional<double> best_score;

    bool operator==(const Escalated&) const = default;
};

using Resolution = std::variant<Answered, Escalated>;

inline bool is_answered(const Resolution& r) { return std::holds_alternative<Answered>(r); }

nlohmann::json to_json(const Resolution& resolution);

/// Top-1 routing decision before any completion call.
struct RouteDecision {
    std::optional<Match> best;  // empty only for an empty index
    bool answer = false;        // best->score >= threshold
};

/// Gate applied everywhere a score meets a threshold.
inline bool passes_threshold(double score, double threshold) { return score >= threshold; }

PromptBundle build_answer_prompt(const FaqEntry& entry, std::string_view candidate_question);

/// Question-only retrieval with a similarity gate. Queries at or above the
/// index threshold get a completion grounded in the single best FAQ entry;
/// everything else escalates.
class FaqRouter {
public:
    FaqRouter(gateway::ChatBackend& chat, gateway::EmbeddingBackend& embedder, double temperature = 0.0);

    /// Throws RagError(EmptyQuestion) when nothing is left after normalization.
    [[nodiscard]] Embedding embed_query(std::string_view question) const;

    [[nodiscard]] RouteDecision route(const FaqIndex& index, std::string_view question) const;
    [[nodiscard]] static RouteDecision route(const FaqIndex& index, const Embedding& query, double threshold);

    /// Throws RagError(EmptyQuestion) or GatewayError(BackendUnavailable).
    Resolution resolve(const FaqIndex& index, std::string_view question);

private:
    gateway::ChatBackend& chat_;
    gateway::EmbeddingBackend& embedder_;
    double temperature_;
};

struct LabeledQuery {
    std::string question;
    std::optional<std::string> expected_faq_id;  // none: should escalate
};

struct SweepPoint {
    double threshold = 0.0;
    std::size_t total = 0;
    std::size_t answered = 0;
    std::size_t correct = 0;
    double deflection_rate = 0.0;
    std::optional<double> precision;  // undefined when nothing was answered
};

nlohmann::json to_json(const SweepPoint& point);

/// Routes every labeled query under each threshold without calling the
/// chat backend. deflection_rate = answered / total; precision = correct /
/// answered, where correct means matched_faq_id == expected.
std::vector<SweepPoint> sweep_threshold(const FaqIndex& index, const FaqRouter& router,
                                        std::span<const LabeledQuery> labeled,
                                        std::span<const double> thresholds);

}  // namespace candor::rag
