#include "candor/rag/router.hpp"

#include "candor/feedback/prompts.hpp"

namespace candor::rag {

std::string to_string(EscalationReason reason) {
    return reason == EscalationReason::BelowThreshold ? "BelowThreshold" : "EmptyIndex";
}

nlohmann::json to_json(const Resolution& resolution) {
    if (const auto* a = std::get_if<Answered>(&resolution)) {
        return {{"kind", "answered"}, {"answer", a->answer_text}, {"faq_id", a->matched_faq_id}, {"score", a->score}};
    }
    const auto& e = std::get<Escalated>(resolution);
    nlohmann::json out{{"kind", "escalated"}, {"reason", to_string(e.reason)}};
    out["best_score"] = e.best_score ? nlohmann::json(*e.best_score) : nlohmann::json(nullptr);
    return out;
}

PromptBundle build_answer_prompt(const FaqEntry& entry, std::string_view candidate_question) {
    using namespace candor::feedback;
    PromptBundle bundle;
    bundle.system = std::string(answer_system_prompt());
    auto user = fill_template(answer_user_template(), "{FAQ_QUESTION}", entry.question);
    user = fill_template(user, "{FAQ_ANSWER}", entry.answer);
    bundle.user = fill_template(user, "{CANDIDATE_QUESTION}", candidate_question);
    return bundle;
}

FaqRouter::FaqRouter(gateway::ChatBackend& chat, gateway::EmbeddingBackend& embedder, double temperature)
    : chat_(chat), embedder_(embedder), temperature_(temperature) {}

Embedding FaqRouter::embed_query(std::string_view question) const {
    const auto normalized = normalize_question(question);
    if (normalized.empty()) throw RagError(RagErrorCode::EmptyQuestion, "question is empty");
    try {
        return embedder_.embed(normalized);
    } catch (const gateway::GatewayError& e) {
        if (e.code() == gateway::GatewayErrorCode::EmptyText) {
            throw RagError(RagErrorCode::EmptyQuestion, "question has no tokens");
        }
        throw;
    }
}

RouteDecision FaqRouter::route(const FaqIndex& index, const Embedding& query, double threshold) {
    RouteDecision decision;
    if (index.is_empty()) return decision;
    auto top = index.nearest(query, 1);
    decision.answer = passes_threshold(top.front().score, threshold);
    decision.best = std::move(top.front());
    return decision;
}

RouteDecision FaqRouter::route(const FaqIndex& index, std::string_view question) const {
    const auto query = embed_query(question);
    return route(index, query, index.threshold());
}

Resolution FaqRouter::resolve(const FaqIndex& index, std::string_view question) {
    const auto decision = route(index, question);
    if (!decision.best) return Escalated{EscalationReason::EmptyIndex, std::nullopt};
    if (!decision.answer) return Escalated{EscalationReason::BelowThreshold, decision.best->score};

    const FaqEntry* entry = index.find(decision.best->faq_id);
    gateway::CompletionRequest request;
    request.bundle = build_answer_prompt(*entry, question);
    request.temperature = temperature_;
    return Answered{chat_.complete(request), entry->faq_id, decision.best->score};
}

nlohmann::json to_json(const SweepPoint& point) {
    nlohmann::json out{{"threshold", point.threshold},
                       {"total", point.total},
                       {"answered", point.answered},
                       {"correct", point.correct},
                       {"deflection_rate", point.deflection_rate}};
    out["precision"] = point.precision ? nlohmann::json(*point.precision) : nlohmann::json(nullptr);
    return out;
}

std::vector<SweepPoint> sweep_threshold(const FaqIndex& index, const FaqRouter& router,
                                        std::span<const LabeledQuery> labeled,
                                        std::span<const double> thresholds) {
    if (labeled.empty()) throw RagError(RagErrorCode::EmptyLabelSet, "no labeled queries");

    std::vector<std::optional<Match>> best;
    best.reserve(labeled.size());
    for (const auto& q : labeled) {
        best.push_back(FaqRouter::route(index, router.embed_query(q.question), 0.0).best);
    }

    std::vector<SweepPoint> points;
    for (double tau : thresholds) {
        SweepPoint p;
        p.threshold = tau;
        p.total = labeled.size();
        for (std::size_t i = 0; i < labeled.size(); ++i) {
            if (!best[i] || !passes_threshold(best[i]->score, tau)) continue;
            ++p.answered;
            if (labeled[i].expected_faq_id && *labeled[i].expected_faq_id == best[i]->faq_id) ++p.correct;
        }
        p.deflection_rate = static_cast<double>(p.answered) / static_cast<double>(p.total);
        if (p.answered > 0) p.precision = static_cast<double>(p.correct) / static_cast<double>(p.answered);
        points.push_back(p);
    }
    return points;
}

}  // namespace candor::rag
