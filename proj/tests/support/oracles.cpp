#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace candor::testing::oracle {

double dot(const gateway::Embedding& a, const gateway::Embedding& b) {
    double s = 0.0;
    const auto av = a.values();
    const auto bv = b.values();
    for (std::size_t i = 0; i < av.size(); ++i) s += av[i] * bv[i];
    return s;
}

double cosine(const std::vector<double>& a, const std::vector<double>& b) {
    double ab = 0.0, aa = 0.0, bb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ab += a[i] * b[i];
        aa += a[i] * a[i];
        bb += b[i] * b[i];
    }
    return ab / (std::sqrt(aa) * std::sqrt(bb));
}

std::vector<Scored> exhaustive_top_k(const rag::FaqIndex& index, const gateway::Embedding& query, std::size_t k) {
    std::vector<Scored> all;
    for (const auto& e : index.entries()) all.push_back({e.faq_id, std::clamp(dot(query, e.embedding), -1.0, 1.0)});
    std::sort(all.begin(), all.end(), [](const Scored& a, const Scored& b) {
        return a.score > b.score || (a.score == b.score && a.faq_id < b.faq_id);
    });
    if (all.size() > k) all.resize(k);
    return all;
}

std::vector<SweepOracle> brute_force_sweep(const rag::FaqIndex& index, gateway::EmbeddingBackend& embedder,
                                           const std::vector<rag::LabeledQuery>& queries,
                                           const std::vector<double>& thresholds) {
    std::vector<SweepOracle> out;
    for (double t : thresholds) {
        SweepOracle o{t, 0, 0};
        for (const auto& q : queries) {
            const auto emb = embedder.embed(rag::normalize_question(q.question));
            const auto top = exhaustive_top_k(index, emb, 1);
            if (top.empty() || top.front().score < t) continue;
            ++o.answered;
            if (q.expected_faq_id && *q.expected_faq_id == top.front().faq_id) ++o.correct;
        }
        out.push_back(o);
    }
    return out;
}

gateway::Embedding random_unit(std::mt19937_64& rng, std::size_t dimension) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> v(dimension);
    for (auto& x : v) x = normal(rng);
    return gateway::Embedding::normalized(std::move(v));
}

rag::FaqIndex random_index(std::mt19937_64& rng, std::size_t n, std::size_t dimension, double threshold,
                           std::size_t duplicated) {
    std::vector<rag::FaqEntry> entries;
    for (std::size_t i = 0; i < n; ++i) {
        char id[32];
        std::snprintf(id, sizeof id, "faq-%06zu", i + 1);
        gateway::Embedding emb = (i > 0 && i <= duplicated) ? entries[rng() % i].embedding : random_unit(rng, dimension);
        entries.push_back({id, "q" + std::to_string(i), "a" + std::to_string(i), std::move(emb)});
    }
    // Shuffle so tie partners are not adjacent in storage order.
    std::shuffle(entries.begin(), entries.end(), rng);
    return rag::FaqIndex(std::move(entries), dimension, 0, threshold);
}

}  // namespace candor::testing::oracle
