#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "candor/gateway/mock_backend.hpp"
#include "candor/rag/faq_index.hpp"
#include "../support/fixtures.hpp"
#include "../support/oracles.hpp"

namespace candor::rag {
namespace {

using gateway::Embedding;
using gateway::HashEmbedder;

Embedding axis(std::size_t dim, std::size_t i) {
    std::vector<double> v(dim, 0.0);
    v[i] = 1.0;
    return Embedding::from_unit(std::move(v));
}

template <typename Fn>
RagErrorCode rag_code(Fn&& fn) {
    try {
        fn();
    } catch (const RagError& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected RagError";
    return RagErrorCode::BadCorpus;
}

TEST(CosineSimilarity, SelfIsOne) {
    HashEmbedder e;
    for (const char* t : {"refund policy", "how long does the interview take", "x"}) {
        const auto v = e.embed(t);
        EXPECT_NEAR(cosine_similarity(v, v), 1.0, 1e-12);
    }
}

TEST(CosineSimilarity, OrthogonalIsZero) {
    EXPECT_EQ(cosine_similarity(axis(8, 0), axis(8, 1)), 0.0);
}

TEST(CosineSimilarity, FortyFiveDegrees) {
    std::vector<double> raw(8, 0.0);
    raw[0] = raw[1] = 1.0;
    const double expected = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(cosine_similarity(Embedding::normalized(raw), axis(8, 0)), expected, 1e-12);
    EXPECT_NEAR(expected, 0.7071, 1e-4);
}

TEST(CosineSimilarity, DimensionMismatch) {
    EXPECT_EQ(rag_code([] { cosine_similarity(axis(8, 0), axis(9, 0)); }), RagErrorCode::DimensionMismatch);
}

TEST(CosineSimilarity, AgreesWithFullFormula) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        const auto a = testing::oracle::random_unit(rng, 64);
        const auto b = testing::oracle::random_unit(rng, 64);
        const double got = cosine_similarity(a, b);
        EXPECT_NEAR(got, testing::oracle::cosine({a.values().begin(), a.values().end()},
                                                 {b.values().begin(), b.values().end()}),
                    1e-12);
        EXPECT_LE(std::abs(got), 1.0);
    }
}

TEST(NormalizeQuestion, Rules) {
    EXPECT_EQ(normalize_question("  How   do I\tRESET my password?? "), "how do i reset my password");
    EXPECT_EQ(normalize_question("What's next!"), "what's next");
    EXPECT_EQ(normalize_question("?!."), "");
    EXPECT_EQ(normalize_question(""), "");
}

std::vector<FaqRecord> three_records() {
    return {{"How do I reset my password?", "Use the reset link on the sign-in page."},
            {"When will I hear back?", "Within five business days."},
            {"Can I retake the interview?", "Yes, after ninety days."}};
}

TEST(Ingest, DistinctEntries) {
    HashEmbedder e;
    const auto records = three_records();
    const auto result = ingest(records, e);
    EXPECT_EQ(result.stats.count, 3u);
    EXPECT_EQ(result.stats.dimension, 256u);
    EXPECT_TRUE(result.stats.duplicate_questions.empty());
    ASSERT_EQ(result.index.size(), 3u);
    EXPECT_EQ(result.index.entries()[0].faq_id, "faq-000001");
    EXPECT_EQ(result.index.entries()[2].faq_id, "faq-000003");
    EXPECT_EQ(result.index.threshold(), FaqIndex::kDefaultThreshold);
}

TEST(Ingest, DuplicateNormalizedQuestionKeepsFirst) {
    HashEmbedder e;
    const std::vector<FaqRecord> records{{"How do I reset my password?", "first"},
                                         {"how do i   reset my PASSWORD", "second"}};
    const auto result = ingest(records, e);
    EXPECT_EQ(result.stats.count, 1u);
    ASSERT_EQ(result.stats.duplicate_questions.size(), 1u);
    EXPECT_EQ(result.stats.duplicate_questions[0].record_index, 1u);
    EXPECT_EQ(result.stats.duplicate_questions[0].kept_faq_id, "faq-000001");
    EXPECT_EQ(result.index.entries()[0].answer, "first");
}

TEST(Ingest, ReorderedWordsCollideAndAreDropped) {
    HashEmbedder e;
    const std::vector<FaqRecord> records{{"interview length", "a"}, {"length interview", "b"}};
    const auto result = ingest(records, e);
    EXPECT_EQ(result.stats.count, 1u);
    EXPECT_TRUE(result.stats.duplicate_questions.empty());
    ASSERT_EQ(result.stats.embedding_collisions.size(), 1u);
    EXPECT_EQ(result.stats.embedding_collisions[0].record_index, 1u);
}

TEST(Ingest, EmbedsQuestionsOnly) {
    HashEmbedder e;
    const auto records = testing::faq_fixture();
    e.clear_calls();
    ingest(records, e);
    const auto calls = e.calls();
    ASSERT_EQ(calls.size(), records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        EXPECT_EQ(calls[i], normalize_question(records[i].question));
        for (const auto& r : records) EXPECT_NE(calls[i], r.answer);
    }
}

TEST(Ingest, FixtureIsInjective) {
    HashEmbedder e;
    const auto result = ingest(testing::faq_fixture(), e);
    EXPECT_EQ(result.stats.count, 50u);
    EXPECT_TRUE(result.stats.duplicate_questions.empty());
    EXPECT_TRUE(result.stats.embedding_collisions.empty());
}

TEST(Ingest, Deterministic) {
    HashEmbedder a;
    HashEmbedder b;
    const auto records = testing::faq_fixture();
    EXPECT_EQ(ingest(records, a).index.to_snapshot(), ingest(records, b).index.to_snapshot());
}

TEST(Ingest, Errors) {
    HashEmbedder e;
    EXPECT_EQ(rag_code([&] { ingest(std::vector<FaqRecord>{}, e); }), RagErrorCode::EmptyCorpus);
    try {
        ingest(std::vector<FaqRecord>{{"ok?", "fine"}, {"  ", "answer"}}, e);
        FAIL();
    } catch (const RagError& err) {
        EXPECT_EQ(err.code(), RagErrorCode::EmptyField);
        EXPECT_EQ(err.index(), 1u);
    }
    EXPECT_EQ(rag_code([&] { ingest(std::vector<FaqRecord>{{"question", ""}}, e); }), RagErrorCode::EmptyField);
    IngestOptions bad;
    bad.threshold = 1.5;
    EXPECT_EQ(rag_code([&] { ingest(three_records(), e, bad); }), RagErrorCode::InvalidThreshold);
}

TEST(Ingest, StatsJson) {
    HashEmbedder e;
    const auto doc = to_json(ingest(three_records(), e).stats);
    EXPECT_EQ(doc.at("count"), 3);
    EXPECT_EQ(doc.at("dimension"), 256);
    EXPECT_TRUE(doc.at("duplicate_questions").empty());
}

TEST(Nearest, SingleEntryReturnsItsScore) {
    std::mt19937_64 rng(1);
    const auto index = testing::oracle::random_index(rng, 1, 32, 0.5);
    const auto q = testing::oracle::random_unit(rng, 32);
    const auto got = index.nearest(q, 3);
    ASSERT_EQ(got.size(), 1u);
    EXPECT_EQ(got[0].faq_id, "faq-000001");
    EXPECT_NEAR(got[0].score, cosine_similarity(q, index.entries()[0].embedding), 1e-15);
}

void expect_matches_oracle(const FaqIndex& index, const Embedding& q, std::size_t k) {
    const auto got = index.nearest(q, k);
    const auto want = testing::oracle::exhaustive_top_k(index, q, k);
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
        EXPECT_EQ(got[i].faq_id, want[i].faq_id) << "rank " << i;
        EXPECT_EQ(got[i].score, want[i].score) << "rank " << i;
    }
}

TEST(Nearest, RandomFiftyEntriesMatchOracle) {
    std::mt19937_64 rng(50);
    const auto index = testing::oracle::random_index(rng, 50, 256, 0.75);
    for (int i = 0; i < 20; ++i) expect_matches_oracle(index, testing::oracle::random_unit(rng, 256), 5);
}

TEST(Nearest, OracleEquivalenceAcrossSizesAndK) {
    std::mt19937_64 rng(1000);
    for (std::size_t n : {2u, 17u, 200u, 1000u}) {
        const auto index = testing::oracle::random_index(rng, n, 64, 0.5, n / 4);
        for (std::size_t k : {std::size_t{1}, std::size_t{3}, std::size_t{10}, n, n + 5}) {
            for (int i = 0; i < 3; ++i) expect_matches_oracle(index, testing::oracle::random_unit(rng, 64), k);
            // Query equal to a stored vector forces score ties with its duplicates.
            expect_matches_oracle(index, index.entries()[rng() % n].embedding, k);
        }
    }
}

TEST(Nearest, TiesGoToLowerId) {
    const auto v = axis(8, 3);
    std::vector<FaqEntry> entries{{"faq-000009", "b", "b", v}, {"faq-000002", "a", "a", v},
                                  {"faq-000005", "c", "c", axis(8, 4)}};
    const FaqIndex index(std::move(entries), 8, 0, 0.5);
    const auto got = index.nearest(v, 3);
    ASSERT_EQ(got.size(), 3u);
    EXPECT_EQ(got[0].faq_id, "faq-000002");
    EXPECT_EQ(got[1].faq_id, "faq-000009");
    EXPECT_EQ(got[2].faq_id, "faq-000005");
}

TEST(Nearest, RejectsBadInput) {
    std::mt19937_64 rng(2);
    const auto index = testing::oracle::random_index(rng, 5, 16, 0.5);
    EXPECT_EQ(rag_code([&] { (void)index.nearest(testing::oracle::random_unit(rng, 8), 1); }),
              RagErrorCode::DimensionMismatch);
    EXPECT_EQ(rag_code([&] { (void)index.nearest(testing::oracle::random_unit(rng, 16), 0); }), RagErrorCode::InvalidK);
    EXPECT_TRUE(FaqIndex::empty(16, 0, 0.5).nearest(testing::oracle::random_unit(rng, 16), 4).empty());
}

TEST(FaqIndex, ConstructionInvariants) {
    EXPECT_EQ(rag_code([] { FaqIndex::empty(8, 0, -0.1); }), RagErrorCode::InvalidThreshold);
    EXPECT_EQ(rag_code([] { FaqIndex::empty(8, 0, 1.01); }), RagErrorCode::InvalidThreshold);
    EXPECT_NO_THROW(FaqIndex::empty(8, 0, 0.0));
    EXPECT_NO_THROW(FaqIndex::empty(8, 0, 1.0));
    EXPECT_EQ(rag_code([] { FaqIndex({{"faq-1", "q", "a", axis(4, 0)}}, 8, 0, 0.5); }),
              RagErrorCode::DimensionMismatch);
    EXPECT_EQ(rag_code([] { FaqIndex({{"faq-1", "q", "a", axis(8, 0)}, {"faq-1", "r", "b", axis(8, 1)}}, 8, 0, 0.5); }),
              RagErrorCode::DuplicateId);
}

TEST(FaqIndex, WithThresholdKeepsEntries) {
    HashEmbedder e;
    const auto index = ingest(three_records(), e).index;
    const auto other = index.with_threshold(0.2);
    EXPECT_EQ(other.threshold(), 0.2);
    EXPECT_EQ(other.size(), index.size());
    EXPECT_EQ(other.entries()[1].embedding, index.entries()[1].embedding);
}

TEST(FaqIndex, SnapshotRoundTrip) {
    testing::TempDir dir;
    HashEmbedder e;
    IngestOptions opts;
    opts.threshold = 0.6;
    opts.seed = 0x5eed;
    const auto index = ingest(testing::faq_fixture(), e, opts).index;
    const auto path = dir.path() / "index.json";
    index.save(path);
    const auto loaded = FaqIndex::load(path);
    EXPECT_EQ(loaded.threshold(), 0.6);
    EXPECT_EQ(loaded.seed(), 0x5eedu);
    EXPECT_EQ(loaded.dimension(), 256u);
    ASSERT_EQ(loaded.size(), index.size());
    for (std::size_t i = 0; i < index.size(); ++i) {
        EXPECT_EQ(loaded.entries()[i].faq_id, index.entries()[i].faq_id);
        EXPECT_EQ(loaded.entries()[i].question, index.entries()[i].question);
        EXPECT_EQ(loaded.entries()[i].answer, index.entries()[i].answer);
        EXPECT_EQ(loaded.entries()[i].embedding, index.entries()[i].embedding);
    }
    const auto q = e.embed("how long does the ai interview take");
    EXPECT_EQ(loaded.nearest(q, 5), index.nearest(q, 5));
}

TEST(FaqIndex, BadSnapshots) {
    testing::TempDir dir;
    EXPECT_EQ(rag_code([&] { FaqIndex::load(dir.path() / "missing.json"); }), RagErrorCode::BadSnapshot);
    EXPECT_EQ(rag_code([] { FaqIndex::from_snapshot({{"format", "other"}}); }), RagErrorCode::BadSnapshot);
    HashEmbedder e;
    auto doc = ingest(three_records(), e).index.to_snapshot();
    doc["entries"][0]["embedding"][0] = 5.0;
    EXPECT_THROW(FaqIndex::from_snapshot(doc), RagError);
}

TEST(FaqCorpus, ParsesJsonLines) {
    std::istringstream in("{\"question\": \"Q1?\", \"answer\": \"A1\"}\n\n  \n{\"question\": \"Q2?\", \"answer\": \"A2\"}\n");
    const auto records = parse_faq_corpus(in);
    ASSERT_EQ(records.size(), 2u);
    EXPECT_EQ(records[1].question, "Q2?");
}

TEST(FaqCorpus, BadLinesRejected) {
    std::istringstream not_object("{\"question\": \"Q1?\", \"answer\": \"A1\"}\n[1]\n");
    try {
        parse_faq_corpus(not_object);
        FAIL();
    } catch (const RagError& e) {
        EXPECT_EQ(e.code(), RagErrorCode::BadCorpus);
        EXPECT_EQ(e.index(), 1u);
    }
    std::istringstream missing("{\"question\": \"Q1?\"}\n");
    EXPECT_EQ(rag_code([&] { parse_faq_corpus(missing); }), RagErrorCode::BadCorpus);
}

TEST(IndexHandle, ReadersSeeWholeGenerations) {
    std::mt19937_64 rng(9);
    auto small = std::make_shared<const FaqIndex>(testing::oracle::random_index(rng, 10, 16, 0.5));
    auto large = std::make_shared<const FaqIndex>(testing::oracle::random_index(rng, 40, 16, 0.5));
    IndexHandle handle(small);
    EXPECT_EQ(handle.generation(), 0u);

    std::atomic<bool> done{false};
    std::atomic<int> torn{0};
    std::vector<std::thread> readers;
    for (int t = 0; t < 4; ++t) {
        readers.emplace_back([&] {
            while (!done) {
                const auto idx = handle.current();
                if (idx->size() != 10 && idx->size() != 40) ++torn;
            }
        });
    }
    for (int i = 0; i < 500; ++i) handle.swap_in(i % 2 ? small : large);
    done = true;
    for (auto& r : readers) r.join();
    EXPECT_EQ(torn.load(), 0);
    EXPECT_EQ(handle.generation(), 500u);
}

}  // namespace
}  // namespace candor::rag
