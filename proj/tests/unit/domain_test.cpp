#include <gtest/gtest.h>

#include <random>
#include <string>

#include <nlohmann/json.hpp>

#include "candor/domain/feedback_schema.hpp"
#include "candor/domain/interview_json.hpp"
#include "candor/domain/types.hpp"
#include "../support/fixtures.hpp"

namespace candor {
namespace {

using nlohmann::json;

json items(std::size_t n, const std::string& prefix = "Point") {
    json arr = json::array();
    for (std::size_t i = 0; i < n; ++i) {
        arr.push_back({{"title", prefix + " " + std::to_string(i)},
                       {"detail", "You showed something worth noting, item " + std::to_string(i) + "."}});
    }
    return arr;
}

json document(std::size_t strengths, std::size_t improvements) {
    return {{"strengths", items(strengths)}, {"areas_for_improvement", items(improvements, "Gap")}};
}

SchemaError error_of(const std::string& doc) {
    auto v = validate_feedback_document(doc);
    EXPECT_FALSE(v.has_value()) << doc;
    return v.has_value() ? SchemaError{} : v.error();
}

TEST(FeedbackSchema, TwoAndThreeItemsIsValid) {
    auto v = validate_feedback_document(document(2, 3).dump());
    ASSERT_TRUE(v.has_value());
    EXPECT_EQ(v->strengths.size(), 2u);
    EXPECT_EQ(v->areas_for_improvement.size(), 3u);
    EXPECT_EQ(v->strengths[1].title, "Point 1");
}

TEST(FeedbackSchema, OneStrengthIsBadCardinality) {
    auto err = error_of(document(1, 2).dump());
    EXPECT_EQ(err.kind, SchemaErrorKind::BadCardinality);
    EXPECT_EQ(err.key, "strengths");
    EXPECT_EQ(err.count, 1u);
}

TEST(FeedbackSchema, UpperBoundIsFour) {
    EXPECT_TRUE(validate_feedback_document(document(4, 4).dump()).has_value());
    auto err = error_of(document(2, 5).dump());
    EXPECT_EQ(err.kind, SchemaErrorKind::BadCardinality);
    EXPECT_EQ(err.key, "areas_for_improvement");
    EXPECT_EQ(err.count, 5u);
}

TEST(FeedbackSchema, ExtraRootKey) {
    auto doc = document(2, 2);
    doc["summary"] = "Overall fine.";
    auto err = error_of(doc.dump());
    EXPECT_EQ(err.kind, SchemaErrorKind::ExtraKey);
    EXPECT_EQ(err.key, "summary");
}

TEST(FeedbackSchema, MissingKeyReportsStrengthsFirst) {
    EXPECT_EQ(error_of("{}").key, "strengths");
    auto err = error_of(json{{"strengths", items(2)}}.dump());
    EXPECT_EQ(err.kind, SchemaErrorKind::MissingKey);
    EXPECT_EQ(err.key, "areas_for_improvement");
}

TEST(FeedbackSchema, NotParseable) {
    for (const char* doc : {"", "not json", "[1,2]", "\"text\"", "{\"strengths\": [", "null", "42"}) {
        EXPECT_EQ(error_of(doc).kind, SchemaErrorKind::NotParseable) << doc;
    }
}

TEST(FeedbackSchema, ListMustBeArray) {
    auto doc = document(2, 2);
    doc["strengths"] = "many";
    EXPECT_EQ(error_of(doc.dump()).kind, SchemaErrorKind::WrongType);
}

TEST(FeedbackSchema, ItemShapeErrorsCarryIndex) {
    auto doc = document(3, 2);
    doc["strengths"][2]["severity"] = "low";
    auto err = error_of(doc.dump());
    EXPECT_EQ(err.kind, SchemaErrorKind::BadItemShape);
    EXPECT_EQ(err.index, 2u);

    doc = document(2, 2);
    doc["areas_for_improvement"][1].erase("detail");
    err = error_of(doc.dump());
    EXPECT_EQ(err.kind, SchemaErrorKind::BadItemShape);
    EXPECT_EQ(err.key, "areas_for_improvement");
    EXPECT_EQ(err.index, 1u);

    doc = document(2, 2);
    doc["strengths"][0]["title"] = 7;
    EXPECT_EQ(error_of(doc.dump()).kind, SchemaErrorKind::BadItemShape);

    doc = document(2, 2);
    doc["strengths"][0]["title"] = "   ";
    EXPECT_EQ(error_of(doc.dump()).kind, SchemaErrorKind::BadItemShape);

    doc = document(2, 2);
    doc["strengths"][1] = "just text";
    EXPECT_EQ(error_of(doc.dump()).kind, SchemaErrorKind::BadItemShape);
}

TEST(FeedbackSchema, DetailCapCountsCodePoints) {
    auto doc = document(2, 2);
    doc["strengths"][0]["detail"] = std::string(600, 'a');
    EXPECT_TRUE(validate_feedback_document(doc.dump()).has_value());
    doc["strengths"][0]["detail"] = std::string(601, 'a');
    EXPECT_EQ(error_of(doc.dump()).kind, SchemaErrorKind::BadItemShape);

    std::string accented;
    for (int i = 0; i < 600; ++i) accented += "\xC3\xA9";  // é
    EXPECT_EQ(utf8_length(accented), 600u);
    doc["strengths"][0]["detail"] = accented;
    EXPECT_TRUE(validate_feedback_document(doc.dump()).has_value());
}

TEST(FeedbackSchema, DescribeNamesTheProblem) {
    EXPECT_NE(error_of(document(1, 2).dump()).describe().find("strengths"), std::string::npos);
    auto doc = document(2, 2);
    doc["summary"] = 1;
    EXPECT_NE(error_of(doc.dump()).describe().find("summary"), std::string::npos);
}

std::string random_text(std::mt19937_64& rng, std::size_t max_len) {
    static const std::string ascii = "abcdefghijklmnopqrstuvwxyz ABCDEFGHIJ0123456789.,;:!?'-\"\\/{}[]\t\n";
    std::uniform_int_distribution<std::size_t> len(1, max_len);
    std::uniform_int_distribution<std::size_t> pick(0, ascii.size());
    std::string s;
    const auto n = len(rng);
    for (std::size_t i = 0; i < n; ++i) {
        const auto c = pick(rng);
        s += c == ascii.size() ? std::string("\xC3\xA9") : std::string(1, ascii[c]);
    }
    return s;
}

FeedbackReport random_report(std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> count(FeedbackReport::kMinItems, FeedbackReport::kMaxItems);
    auto make = [&](std::size_t n) {
        std::vector<FeedbackItem> out;
        for (std::size_t i = 0; i < n; ++i) out.push_back({"T" + random_text(rng, 20), "D" + random_text(rng, 200)});
        return out;
    };
    FeedbackReport r;
    r.strengths = make(count(rng));
    r.areas_for_improvement = make(count(rng));
    return r;
}

TEST(FeedbackSchemaProperty, SerializeRoundTrips) {
    std::mt19937_64 rng(20250301);
    for (int trial = 0; trial < 500; ++trial) {
        const auto report = random_report(rng);
        auto first = validate_feedback_document(serialize_feedback(report));
        ASSERT_TRUE(first.has_value()) << first.error().describe();
        EXPECT_EQ(*first, report);
        auto second = validate_feedback_document(serialize_feedback(*first, 2));
        ASSERT_TRUE(second.has_value());
        EXPECT_EQ(*second, *first);
    }
}

TEST(FeedbackSchemaProperty, ValidationIsTotal) {
    std::mt19937_64 rng(7);
    const std::string valid = testing::to_document(testing::clean_feedback());
    std::uniform_int_distribution<int> op(0, 3);
    for (int trial = 0; trial < 3000; ++trial) {
        std::string doc = valid;
        const int edits = 1 + trial % 6;
        for (int e = 0; e < edits && !doc.empty(); ++e) {
            std::uniform_int_distribution<std::size_t> pos(0, doc.size() - 1);
            switch (op(rng)) {
                case 0: doc.erase(pos(rng), 1); break;
                case 1: doc.insert(pos(rng), random_text(rng, 3)); break;
                case 2: doc[pos(rng)] = static_cast<char>(rng() & 0xFF); break;
                default: doc = doc.substr(0, pos(rng)); break;
            }
        }
        FeedbackValidation result = validate_feedback_document(doc);
        if (!result.has_value()) {
            EXPECT_FALSE(result.error().describe().empty());
        } else {
            EXPECT_TRUE(validate_feedback_document(serialize_feedback(*result)).has_value());
        }
    }
    for (int trial = 0; trial < 1000; ++trial) {
        EXPECT_FALSE(validate_feedback_document(random_text(rng, 64)).has_value());
    }
}

TEST(InterviewReport, ValidateRejectsBrokenInvariants) {
    auto r = testing::frontend_interview();
    EXPECT_NO_THROW(validate(r));

    auto bad = r;
    bad.transcript.clear();
    EXPECT_THROW(validate(bad), InvalidValue);

    bad = r;
    bad.transcript[1].text = "  ";
    EXPECT_THROW(validate(bad), InvalidValue);

    bad = r;
    bad.skills[0].rating = 11;
    EXPECT_THROW(validate(bad), InvalidValue);
    bad.skills[0].rating = 0;
    EXPECT_THROW(validate(bad), InvalidValue);

    bad = r;
    bad.skills[0].skill_name = "";
    EXPECT_THROW(validate(bad), InvalidValue);

    bad = r;
    bad.interview_id = "";
    EXPECT_THROW(validate(bad), InvalidValue);
}

TEST(InterviewReport, ConsecutiveCandidateTurnsAllowed) {
    auto r = testing::frontend_interview();
    ASSERT_EQ(r.transcript[3].speaker, Speaker::Candidate);
    ASSERT_EQ(r.transcript[4].speaker, Speaker::Candidate);
    EXPECT_NO_THROW(validate(r));
}

TEST(InterviewReport, JsonRoundTrip) {
    const auto r = testing::frontend_interview("int-042");
    const auto doc = interview_to_json(r);
    EXPECT_EQ(doc.at("created_at"), "2025-03-01T12:00:00Z");
    EXPECT_EQ(doc.at("outcome"), "unsuccessful");
    EXPECT_EQ(interview_from_json(doc), r);
}

TEST(InterviewReport, JsonRejectsUnknownEnums) {
    auto doc = interview_to_json(testing::frontend_interview());
    doc["outcome"] = "maybe";
    EXPECT_THROW(interview_from_json(doc), InvalidValue);
    doc = interview_to_json(testing::frontend_interview());
    doc["transcript"][0]["speaker"] = "narrator";
    EXPECT_THROW(interview_from_json(doc), InvalidValue);
}

TEST(Timestamp, FormatParseRoundTrip) {
    const auto ts = parse_timestamp("2024-12-31T23:59:59Z");
    EXPECT_EQ(format_timestamp(ts), "2024-12-31T23:59:59Z");
    EXPECT_THROW(parse_timestamp("2024-12-31 23:59:59"), InvalidValue);
    EXPECT_THROW(parse_timestamp("2024-12-31T23:59:59+01:00"), InvalidValue);
}

TEST(PromptBundle, RequiresSystemAndUser) {
    EXPECT_NO_THROW(validate(PromptBundle{"sys", "user", {}}));
    EXPECT_THROW(validate(PromptBundle{"", "user", {}}), InvalidValue);
    EXPECT_THROW(validate(PromptBundle{"sys", " \n", {}}), InvalidValue);
}

}  // namespace
}  // namespace candor
