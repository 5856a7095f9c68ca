#include <gtest/gtest.h>

#include "fuzz.hpp"
#include "log_builder.hpp"
#include "openrev/metrics.hpp"
#include "openrev/report.hpp"
#include "oracle.hpp"
#include "test_util.hpp"

using namespace openrev;
using openrev::testing::LogBuilder;
using openrev::testing::uri;

TEST(Fraction, RoundsHalfToEven) {
  EXPECT_EQ((Fraction{1, 3}).to_decimal(4), "0.3333");
  EXPECT_EQ((Fraction{2, 3}).to_decimal(4), "0.6667");
  EXPECT_EQ((Fraction{1, 1}).to_decimal(4), "1.0000");
  EXPECT_EQ((Fraction{0, 7}).to_decimal(4), "0.0000");
  // Exact ties at the fifth place: 1/32 = 0.03125, 3/32 = 0.09375.
  EXPECT_EQ((Fraction{1, 32}).to_decimal(4), "0.0312");
  EXPECT_EQ((Fraction{3, 32}).to_decimal(4), "0.0938");
  EXPECT_EQ((Fraction{1, 2}).to_decimal(0), "0");
  EXPECT_EQ((Fraction{3, 2}).to_decimal(0), "2");
  EXPECT_EQ((Fraction{1, 2}), (Fraction{2, 4}));
}

TEST(Importance, OneCuratorThreeIssuesCountsOnce) {
  LogBuilder b;
  b.scholar("author").scholar("fan");
  b.article("art-1", "https://papers.example.org/1", {"author"});
  for (int i = 1; i <= 3; ++i) {
    const auto n = std::to_string(i);
    b.issue("iss-" + n, "fan",
            {"https://papers.example.org/1", "https://x.org/" + n + "a", "https://x.org/" + n + "b",
             "https://x.org/" + n + "c"});
  }
  auto st = openrev::testing::replay_ok(b.events());
  auto imp = importance(st, uri("https://papers.example.org/1"));
  EXPECT_EQ(imp.count, 1u);
  EXPECT_EQ(imp.curators, (std::set<ScholarId>{ScholarId("fan")}));
  EXPECT_EQ(st.curations.at(uri("https://papers.example.org/1")).at(ScholarId("fan")).size(), 3u);
}

TEST(Importance, SpellingVariantsShareOneCount) {
  LogBuilder b;
  b.scholar("p").scholar("q");
  b.issue("iss-1", "p", {"https://X.org/a/", "https://x.org/b", "https://x.org/c", "https://x.org/d"});
  b.issue("iss-2", "q", {"HTTPS://x.org:443/a", "https://x.org/e", "https://x.org/f", "https://x.org/g"});
  auto st = openrev::testing::replay_ok(b.events());
  EXPECT_EQ(importance(st, uri("https://x.org/a")).count, 2u);
  EXPECT_EQ(importance(st, uri("https://x.org/zzz")).count, 0u);
}

TEST(Importance, AuthorsAndCoauthorsAreExcluded) {
  LogBuilder b;
  b.scholar("a1").scholar("a2").scholar("other");
  b.article("art-1", "https://papers.example.org/1", {"a1", "a2"});
  const std::vector<std::string> items{"https://papers.example.org/1", "https://x.org/1",
                                       "https://x.org/2", "https://x.org/3"};
  b.issue("iss-1", "a1", items).issue("iss-2", "a2", items).issue("iss-3", "other", items);
  auto st = openrev::testing::replay_ok(b.events());
  EXPECT_EQ(importance(st, uri("https://papers.example.org/1")).count, 1u);
  // Not hosted, so nobody is excluded.
  EXPECT_EQ(importance(st, uri("https://x.org/1")).count, 3u);
}

TEST(Importance, CliqueYieldsSizeMinusOne) {
  for (int c : {3, 5, 8}) {
    const auto log = openrev::testing::load_fixture("clique" + std::to_string(c) + ".jsonl");
    auto st = openrev::testing::replay_ok(log);
    ASSERT_FALSE(st.articles.empty());
    for (const auto& [id, art] : st.articles) {
      const auto got = importance(st, art.canonical_uri).count;
      EXPECT_EQ(got, static_cast<std::size_t>(c - 1)) << id.str();
      EXPECT_EQ(got, oracle::importance(log, art.canonical_uri.str())) << id.str();
    }
  }
}

TEST(Validity, UnvotedArticleHasNoFraction) {
  auto st = openrev::testing::fixture_state("golden.jsonl");
  auto t = *validity_tally(st, ArticleId("art-3"));
  EXPECT_EQ(t.voter_count, 0u);
  EXPECT_FALSE(t.fraction);
  EXPECT_FALSE(validity_tally(st, ArticleId("art-404")));
}

TEST(Validity, GoldenValuesAndPerVersionSplit) {
  auto st = openrev::testing::fixture_state("golden.jsonl");
  auto t = *validity_tally(st, ArticleId("art-1"));
  EXPECT_EQ(t.voter_count, 4u);
  EXPECT_EQ(t.validated_count, 3u);
  EXPECT_EQ(t.fraction->to_decimal(4), "0.7500");
  ASSERT_EQ(t.per_version.size(), 2u);
  EXPECT_EQ(t.per_version.at(1), (VersionTally{1, 0}));
  EXPECT_EQ(t.per_version.at(3), (VersionTally{3, 3}));
}

TEST(Priority, CountsActiveMarksOnly) {
  auto st = openrev::testing::fixture_state("golden.jsonl");
  EXPECT_EQ(priority(st, uri("https://journal.example.org/papers/2")).count, 1u);
  EXPECT_EQ(priority(st, uri("https://journal.example.org/papers/3")).count, 1u);
  EXPECT_EQ(priority(st, uri("https://journal.example.org/papers/1")).count, 0u);
}

TEST(ReviewScore, GoldenValues) {
  auto st = openrev::testing::fixture_state("golden.jsonl");
  EXPECT_EQ(*review_score(st, ReviewId("rev-1")), (ReviewScore{ReviewId("rev-1"), 1, 1}));
  EXPECT_EQ(*review_score(st, ReviewId("rev-2")), (ReviewScore{ReviewId("rev-2"), 1, 0}));
  EXPECT_EQ(*review_score(st, ReviewId("rev-3")), (ReviewScore{ReviewId("rev-3"), 0, 0}));
  EXPECT_FALSE(review_score(st, ReviewId("rev-404")));
}

TEST(Report, GoldenMetricsMatchOracle) {
  const auto log = openrev::testing::load_fixture("golden.jsonl");
  auto st = openrev::testing::replay_ok(log);
  const auto records = all_item_metrics(st);
  const auto items = oracle::all_items(log);
  ASSERT_EQ(records.size(), items.size());
  for (const auto& r : records) {
    EXPECT_TRUE(items.count(r.uri.str()));
    EXPECT_EQ(r.importance, oracle::importance(log, r.uri.str())) << r.uri.str();
    EXPECT_EQ(r.priority, oracle::priority(log, r.uri.str())) << r.uri.str();
    if (r.article) {
      const auto t = oracle::validity(log, r.article->str());
      EXPECT_EQ(r.validity.voter_count, t.voters);
      EXPECT_EQ(r.validity.validated_count, t.validated);
    }
  }
}

TEST(Report, JsonAndCsvCarryTheSameValues) {
  auto st = openrev::testing::fixture_state("golden.jsonl");
  const auto records = all_item_metrics(st);
  const auto j = metrics_json(records);
  std::istringstream csv(metrics_csv(records));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "uri,validity_n,validity_validated,validity_fraction,importance,priority");
  std::size_t i = 0;
  while (std::getline(csv, line)) {
    ASSERT_LT(i, j.size());
    const auto& rec = j[i++];
    std::vector<std::string> cols;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cols.push_back(c);
    if (line.back() == ',') cols.emplace_back();
    ASSERT_EQ(cols.size(), 6u) << line;
    EXPECT_EQ(cols[0], rec["uri"].get<std::string>());
    EXPECT_EQ(cols[1], std::to_string(rec["validity"]["n"].get<int>()));
    EXPECT_EQ(cols[2], std::to_string(rec["validity"]["validated"].get<int>()));
    if (rec["validity"]["fraction"].is_null()) {
      EXPECT_EQ(cols[3], "");
    } else {
      EXPECT_DOUBLE_EQ(std::stod(cols[3]), rec["validity"]["fraction"].get<double>());
    }
    EXPECT_EQ(cols[4], std::to_string(rec["importance"].get<int>()));
    EXPECT_EQ(cols[5], std::to_string(rec["priority"].get<int>()));
  }
  EXPECT_EQ(i, j.size());
}

TEST(Report, CsvQuotesAwkwardFields) {
  EXPECT_EQ(openrev::detail::csv_field("plain"), "plain");
  EXPECT_EQ(openrev::detail::csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(openrev::detail::csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
}

TEST(OracleEquivalence, SmallFuzzedLogs) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    openrev::testing::LogFuzzer fuzz(seed, {120, 6, 4});
    const auto log = fuzz.generate();
    const auto& st = fuzz.state();
    for (const auto& item : oracle::all_items(log)) {
      EXPECT_EQ(importance(st, uri(item)).count, oracle::importance(log, item)) << seed << " " << item;
      EXPECT_EQ(priority(st, uri(item)).count, oracle::priority(log, item)) << seed << " " << item;
    }
    for (const auto& [id, art] : st.articles) {
      const auto t = *validity_tally(st, id);
      const auto o = oracle::validity(log, id.str());
      EXPECT_EQ(t.voter_count, o.voters);
      EXPECT_EQ(t.validated_count, o.validated);
      for (std::uint32_t v = 1; v <= art.latest_version(); ++v) {
        std::set<std::string> got;
        const auto ack = acknowledged_reviewers(st, id, v);
        for (const auto& s : ack->reviewers) got.insert(s.str());
        EXPECT_EQ(got, oracle::acknowledged_reviewers(log, id.str(), v));
      }
    }
    for (const auto& [id, r] : st.reviews) {
      const auto s = *review_score(st, id);
      const auto o = oracle::review_score(log, id.str());
      EXPECT_EQ(s.up, o.up);
      EXPECT_EQ(s.down, o.down);
    }
  }
}
