#include <gtest/gtest.h>

#include "fuzz.hpp"
#include "log_builder.hpp"
#include "openrev/digest.hpp"
#include "openrev/ledger.hpp"
#include "test_util.hpp"

using namespace openrev;
using openrev::testing::LogBuilder;

TEST(Apply, RejectsOutOfOrderSeq) {
  EngineState st;
  LogBuilder b;
  b.scholar("a").scholar("b");
  auto second = b.events()[1];
  auto v = apply(st, second);
  ASSERT_TRUE(v);
  EXPECT_EQ(v->rule, Rule::SequenceGap);
  EXPECT_EQ(st.last_seq, 0u);
}

TEST(Apply, RejectedEventLeavesStateUntouched) {
  auto st = openrev::testing::fixture_state("golden.jsonl");
  const auto before = digest(st);
  // Valid owner and title, but the fourth entry repeats the first.
  LogBuilder b;
  b.issue("iss-9", "erin",
          {"https://new.example/1", "https://new.example/2", "https://new.example/3",
           "https://NEW.example/1/"});
  Event e = b.events().front();
  e.seq = st.last_seq + 1;
  auto v = apply(st, e);
  ASSERT_TRUE(v);
  EXPECT_EQ(v->rule, Rule::DuplicateEntry);
  EXPECT_EQ(digest(st), before);
  EXPECT_EQ(st.curations.count(openrev::testing::uri("https://new.example/1")), 0u);
}

TEST(Append, ReturnsSuccessorAndKeepsInput) {
  EngineState empty;
  LogBuilder b;
  b.scholar("a");
  auto next = append(empty, b.events().front());
  ASSERT_TRUE(next);
  EXPECT_EQ(next->scholars.size(), 1u);
  EXPECT_TRUE(empty.scholars.empty());
  EXPECT_EQ(empty.last_seq, 0u);
}

TEST(Replay, ReportsFirstViolationPosition) {
  auto log = openrev::testing::load_fixture("corrupt_seq7.jsonl");
  auto st = replay(log);
  ASSERT_FALSE(st);
  EXPECT_EQ(st.error().seq, 7u);
  EXPECT_EQ(st.error().violation.rule, Rule::TooFewEntries);
}

TEST(Replay, EmptyLogGivesEmptyState) {
  auto st = replay({});
  ASSERT_TRUE(st);
  EXPECT_EQ(st->last_seq, 0u);
  EXPECT_TRUE(st->scholars.empty());
}

TEST(Replay, StepsOverSkippedSeqsOnly) {
  LogBuilder b;
  b.scholar("a").scholar("b").scholar("c");
  auto log = b.take();
  std::vector<Event> holey{log[0], log[2]};
  EXPECT_FALSE(replay(holey));
  const std::vector<Seq> skipped{2};
  auto st = replay(holey, {}, skipped);
  ASSERT_TRUE(st);
  EXPECT_EQ(st->last_seq, 3u);
  EXPECT_EQ(st->scholars.size(), 2u);
}

TEST(Replay, RegistrationOpensAJournal) {
  auto st = openrev::testing::fixture_state("golden.jsonl");
  EXPECT_EQ(st.journals.size(), st.scholars.size());
  const auto& dave = st.journals.at(ScholarId("dave"));
  EXPECT_EQ(dave.issues, (std::vector<IssueId>{IssueId("iss-1"), IssueId("iss-3")}));
  EXPECT_EQ(dave.subscribers, (std::set<ScholarId>{ScholarId("erin")}));
}

TEST(Replay, IndexesMatchPrimaryMaps) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    openrev::testing::LogFuzzer fuzz(seed);
    auto st = openrev::testing::replay_ok(fuzz.generate());
    std::size_t indexed_reviews = 0;
    for (const auto& [article, reviews] : st.reviews_by_article) {
      for (const auto& r : reviews) EXPECT_EQ(st.reviews.at(r).article, article);
      indexed_reviews += reviews.size();
    }
    EXPECT_EQ(indexed_reviews, st.reviews.size());
    EXPECT_EQ(st.article_by_uri.size(), st.articles.size());
    for (const auto& [uri, id] : st.article_by_uri) EXPECT_EQ(st.articles.at(id).canonical_uri, uri);
    for (const auto& [uri, curators] : st.curations) {
      for (const auto& [curator, issues] : curators) {
        for (const auto& i : issues) EXPECT_EQ(st.issues.at(i).journal_owner, curator);
      }
    }
  }
}

TEST(Digest, GoldenFixturesAreFrozen) {
  const std::map<std::string, std::string> frozen{
      {"golden.jsonl", "sha256:ec6e7dffb435f0074377feb2ec7dd4b24f589942982a696be947e952855b79d9"},
      {"dyad.jsonl", "sha256:3a5d4e66206ea1de822880be85d906aa957bdc750e7d6867ab2aaf3c183af9fc"},
      {"clique5.jsonl", "sha256:99009b667b55a5af8238c86192273515ef24439e2d7e888b31786121a33b0480"},
      {"twin_triangles.jsonl",
       "sha256:80fc47ad859cb6f7861cc64f98b49571233decb1868af6cb2696da12711e1dfe"},
  };
  for (const auto& [name, hex] : frozen) {
    EXPECT_EQ(digest(openrev::testing::fixture_state(name)).hex, hex) << name;
  }
}

TEST(Digest, EmptyStateIsStable) {
  EXPECT_EQ(digest(EngineState{}), digest(EngineState{}));
  EXPECT_EQ(digest(EngineState{}).hex.rfind("sha256:", 0), 0u);
  EXPECT_EQ(digest(EngineState{}).hex.size(), 7u + 64u);
}

TEST(Digest, SensitiveToEveryPrefix) {
  auto log = openrev::testing::load_fixture("golden.jsonl");
  std::set<std::string> seen;
  EngineState st;
  seen.insert(digest(st).hex);
  for (const auto& e : log) {
    ASSERT_FALSE(apply(st, e));
    EXPECT_TRUE(seen.insert(digest(st).hex).second) << "seq " << e.seq;
  }
}

TEST(Digest, KnownSha256Vector) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
