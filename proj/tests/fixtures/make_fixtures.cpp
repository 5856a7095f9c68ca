// Writes the fixture logs into the directory given as argv[1]. The committed
// files are the frozen output of one run; tests read the files, not this.

#include <fstream>
#include <iostream>
#include <string>

#include "log_builder.hpp"
#include "openrev/codec.hpp"

using openrev::testing::LogBuilder;

namespace {

const std::string kJournal = "https://journal.example.org/papers/";

LogBuilder golden() {
  LogBuilder b;
  for (const char* s : {"alice", "bob", "carol", "dave", "erin"}) b.scholar(s);
  b.article("art-1", "https://Journal.Example.org:443/papers/1/", {"alice"})
      .article("art-2", kJournal + "2", {"bob", "carol"})
      .review("rev-1", "art-1", 1, "bob", "Lemma 2 needs a tighter bound.")
      .review("rev-2", "art-1", 1, "carol", "The dataset section is unclear.")
      .review_vote("dave", "rev-1", 1)
      .review_vote("erin", "rev-2", -1)
      .review_vote("erin", "rev-2", 1)
      .needs_revisions("bob", "art-1", "rev-1")
      .needs_revisions("dave", "art-1", "rev-1")
      .revise("art-1", 2, {"rev-1"})
      .review("rev-3", "art-1", 2, "erin", "Better; figure 3 still mislabeled.")
      .revise("art-1", 3, {"rev-2", "rev-3"})
      .reached("erin", "art-1", 3)
      .reached("bob", "art-1", 3)
      .reached("alice", "art-2")
      .priority("dave", kJournal + "2/", true)
      .priority("erin", "HTTPS://JOURNAL.EXAMPLE.ORG/papers/2", true)
      .priority("dave", kJournal + "2", false);
  openrev::events::IssueReleased first;
  first.issue = openrev::IssueId("iss-1");
  first.owner = openrev::ScholarId("dave");
  first.title = "Spring reading";
  first.editorial = "Two solid papers and three pointers.";
  first.entries = {{kJournal + "1", std::string("Careful revision history.")},
                   {kJournal + "2", std::nullopt},
                   {"https://arxiv.org/abs/2101.00001", std::nullopt},
                   {"urn:doi:10.1000/182", std::string("Classic.")},
                   {"https://blog.example.com/post", std::nullopt}};
  b.push(first)
      .issue("iss-2", "alice",
             {kJournal + "1", kJournal + "2", "https://arxiv.org/abs/2101.00001",
              "https://example.com/a"})
      .issue("iss-3", "dave",
             {"https://JOURNAL.example.org/papers/1/", "https://example.com/x",
              "https://example.com/y", "https://example.com/z"})
      .subscribe("erin", "dave")
      .subscribe("bob", "dave")
      .subscribe("bob", "dave", false)
      .article("art-3", kJournal + "3", {"erin"})
      .review("rev-4", "art-2", 1, "dave", "Proof of theorem 1 is incomplete.")
      .review_vote("alice", "rev-4", 1)
      .review_vote("erin", "rev-4", 1)
      .needs_revisions("erin", "art-2", "rev-4")
      .issue("iss-4", "carol",
             {kJournal + "1", kJournal + "3", "https://arxiv.org/abs/2101.00001",
              "urn:doi:10.1000/182"})
      .priority("carol", kJournal + "3", true)
      .scholar("frank")
      .subscribe("frank", "carol")
      .review_vote("frank", "rev-1", -1)
      .reached("frank", "art-1", 3);
  return b;
}

// Same as golden except seq 7 releases an issue with too few entries.
std::vector<openrev::Event> corrupt_seq7() {
  auto log = golden().take();
  LogBuilder bad;
  bad.issue("iss-short", "alice", {kJournal + "9", "https://example.com/p", "https://example.com/q"});
  log[6].payload = bad.events().front().payload;
  return log;
}

std::string art(const std::string& author, int i) { return "art-" + author + "-" + std::to_string(i); }
std::string art_uri(const std::string& author, int i) {
  return "https://papers.example.org/" + art(author, i);
}

LogBuilder dyad(bool diluted) {
  LogBuilder b;
  b.scholar("ana").scholar("ben");
  for (int i = 1; i <= 4; ++i) b.article(art("ana", i), art_uri("ana", i), {"ana"});
  for (int i = 1; i <= 4; ++i) b.article(art("ben", i), art_uri("ben", i), {"ben"});
  if (!diluted) {
    b.issue("iss-ana-1", "ana", {art_uri("ben", 1), art_uri("ben", 2), art_uri("ben", 3), art_uri("ben", 4)});
    b.issue("iss-ben-1", "ben", {art_uri("ana", 1), art_uri("ana", 2), art_uri("ana", 3), art_uri("ana", 4)});
    return b;
  }
  std::vector<std::string> ana_items{art_uri("ben", 1)};
  std::vector<std::string> ben_items{art_uri("ana", 1)};
  for (int i = 1; i <= 10; ++i) {
    ana_items.push_back("https://unrelated.example.com/ana/" + std::to_string(i));
    ben_items.push_back("https://unrelated.example.com/ben/" + std::to_string(i));
  }
  b.issue("iss-ana-1", "ana", ana_items).issue("iss-ben-1", "ben", ben_items);
  return b;
}

// c members, each authoring ceil(4/c) articles and releasing one issue that
// curates every clique article (own included).
LogBuilder clique(int c) {
  LogBuilder b;
  const int per = (4 + c - 1) / c;
  std::vector<std::string> items;
  for (int m = 1; m <= c; ++m) b.scholar("m" + std::to_string(m));
  for (int m = 1; m <= c; ++m) {
    for (int i = 1; i <= per; ++i) {
      const auto who = "m" + std::to_string(m);
      b.article(art(who, i), art_uri(who, i), {who});
      items.push_back(art_uri(who, i));
    }
  }
  for (int m = 1; m <= c; ++m) b.issue("iss-m" + std::to_string(m), "m" + std::to_string(m), items);
  return b;
}

// Two disjoint triangles; each member curates the other two members' papers.
LogBuilder twin_triangles() {
  LogBuilder b;
  const std::vector<std::vector<std::string>> groups{{"t1", "t2", "t3"}, {"u1", "u2", "u3"}};
  for (const auto& g : groups) {
    for (const auto& s : g) b.scholar(s);
  }
  for (const auto& g : groups) {
    for (const auto& s : g) {
      b.article(art(s, 1), art_uri(s, 1), {s}).article(art(s, 2), art_uri(s, 2), {s});
    }
  }
  for (const auto& g : groups) {
    for (const auto& s : g) {
      std::vector<std::string> items;
      for (const auto& other : g) {
        if (other == s) continue;
        items.push_back(art_uri(other, 1));
        items.push_back(art_uri(other, 2));
      }
      b.issue("iss-" + s, s, items);
    }
  }
  return b;
}

bool write(const std::string& dir, const std::string& name, const std::vector<openrev::Event>& log) {
  std::ofstream out(dir + "/" + name, std::ios::binary);
  out << openrev::save_log(log);
  return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixtures <dir>\n";
    return 2;
  }
  const std::string dir = argv[1];
  bool ok = write(dir, "golden.jsonl", golden().take());
  ok &= write(dir, "corrupt_seq7.jsonl", corrupt_seq7());
  ok &= write(dir, "dyad.jsonl", dyad(false).take());
  ok &= write(dir, "diluted_dyad.jsonl", dyad(true).take());
  ok &= write(dir, "clique3.jsonl", clique(3).take());
  ok &= write(dir, "clique5.jsonl", clique(5).take());
  ok &= write(dir, "clique8.jsonl", clique(8).take());
  ok &= write(dir, "twin_triangles.jsonl", twin_triangles().take());
  return ok ? 0 : 1;
}
