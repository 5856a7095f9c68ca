#pragma once

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "openrev/event.hpp"
#include "openrev/ledger.hpp"
#include "openrev/sim/config.hpp"
#include "openrev/sim/random.hpp"

namespace openrev::sim {

/// One action an agent wants to take. Extra fields carry latent facts the
/// log does not record (an article's quality, a review's stance).
struct Intent {
  Payload payload;
  double quality = 0.0;   // ArticleSubmitted only
  bool negative = false;  // ReviewPosted only: argues the article needs revisions
};

struct SimArticle {
  ArticleId id;
  std::string uri;
  std::uint32_t author = 0;
  double quality = 0.0;
  std::uint32_t version = 1;
  std::vector<std::uint32_t> reviews;  // indices into World::reviews
  std::set<std::uint32_t> acknowledged;
  std::uint32_t priority = 0;          // active marks
};

struct SimReview {
  ReviewId id;
  std::uint32_t article = 0;
  std::uint32_t reviewer = 0;
  std::uint32_t version = 1;
  bool negative = false;
};

inline std::string padded(std::uint64_t n, int width) {
  std::string s = std::to_string(n);
  if (static_cast<int>(s.size()) < width) s.insert(0, static_cast<std::size_t>(width) - s.size(), '0');
  return s;
}

inline ScholarId agent_scholar_id(std::uint32_t index) { return ScholarId("s" + padded(index, 5)); }

/// Per-agent memory between rounds plus its private random stream.
struct AgentState {
  AgentSpec spec;
  ScholarId id;
  Rng rng;
  std::unordered_set<std::uint32_t> read;
  std::vector<std::pair<double, std::uint32_t>> candidates;  // (perceived quality, article) since last issue
  std::set<std::uint32_t> marked;
  std::set<std::uint32_t> curated;
  std::set<std::uint32_t> endorsed;  // clique articles already voted REACHED
  std::set<std::uint32_t> subscribed;
  std::uint32_t n_articles = 0;
  std::uint32_t n_reviews = 0;
  std::uint32_t n_issues = 0;
  std::uint32_t n_spam = 0;

  AgentState(const AgentSpec& s, std::uint64_t seed)
      : spec(s), id(agent_scholar_id(s.index)), rng(mix({seed, 0x4147454e54ULL, s.index})) {}
};

/// The simulator's view of the world: the protocol state plus latent facts.
struct World {
  const ScenarioConfig* config = nullptr;
  EngineState state;
  std::vector<SimArticle> articles;
  std::vector<SimReview> reviews;
  std::map<ArticleId, std::uint32_t> article_index;
  std::map<ReviewId, std::uint32_t> review_index;
  std::vector<std::vector<std::uint32_t>> clique_members;
  std::vector<std::vector<std::uint32_t>> authored;  // per agent
  std::uint32_t round = 0;

  double perceived(std::uint32_t agent, std::uint32_t article) const {
    const double noise = config->quality.perception_noise *
                         keyed_normal(mix({config->seed, 0x504552434549ULL, agent, article}));
    return std::clamp(articles[article].quality + noise, 0.0, 1.0);
  }
};

namespace detail {

inline std::string short_digest(std::uint64_t a, std::uint64_t b) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(mix({a, b})));
  return buf;
}

class RoundPlanner {
 public:
  RoundPlanner(const World& w, AgentState& a) : w_(w), a_(a), cfg_(*w.config), b_(w.config->behavior) {}

  std::vector<Intent> plan() {
    publish();
    if (a_.spec.strategy == Strategy::FreeRider) return std::move(out_);
    if (a_.spec.strategy == Strategy::Spammer) {
      if (issue_due()) spam_issue();
      return std::move(out_);
    }
    revise();
    reviews_left_ = a_.rng.count(a_.spec.activity.reviews_per_round);
    if (a_.spec.strategy == Strategy::Colluder) endorse_clique();
    for (auto article : sample_reading()) read(article);
    if (issue_due()) {
      switch (a_.spec.strategy) {
        case Strategy::Colluder: clique_issue(); break;
        case Strategy::FriendBiased: friends_issue(); break;
        default: honest_issue(); break;
      }
    }
    return std::move(out_);
  }

 private:
  std::size_t issue_size() const {
    return std::max<std::size_t>(cfg_.min_issue_size, b_.issue_size);
  }

  bool issue_due() const {
    const auto cadence = a_.spec.activity.issue_cadence;
    return (w_.round + a_.spec.index) % cadence == cadence - 1;
  }

  void publish() {
    const auto n = a_.rng.count(a_.spec.activity.articles_per_round);
    for (std::uint32_t k = 0; k < n; ++k) {
      const auto serial = a_.n_articles++;
      const std::string id = "art-" + a_.id.str() + "-" + padded(serial, 4);
      Intent in;
      in.quality = a_.rng.beta(cfg_.quality.alpha, cfg_.quality.beta);
      in.payload = events::ArticleSubmitted{ArticleId(id), "https://sim.openrev.example/articles/" + id,
                                            {a_.id}, short_digest(a_.spec.index, serial)};
      out_.push_back(std::move(in));
    }
  }

  void revise() {
    for (auto idx : w_.authored[a_.spec.index]) {
      const auto& art = w_.articles[idx];
      std::vector<ReviewId> ack;
      for (auto r : art.reviews) {
        const auto& rev = w_.reviews[r];
        if (rev.negative && rev.version == art.version && !art.acknowledged.count(r)) ack.push_back(rev.id);
      }
      if (ack.empty()) continue;
      if (!a_.rng.bernoulli(b_.revision_probability)) continue;
      std::sort(ack.begin(), ack.end());
      out_.push_back({events::ArticleRevised{art.id, art.version + 1,
                                             short_digest(idx, art.version + 1), std::move(ack)}});
      return;  // at most one revision per round
    }
  }

  std::vector<std::uint32_t> sample_reading() {
    const auto pool = static_cast<std::uint64_t>(w_.articles.size());
    const std::size_t capacity = a_.spec.activity.reading_capacity;
    if (pool == 0 || capacity == 0) return {};
    const std::size_t want = capacity * b_.candidate_factor;
    std::vector<std::uint32_t> picked;
    std::unordered_set<std::uint32_t> seen;
    for (std::size_t attempts = 4 * want; attempts > 0 && picked.size() < want; --attempts) {
      const auto i = static_cast<std::uint32_t>(a_.rng.below(pool));
      if (w_.articles[i].author == a_.spec.index || a_.read.count(i) || !seen.insert(i).second) continue;
      picked.push_back(i);
    }
    // priority first, then recency
    std::sort(picked.begin(), picked.end(), [&](std::uint32_t x, std::uint32_t y) {
      const auto px = w_.articles[x].priority, py = w_.articles[y].priority;
      return px != py ? px > py : x > y;
    });
    if (picked.size() > capacity) picked.resize(capacity);
    return picked;
  }

  ReviewId next_review_id() {
    return ReviewId("rev-" + a_.id.str() + "-" + padded(a_.n_reviews++, 5));
  }

  void read(std::uint32_t idx) {
    const auto& art = w_.articles[idx];
    const double p = w_.perceived(a_.spec.index, idx);
    const bool favourable = p >= b_.reached_cutoff;
    a_.read.insert(idx);
    a_.candidates.push_back({p, idx});

    if (p >= b_.priority_cutoff && !a_.marked.count(idx)) {
      out_.push_back({events::PriorityToggled{a_.id, art.uri, true}});
      a_.marked.insert(idx);
    }
    if (!art.reviews.empty() && a_.rng.bernoulli(b_.review_vote_probability)) {
      const auto& rev = w_.reviews[art.reviews[a_.rng.below(art.reviews.size())]];
      if (rev.reviewer != a_.spec.index) {
        out_.push_back({events::ReviewVoteCast{a_.id, rev.id, rev.negative == !favourable ? 1 : -1}});
      }
    }
    if (a_.rng.bernoulli(b_.vote_probability)) {
      if (favourable) {
        // colluders keep their REACHED votes for the clique
        if (a_.spec.strategy != Strategy::Colluder) {
          out_.push_back({events::ValidityVoteCast{a_.id, art.id, ValidityChoice::ReachedStandards,
                                                   std::nullopt, art.version}});
        }
        return;
      }
      for (auto r : art.reviews) {
        const auto& rev = w_.reviews[r];
        if (!rev.negative || rev.reviewer == a_.spec.index) continue;
        out_.push_back({events::ReviewVoteCast{a_.id, rev.id, 1}});
        out_.push_back({events::ValidityVoteCast{a_.id, art.id, ValidityChoice::NeedsRevisions,
                                                 rev.id, art.version}});
        return;
      }
      if (reviews_left_ > 0) {
        --reviews_left_;
        const auto rid = next_review_id();
        post_review(art, rid, true);
        out_.push_back({events::ValidityVoteCast{a_.id, art.id, ValidityChoice::NeedsRevisions, rid,
                                                 art.version}});
      }
      return;
    }
    if (reviews_left_ > 0 && a_.rng.bernoulli(0.5)) {
      --reviews_left_;
      post_review(art, next_review_id(), !favourable);
    }
  }

  void post_review(const SimArticle& art, const ReviewId& rid, bool negative) {
    Intent in;
    in.negative = negative;
    in.payload = events::ReviewPosted{
        rid, art.id, art.version, a_.id,
        negative ? "The argument has gaps that need to be addressed before it can be relied on."
                 : "The claims are supported by the evidence presented."};
    out_.push_back(std::move(in));
  }

  void endorse_clique() {
    for (auto peer : w_.clique_members[*a_.spec.clique]) {
      if (peer == a_.spec.index) continue;
      for (auto idx : w_.authored[peer]) {
        if (!a_.endorsed.insert(idx).second) continue;
        const auto& art = w_.articles[idx];
        out_.push_back({events::ValidityVoteCast{a_.id, art.id, ValidityChoice::ReachedStandards,
                                                 std::nullopt, art.version}});
      }
    }
  }

  std::vector<std::pair<double, std::uint32_t>> ranked_candidates() const {
    auto ranked = a_.candidates;
    std::sort(ranked.begin(), ranked.end(), [](const auto& x, const auto& y) {
      return x.first != y.first ? x.first > y.first : x.second < y.second;
    });
    return ranked;
  }

  void release(const std::vector<std::uint32_t>& entries_idx, std::vector<std::string> extra = {}) {
    events::IssueReleased issue;
    issue.issue = IssueId("iss-" + a_.id.str() + "-" + padded(a_.n_issues++, 4));
    issue.owner = a_.id;
    issue.title = "Reading notes " + std::to_string(a_.n_issues);
    issue.editorial = "Articles from the last rounds that are worth a closer look.";
    for (auto idx : entries_idx) {
      CuratedEntry e{w_.articles[idx].uri, std::nullopt};
      if (issue.entries.empty()) e.comment = "Start here.";
      issue.entries.push_back(std::move(e));
    }
    for (auto& item : extra) issue.entries.push_back({std::move(item), std::nullopt});
    out_.push_back({std::move(issue)});
    for (auto idx : entries_idx) {
      a_.curated.insert(idx);
      if (a_.marked.erase(idx)) {
        out_.push_back({events::PriorityToggled{a_.id, w_.articles[idx].uri, false}});
      }
      const auto author = w_.articles[idx].author;
      if (author != a_.spec.index && !a_.subscribed.count(author) &&
          a_.rng.bernoulli(b_.subscribe_probability)) {
        a_.subscribed.insert(author);
        out_.push_back({events::SubscriptionChanged{a_.id, agent_scholar_id(author), true}});
      }
    }
    a_.candidates.clear();
  }

  void honest_issue() {
    std::vector<std::uint32_t> chosen;
    for (const auto& [p, idx] : ranked_candidates()) {
      if (chosen.size() >= issue_size()) break;
      if (!a_.curated.count(idx)) chosen.push_back(idx);
    }
    if (chosen.size() >= cfg_.min_issue_size) release(chosen);
  }

  void clique_issue() {
    std::vector<std::uint32_t> chosen;
    for (auto peer : w_.clique_members[*a_.spec.clique]) {
      if (peer == a_.spec.index || w_.authored[peer].empty()) continue;
      const auto& mine = w_.authored[peer];
      auto it = std::find_if(mine.rbegin(), mine.rend(), [&](auto i) { return !a_.curated.count(i); });
      chosen.push_back(it != mine.rend() ? *it : mine.back());
    }
    for (const auto& [p, idx] : ranked_candidates()) {
      if (chosen.size() >= cfg_.min_issue_size) break;
      if (std::find(chosen.begin(), chosen.end(), idx) == chosen.end()) chosen.push_back(idx);
    }
    if (chosen.size() >= cfg_.min_issue_size) release(chosen);
  }

  void friends_issue() {
    std::vector<std::uint32_t> chosen;
    for (auto f : a_.spec.friends) {
      const auto& theirs = w_.authored[f];
      for (auto it = theirs.rbegin(); it != theirs.rend() && chosen.size() < issue_size(); ++it) {
        if (!a_.curated.count(*it)) chosen.push_back(*it);
      }
    }
    if (chosen.size() >= cfg_.min_issue_size) release(chosen);
  }

  void spam_issue() {
    const std::size_t size = std::max<std::size_t>(cfg_.min_issue_size, b_.spam_issue_size);
    std::vector<std::uint32_t> chosen;
    std::vector<std::string> external;
    std::set<std::uint32_t> used;
    for (std::size_t k = 0; k < size; ++k) {
      if (w_.articles.empty() || a_.rng.bernoulli(b_.spam_external_share)) {
        external.push_back("https://spam.openrev.example/item/" + a_.id.str() + "/" +
                           std::to_string(a_.n_spam++));
        continue;
      }
      const auto idx = static_cast<std::uint32_t>(a_.rng.below(w_.articles.size()));
      if (used.insert(idx).second) chosen.push_back(idx);
    }
    if (chosen.size() + external.size() >= cfg_.min_issue_size) release(chosen, std::move(external));
  }

  const World& w_;
  AgentState& a_;
  const ScenarioConfig& cfg_;
  const Behavior& b_;
  std::uint32_t reviews_left_ = 0;
  std::vector<Intent> out_;
};

}  // namespace detail

/// Actions `agent` intends to take this round, in the order they should be
/// appended. Reads the world but never modifies it; invalid intentions are
/// filtered out later by the ledger.
inline std::vector<Intent> agent_round(const World& world, AgentState& agent) {
  return detail::RoundPlanner(world, agent).plan();
}

}  // namespace openrev::sim
