#pragma once

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "openrev/event.hpp"

namespace openrev::testing {

inline std::string timestamp_for(Seq seq) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "2020-01-%02uT%02u:%02u:%02uZ",
                static_cast<unsigned>(1 + (seq / 86400) % 28), static_cast<unsigned>(seq / 3600 % 24),
                static_cast<unsigned>(seq / 60 % 60), static_cast<unsigned>(seq % 60));
  return buf;
}

// Fluent construction of event logs with consecutive seqs.
class LogBuilder {
 public:
  LogBuilder& push(Payload p) {
    const Seq seq = events_.size() + 1;
    events_.push_back(Event{seq, timestamp_for(seq), std::move(p)});
    return *this;
  }

  LogBuilder& scholar(const std::string& id, std::string name = {}) {
    if (name.empty()) name = "Scholar " + id;
    return push(events::ScholarRegistered{ScholarId(id), std::move(name)});
  }

  LogBuilder& article(const std::string& id, const std::string& uri,
                      std::vector<std::string> authors, std::string digest = {}) {
    events::ArticleSubmitted e;
    e.article = ArticleId(id);
    e.uri = uri;
    for (auto& a : authors) e.authors.emplace_back(std::move(a));
    e.digest = digest.empty() ? "sha256:" + id + "-v1" : std::move(digest);
    return push(std::move(e));
  }

  LogBuilder& revise(const std::string& article, std::uint32_t version,
                     std::vector<std::string> acknowledged = {}) {
    events::ArticleRevised e;
    e.article = ArticleId(article);
    e.version = version;
    e.digest = "sha256:" + article + "-v" + std::to_string(version);
    for (auto& r : acknowledged) e.acknowledged.emplace_back(std::move(r));
    return push(std::move(e));
  }

  LogBuilder& review(const std::string& id, const std::string& article, std::uint32_t version,
                     const std::string& reviewer, std::string body = "Checked the proofs.") {
    return push(events::ReviewPosted{ReviewId(id), ArticleId(article), version,
                                     ScholarId(reviewer), std::move(body)});
  }

  LogBuilder& review_vote(const std::string& voter, const std::string& review, int sign) {
    return push(events::ReviewVoteCast{ScholarId(voter), ReviewId(review), sign});
  }

  LogBuilder& reached(const std::string& voter, const std::string& article,
                      std::uint32_t version_seen = 1) {
    return push(events::ValidityVoteCast{ScholarId(voter), ArticleId(article),
                                         ValidityChoice::ReachedStandards, std::nullopt,
                                         version_seen});
  }

  LogBuilder& needs_revisions(const std::string& voter, const std::string& article,
                              std::optional<std::string> substantiation,
                              std::uint32_t version_seen = 1) {
    std::optional<ReviewId> sub;
    if (substantiation) sub = ReviewId(*substantiation);
    return push(events::ValidityVoteCast{ScholarId(voter), ArticleId(article),
                                         ValidityChoice::NeedsRevisions, sub, version_seen});
  }

  LogBuilder& priority(const std::string& scholar, const std::string& item, bool active) {
    return push(events::PriorityToggled{ScholarId(scholar), item, active});
  }

  LogBuilder& issue(const std::string& id, const std::string& owner,
                    const std::vector<std::string>& items, std::string title = "Picks",
                    std::string editorial = "Worth reading.") {
    events::IssueReleased e;
    e.issue = IssueId(id);
    e.owner = ScholarId(owner);
    e.title = std::move(title);
    e.editorial = std::move(editorial);
    for (const auto& item : items) e.entries.push_back(CuratedEntry{item, std::nullopt});
    return push(std::move(e));
  }

  LogBuilder& subscribe(const std::string& subscriber, const std::string& journal,
                        bool active = true) {
    return push(events::SubscriptionChanged{ScholarId(subscriber), ScholarId(journal), active});
  }

  const std::vector<Event>& events() const { return events_; }
  std::vector<Event> take() { return std::move(events_); }

 private:
  std::vector<Event> events_;
};

}  // namespace openrev::testing
