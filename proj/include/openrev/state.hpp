#pragma once

#include <map>
#include <set>
#include <utility>
#include <vector>

#include "openrev/model.hpp"

namespace openrev {

/// Aggregate derived from the event log. Every container is ordered by
/// identifier so iteration order is canonical.
///
/// The `*_by_*` and `curations` members are indexes over the primary maps;
/// they are maintained by the ledger and excluded from the digest.
struct EngineState {
  ProtocolConfig config;
  Seq last_seq = 0;

  std::map<ScholarId, Scholar> scholars;
  std::map<ScholarId, SelfJournal> journals;
  std::map<ArticleId, Article> articles;
  std::map<ReviewId, Review> reviews;
  // Current (latest) votes only.
  std::map<std::pair<ReviewId, ScholarId>, ReviewVote> review_votes;
  std::map<std::pair<ArticleId, ScholarId>, ValidityVote> validity_votes;
  std::map<std::pair<ItemUri, ScholarId>, PriorityMark> priority_marks;
  std::map<IssueId, Issue> issues;

  std::map<ItemUri, ArticleId> article_by_uri;
  std::map<ArticleId, std::vector<ReviewId>> reviews_by_article;
  // item -> curator -> issues that include it (authors included).
  std::map<ItemUri, std::map<ScholarId, std::vector<IssueId>>> curations;

  bool has_scholar(const ScholarId& s) const { return scholars.count(s) != 0; }

  const Article* find_article(const ArticleId& a) const {
    auto it = articles.find(a);
    return it == articles.end() ? nullptr : &it->second;
  }
  const Article* find_article(const ItemUri& uri) const {
    auto it = article_by_uri.find(uri);
    return it == article_by_uri.end() ? nullptr : find_article(it->second);
  }
  const Review* find_review(const ReviewId& r) const {
    auto it = reviews.find(r);
    return it == reviews.end() ? nullptr : &it->second;
  }
  const ReviewVote* find_review_vote(const ReviewId& r, const ScholarId& voter) const {
    auto it = review_votes.find({r, voter});
    return it == review_votes.end() ? nullptr : &it->second;
  }
  const ValidityVote* find_validity_vote(const ArticleId& a, const ScholarId& voter) const {
    auto it = validity_votes.find({a, voter});
    return it == validity_votes.end() ? nullptr : &it->second;
  }
  const PriorityMark* find_priority_mark(const ItemUri& item, const ScholarId& s) const {
    auto it = priority_marks.find({item, s});
    return it == priority_marks.end() ? nullptr : &it->second;
  }
};

/// Visits the entries of a map keyed by (K, ScholarId) whose first component
/// equals `key`.
template <typename K, typename V, typename F>
void for_each_with_prefix(const std::map<std::pair<K, ScholarId>, V>& m, const K& key, F&& f) {
  for (auto it = m.lower_bound({key, ScholarId{}}); it != m.end() && it->first.first == key; ++it) {
    f(it->second);
  }
}

}  // namespace openrev
