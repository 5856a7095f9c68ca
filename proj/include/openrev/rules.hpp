#pragma once

#include <set>
#include <string>

#include "openrev/model.hpp"
#include "openrev/state.hpp"

// Per-action protocol checks. Each is a pure function of (state, candidate)
// returning the first broken rule, or nothing when the action is admissible.
namespace openrev {

inline Violation check_registration(const EngineState& state, const Scholar& scholar) {
  if (scholar.id.empty()) return violation(Rule::UnknownScholar, "empty scholar id");
  if (state.has_scholar(scholar.id)) {
    return violation(Rule::DuplicateScholar, scholar.id.str());
  }
  if (scholar.display_name.empty()) return violation(Rule::EmptyDisplayName, scholar.id.str());
  return std::nullopt;
}

inline Violation check_submission(const EngineState& state, const Article& article) {
  if (article.id.empty() || state.articles.count(article.id)) {
    return violation(Rule::DuplicateArticle, article.id.str());
  }
  if (article.authors.empty()) return violation(Rule::NoAuthors, article.id.str());
  for (const auto& a : article.authors) {
    if (!state.has_scholar(a)) return violation(Rule::UnknownScholar, a.str());
  }
  if (state.article_by_uri.count(article.canonical_uri)) {
    return violation(Rule::DuplicateUri, article.canonical_uri.str());
  }
  return std::nullopt;
}

inline Violation check_revision(const EngineState& state, const ArticleId& article_id,
                                const ArticleVersion& version) {
  const Article* article = state.find_article(article_id);
  if (!article) return violation(Rule::UnknownArticle, article_id.str());
  if (version.number != article->latest_version() + 1) {
    return violation(Rule::NonConsecutiveVersion,
                     "expected version " + std::to_string(article->latest_version() + 1) +
                         ", got " + std::to_string(version.number));
  }
  for (const auto& rid : version.acknowledged_reviews) {
    const Review* review = state.find_review(rid);
    if (!review) return violation(Rule::UnknownReview, rid.str());
    if (review->article != article_id || review->target_version >= version.number) {
      return violation(Rule::ForeignReviewAcknowledged, rid.str());
    }
  }
  return std::nullopt;
}

inline Violation check_review(const EngineState& state, const Review& review) {
  if (review.id.empty() || state.reviews.count(review.id)) {
    return violation(Rule::DuplicateReview, review.id.str());
  }
  if (!state.has_scholar(review.reviewer)) {
    return violation(Rule::UnknownScholar, review.reviewer.str());
  }
  const Article* article = state.find_article(review.article);
  if (!article) return violation(Rule::UnknownArticle, review.article.str());
  if (article->is_author(review.reviewer)) {
    return violation(Rule::AuthorSelfReview, review.reviewer.str());
  }
  if (review.target_version == 0 || review.target_version > article->latest_version()) {
    return violation(Rule::UnknownVersion, std::to_string(review.target_version));
  }
  if (review.body.empty()) return violation(Rule::EmptyBody, review.id.str());
  return std::nullopt;
}

inline Violation check_review_vote(const EngineState& state, const ReviewVote& vote) {
  if (!state.has_scholar(vote.voter)) return violation(Rule::UnknownScholar, vote.voter.str());
  const Review* review = state.find_review(vote.review);
  if (!review) return violation(Rule::UnknownReview, vote.review.str());
  if (review->reviewer == vote.voter) return violation(Rule::SelfReviewVote, vote.voter.str());
  if (vote.sign != 1 && vote.sign != -1) {
    return violation(Rule::InvalidSign, std::to_string(vote.sign));
  }
  return std::nullopt;
}

/// A NEEDS_REVISIONS vote must cite a review of the same article that the
/// voter wrote or currently up-votes. The chain is checked only here, at cast
/// time.
inline Violation check_validity_vote(const EngineState& state, const ValidityVote& vote) {
  if (!state.has_scholar(vote.voter)) return violation(Rule::UnknownScholar, vote.voter.str());
  const Article* article = state.find_article(vote.article);
  if (!article) return violation(Rule::UnknownArticle, vote.article.str());
  if (article->is_author(vote.voter)) return violation(Rule::AuthorSelfVote, vote.voter.str());
  if (vote.version_seen == 0 || vote.version_seen > article->latest_version()) {
    return violation(Rule::UnknownVersion, std::to_string(vote.version_seen));
  }
  if (vote.choice == ValidityChoice::ReachedStandards) {
    if (vote.substantiation) {
      return violation(Rule::SuperfluousSubstantiation, vote.substantiation->str());
    }
    return std::nullopt;
  }
  if (!vote.substantiation) return violation(Rule::MissingSubstantiation, vote.voter.str());
  const Review* review = state.find_review(*vote.substantiation);
  if (!review) {
    return violation(Rule::InvalidSubstantiation, "unknown review " + vote.substantiation->str());
  }
  if (review->article != vote.article) {
    return violation(Rule::InvalidSubstantiation,
                     "review " + review->id.str() + " is about another article");
  }
  if (review->reviewer == vote.voter) return std::nullopt;
  const ReviewVote* rv = state.find_review_vote(review->id, vote.voter);
  if (rv && rv->sign == 1) return std::nullopt;
  return violation(Rule::InvalidSubstantiation,
                   "review " + review->id.str() + " neither written nor up-voted by voter");
}

inline Violation check_priority_toggle(const EngineState& state, const PriorityMark& mark) {
  if (!state.has_scholar(mark.scholar)) return violation(Rule::UnknownScholar, mark.scholar.str());
  const PriorityMark* current = state.find_priority_mark(mark.item, mark.scholar);
  const bool active_now = current && current->active;
  if (active_now == mark.active) return violation(Rule::RedundantToggle, mark.item.str());
  return std::nullopt;
}

inline Violation check_issue(const EngineState& state, const Issue& issue) {
  if (!state.has_scholar(issue.journal_owner)) {
    return violation(Rule::UnknownScholar, issue.journal_owner.str());
  }
  if (issue.id.empty() || state.issues.count(issue.id)) {
    return violation(Rule::DuplicateIssue, issue.id.str());
  }
  if (issue.entries.size() < state.config.min_issue_size) {
    return violation(Rule::TooFewEntries, std::to_string(issue.entries.size()) + " < " +
                                              std::to_string(state.config.min_issue_size));
  }
  std::set<ItemUri> seen;
  for (const auto& entry : issue.entries) {
    auto uri = ItemUri::parse(entry.item);
    if (!uri) return violation(Rule::InvalidUri, entry.item);
    if (!seen.insert(*uri).second) return violation(Rule::DuplicateEntry, uri->str());
  }
  if (issue.editorial.empty()) return violation(Rule::EmptyEditorial, issue.id.str());
  if (issue.title.empty()) return violation(Rule::EmptyTitle, issue.id.str());
  return std::nullopt;
}

inline Violation check_subscription(const EngineState& state, const ScholarId& subscriber,
                                    const ScholarId& journal_owner, bool subscribe) {
  if (!state.has_scholar(subscriber)) return violation(Rule::UnknownScholar, subscriber.str());
  auto journal = state.journals.find(journal_owner);
  if (journal == state.journals.end()) {
    return violation(Rule::UnknownScholar, journal_owner.str());
  }
  if (subscriber == journal_owner) return violation(Rule::SelfSubscription, subscriber.str());
  if ((journal->second.subscribers.count(subscriber) != 0) == subscribe) {
    return violation(Rule::RedundantSubscription, subscriber.str());
  }
  return std::nullopt;
}

}  // namespace openrev
