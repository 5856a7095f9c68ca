#pragma once

#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "openrev/event.hpp"
#include "openrev/expected.hpp"
#include "openrev/rules.hpp"
#include "openrev/state.hpp"

namespace openrev {

struct ReplayError {
  Seq seq = 0;
  RuleViolation violation;
};

namespace detail {

inline Violation apply_payload(EngineState& st, Seq seq, const events::ScholarRegistered& e) {
  Scholar scholar{e.scholar, e.name, seq};
  if (auto v = check_registration(st, scholar)) return v;
  st.journals.emplace(e.scholar, SelfJournal{e.scholar, {}, {}});
  st.scholars.emplace(e.scholar, std::move(scholar));
  return std::nullopt;
}

inline Violation apply_payload(EngineState& st, Seq seq, const events::ArticleSubmitted& e) {
  auto uri = ItemUri::parse(e.uri);
  if (!uri) return violation(Rule::InvalidUri, e.uri);
  Article article{e.article, *uri, {e.authors.begin(), e.authors.end()},
                  {ArticleVersion{1, e.digest, {}, seq}}};
  if (auto v = check_submission(st, article)) return v;
  st.article_by_uri.emplace(*uri, e.article);
  st.articles.emplace(e.article, std::move(article));
  return std::nullopt;
}

inline Violation apply_payload(EngineState& st, Seq seq, const events::ArticleRevised& e) {
  ArticleVersion version{e.version, e.digest, {e.acknowledged.begin(), e.acknowledged.end()}, seq};
  if (auto v = check_revision(st, e.article, version)) return v;
  st.articles.at(e.article).versions.push_back(std::move(version));
  return std::nullopt;
}

inline Violation apply_payload(EngineState& st, Seq seq, const events::ReviewPosted& e) {
  Review review{e.review, e.article, e.version, e.reviewer, e.body, seq};
  if (auto v = check_review(st, review)) return v;
  st.reviews_by_article[e.article].push_back(e.review);
  st.reviews.emplace(e.review, std::move(review));
  return std::nullopt;
}

inline Violation apply_payload(EngineState& st, Seq seq, const events::ReviewVoteCast& e) {
  ReviewVote vote{e.voter, e.review, e.sign, seq};
  if (auto v = check_review_vote(st, vote)) return v;
  st.review_votes.insert_or_assign({e.review, e.voter}, std::move(vote));
  return std::nullopt;
}

inline Violation apply_payload(EngineState& st, Seq seq, const events::ValidityVoteCast& e) {
  ValidityVote vote{e.voter, e.article, e.choice, e.substantiation, e.version_seen, seq};
  if (auto v = check_validity_vote(st, vote)) return v;
  st.validity_votes.insert_or_assign({e.article, e.voter}, std::move(vote));
  return std::nullopt;
}

inline Violation apply_payload(EngineState& st, Seq seq, const events::PriorityToggled& e) {
  auto uri = ItemUri::parse(e.item);
  if (!uri) return violation(Rule::InvalidUri, e.item);
  PriorityMark mark{e.scholar, *uri, e.active, seq};
  if (auto v = check_priority_toggle(st, mark)) return v;
  st.priority_marks.insert_or_assign({*uri, e.scholar}, std::move(mark));
  return std::nullopt;
}

inline Violation apply_payload(EngineState& st, Seq seq, const events::IssueReleased& e) {
  Issue issue{e.issue, e.owner, e.title, e.editorial, e.entries, seq};
  if (auto v = check_issue(st, issue)) return v;
  for (const auto& entry : issue.entries) {
    st.curations[*ItemUri::parse(entry.item)][e.owner].push_back(e.issue);
  }
  st.journals.at(e.owner).issues.push_back(e.issue);
  st.issues.emplace(e.issue, std::move(issue));
  return std::nullopt;
}

inline Violation apply_payload(EngineState& st, Seq, const events::SubscriptionChanged& e) {
  if (auto v = check_subscription(st, e.subscriber, e.journal, e.active)) return v;
  auto& subs = st.journals.at(e.journal).subscribers;
  if (e.active) {
    subs.insert(e.subscriber);
  } else {
    subs.erase(e.subscriber);
  }
  return std::nullopt;
}

}  // namespace detail

/// Validates `event` against `state` and folds it in place. On violation the
/// state is left untouched: every check runs before the first mutation.
inline Violation apply(EngineState& state, const Event& event) {
  if (event.seq != state.last_seq + 1) {
    return violation(Rule::SequenceGap, "expected seq " + std::to_string(state.last_seq + 1) +
                                            ", got " + std::to_string(event.seq));
  }
  auto v = std::visit(
      [&](const auto& payload) { return detail::apply_payload(state, event.seq, payload); },
      event.payload);
  if (!v) state.last_seq = event.seq;
  return v;
}

/// Value-semantic append: returns the successor state, leaving `state` as is.
inline Expected<EngineState, RuleViolation> append(const EngineState& state, const Event& event) {
  EngineState next = state;
  if (auto v = apply(next, event)) return unexpected(std::move(*v));
  return next;
}

/// Folds `events` from the empty state, stopping at the first rejected event.
///
/// `skipped` lists sequence numbers deliberately dropped by a permissive
/// load; gaps made only of those numbers are stepped over.
inline Expected<EngineState, ReplayError> replay(std::span<const Event> events,
                                                 ProtocolConfig config = {},
                                                 std::span<const Seq> skipped = {}) {
  EngineState state;
  state.config = config;
  std::size_t next_skip = 0;
  for (const auto& event : events) {
    while (next_skip < skipped.size() && skipped[next_skip] == state.last_seq + 1 &&
           event.seq > state.last_seq + 1) {
      ++state.last_seq;
      ++next_skip;
    }
    const Seq position = state.last_seq + 1;
    if (auto v = apply(state, event)) return unexpected(ReplayError{position, std::move(*v)});
  }
  return state;
}

}  // namespace openrev
