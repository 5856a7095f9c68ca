#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "openrev/id.hpp"
#include "openrev/uri.hpp"

namespace openrev {

/// Position of an event in the log; doubles as the logical timestamp of
/// everything the event creates.
using Seq = std::uint64_t;

struct ProtocolConfig {
  /// Smallest number of entries a released issue may carry.
  std::size_t min_issue_size = 4;
};

struct Scholar {
  ScholarId id;
  std::string display_name;
  Seq registered_at = 0;
};

struct ArticleVersion {
  std::uint32_t number = 0;
  std::string content_digest;
  std::set<ReviewId> acknowledged_reviews;
  Seq created_at = 0;
};

struct Article {
  ArticleId id;
  ItemUri canonical_uri;
  std::set<ScholarId> authors;
  std::vector<ArticleVersion> versions;

  std::uint32_t latest_version() const noexcept {
    return static_cast<std::uint32_t>(versions.size());
  }
  bool is_author(const ScholarId& s) const { return authors.count(s) != 0; }
};

struct Review {
  ReviewId id;
  ArticleId article;
  std::uint32_t target_version = 0;
  ScholarId reviewer;
  std::string body;
  Seq posted_at = 0;
};

struct ReviewVote {
  ScholarId voter;
  ReviewId review;
  int sign = 0;  // +1 or -1
  Seq cast_at = 0;
};

enum class ValidityChoice { ReachedStandards, NeedsRevisions };

struct ValidityVote {
  ScholarId voter;
  ArticleId article;
  ValidityChoice choice = ValidityChoice::ReachedStandards;
  std::optional<ReviewId> substantiation;
  std::uint32_t version_seen = 0;
  Seq cast_at = 0;
};

struct PriorityMark {
  ScholarId scholar;
  ItemUri item;
  bool active = false;
  Seq toggled_at = 0;
};

struct CuratedEntry {
  std::string item;  // as written by the curator; identity uses ItemUri::parse
  std::optional<std::string> comment;
};

struct Issue {
  IssueId id;
  ScholarId journal_owner;
  std::string title;
  std::string editorial;
  std::vector<CuratedEntry> entries;
  Seq released_at = 0;
};

struct SelfJournal {
  ScholarId owner;
  std::vector<IssueId> issues;
  std::set<ScholarId> subscribers;
};

enum class Rule {
  SequenceGap,
  UnknownScholar,
  DuplicateScholar,
  EmptyDisplayName,
  UnknownArticle,
  DuplicateArticle,
  DuplicateUri,
  InvalidUri,
  NoAuthors,
  UnknownVersion,
  NonConsecutiveVersion,
  UnknownReview,
  ForeignReviewAcknowledged,
  DuplicateReview,
  AuthorSelfReview,
  EmptyBody,
  SelfReviewVote,
  InvalidSign,
  AuthorSelfVote,
  MissingSubstantiation,
  InvalidSubstantiation,
  SuperfluousSubstantiation,
  RedundantToggle,
  DuplicateIssue,
  TooFewEntries,
  DuplicateEntry,
  EmptyTitle,
  EmptyEditorial,
  SelfSubscription,
  RedundantSubscription,
};

constexpr std::string_view rule_name(Rule r) noexcept {
  switch (r) {
    case Rule::SequenceGap: return "SequenceGap";
    case Rule::UnknownScholar: return "UnknownScholar";
    case Rule::DuplicateScholar: return "DuplicateScholar";
    case Rule::EmptyDisplayName: return "EmptyDisplayName";
    case Rule::UnknownArticle: return "UnknownArticle";
    case Rule::DuplicateArticle: return "DuplicateArticle";
    case Rule::DuplicateUri: return "DuplicateUri";
    case Rule::InvalidUri: return "InvalidUri";
    case Rule::NoAuthors: return "NoAuthors";
    case Rule::UnknownVersion: return "UnknownVersion";
    case Rule::NonConsecutiveVersion: return "NonConsecutiveVersion";
    case Rule::UnknownReview: return "UnknownReview";
    case Rule::ForeignReviewAcknowledged: return "ForeignReviewAcknowledged";
    case Rule::DuplicateReview: return "DuplicateReview";
    case Rule::AuthorSelfReview: return "AuthorSelfReview";
    case Rule::EmptyBody: return "EmptyBody";
    case Rule::SelfReviewVote: return "SelfReviewVote";
    case Rule::InvalidSign: return "InvalidSign";
    case Rule::AuthorSelfVote: return "AuthorSelfVote";
    case Rule::MissingSubstantiation: return "MissingSubstantiation";
    case Rule::InvalidSubstantiation: return "InvalidSubstantiation";
    case Rule::SuperfluousSubstantiation: return "SuperfluousSubstantiation";
    case Rule::RedundantToggle: return "RedundantToggle";
    case Rule::DuplicateIssue: return "DuplicateIssue";
    case Rule::TooFewEntries: return "TooFewEntries";
    case Rule::DuplicateEntry: return "DuplicateEntry";
    case Rule::EmptyTitle: return "EmptyTitle";
    case Rule::EmptyEditorial: return "EmptyEditorial";
    case Rule::SelfSubscription: return "SelfSubscription";
    case Rule::RedundantSubscription: return "RedundantSubscription";
  }
  return "Unknown";
}

struct RuleViolation {
  Rule rule;
  std::string detail;

  friend bool operator==(const RuleViolation& a, const RuleViolation& b) {
    return a.rule == b.rule && a.detail == b.detail;
  }
};

/// Outcome of a rule check: empty when the action is admissible.
using Violation = std::optional<RuleViolation>;

inline Violation violation(Rule rule, std::string detail = {}) {
  return RuleViolation{rule, std::move(detail)};
}

}  // namespace openrev
