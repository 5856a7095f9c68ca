#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>

#include "openrev/expected.hpp"
#include "openrev/state.hpp"

// Article-level quantifiers. All functions are pure reads of an EngineState.
namespace openrev {

/// Exact ratio of two counts, kept unreduced (validated / voters).
struct Fraction {
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 1;

  double to_double() const { return static_cast<double>(numerator) / static_cast<double>(denominator); }

  /// Decimal rendering with `places` digits, rounded half to even.
  std::string to_decimal(int places = 4) const {
    std::uint64_t scale = 1;
    for (int i = 0; i < places; ++i) scale *= 10;
    const unsigned __int128 scaled = static_cast<unsigned __int128>(numerator) * scale;
    auto q = static_cast<std::uint64_t>(scaled / denominator);
    const auto rem = static_cast<std::uint64_t>(scaled % denominator);
    const unsigned __int128 twice = static_cast<unsigned __int128>(rem) * 2;
    if (twice > denominator || (twice == denominator && (q & 1))) ++q;
    const auto whole = std::to_string(q / scale);
    if (places <= 0) return whole;
    std::string digits = std::to_string(q % scale);
    digits.insert(0, static_cast<std::size_t>(places) - digits.size(), '0');
    return whole + "." + digits;
  }

  friend bool operator==(const Fraction& a, const Fraction& b) {
    return static_cast<unsigned __int128>(a.numerator) * b.denominator ==
           static_cast<unsigned __int128>(b.numerator) * a.denominator;
  }
};

struct VersionTally {
  std::uint64_t voters = 0;
  std::uint64_t validated = 0;
  friend bool operator==(const VersionTally&, const VersionTally&) = default;
};

struct ValidityTally {
  std::uint64_t voter_count = 0;
  std::uint64_t validated_count = 0;
  std::optional<Fraction> fraction;  // absent when nobody voted
  std::map<std::uint32_t, VersionTally> per_version;  // keyed by version_seen
};

struct ImportanceCount {
  ItemUri item;
  std::set<ScholarId> curators;
  std::size_t count = 0;
};

struct PriorityCount {
  ItemUri item;
  std::size_t count = 0;
};

struct ReviewScore {
  ReviewId review;
  std::size_t up = 0;
  std::size_t down = 0;
  friend bool operator==(const ReviewScore&, const ReviewScore&) = default;
};

struct AcknowledgmentRecord {
  ArticleId article;
  std::uint32_t version = 0;
  std::set<ScholarId> reviewers;
};

inline Expected<ValidityTally, RuleViolation> validity_tally(const EngineState& state,
                                                             const ArticleId& article) {
  if (!state.find_article(article)) {
    return unexpected(RuleViolation{Rule::UnknownArticle, article.str()});
  }
  ValidityTally tally;
  for_each_with_prefix(state.validity_votes, article, [&](const ValidityVote& v) {
    const bool validated = v.choice == ValidityChoice::ReachedStandards;
    ++tally.voter_count;
    auto& per = tally.per_version[v.version_seen];
    ++per.voters;
    if (validated) {
      ++tally.validated_count;
      ++per.validated;
    }
  });
  if (tally.voter_count > 0) tally.fraction = Fraction{tally.validated_count, tally.voter_count};
  return tally;
}

/// Distinct curators of `item` across all released issues. When the item is
/// a hosted article its authors are not counted.
inline ImportanceCount importance(const EngineState& state, const ItemUri& item) {
  ImportanceCount out{item, {}, 0};
  auto it = state.curations.find(item);
  if (it == state.curations.end()) return out;
  const Article* article = state.find_article(item);
  for (const auto& [curator, issues] : it->second) {
    if (article && article->is_author(curator)) continue;
    out.curators.insert(curator);
  }
  out.count = out.curators.size();
  return out;
}

inline PriorityCount priority(const EngineState& state, const ItemUri& item) {
  PriorityCount out{item, 0};
  for_each_with_prefix(state.priority_marks, item, [&](const PriorityMark& m) {
    if (m.active) ++out.count;
  });
  return out;
}

inline Expected<ReviewScore, RuleViolation> review_score(const EngineState& state,
                                                         const ReviewId& review) {
  if (!state.find_review(review)) {
    return unexpected(RuleViolation{Rule::UnknownReview, review.str()});
  }
  ReviewScore score{review, 0, 0};
  for_each_with_prefix(state.review_votes, review, [&](const ReviewVote& v) {
    (v.sign > 0 ? score.up : score.down) += 1;
  });
  return score;
}

/// Authors of the reviews acknowledged by any version up to `version`.
inline Expected<AcknowledgmentRecord, RuleViolation> acknowledged_reviewers(
    const EngineState& state, const ArticleId& article_id, std::uint32_t version) {
  const Article* article = state.find_article(article_id);
  if (!article) return unexpected(RuleViolation{Rule::UnknownArticle, article_id.str()});
  if (version == 0 || version > article->latest_version()) {
    return unexpected(RuleViolation{Rule::UnknownVersion, std::to_string(version)});
  }
  AcknowledgmentRecord record{article_id, version, {}};
  for (std::uint32_t v = 1; v <= version; ++v) {
    for (const auto& rid : article->versions[v - 1].acknowledged_reviews) {
      record.reviewers.insert(state.reviews.at(rid).reviewer);
    }
  }
  return record;
}

/// The peer-curation relation shared by importance and collusion analysis:
/// curator -> distinct items curated, with self-authored items removed.
inline std::map<ScholarId, std::set<ItemUri>> peer_curations(const EngineState& state) {
  std::map<ScholarId, std::set<ItemUri>> out;
  for (const auto& [item, by_curator] : state.curations) {
    const Article* article = state.find_article(item);
    for (const auto& [curator, issues] : by_curator) {
      if (article && article->is_author(curator)) continue;
      out[curator].insert(item);
    }
  }
  return out;
}

}  // namespace openrev
