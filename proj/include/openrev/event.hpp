#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "openrev/model.hpp"

namespace openrev {

template <typename... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <typename... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

// Payloads mirror the wire format one-to-one. URIs stay as written; the
// ledger normalizes them when folding into state.
namespace events {

struct ScholarRegistered {
  ScholarId scholar;
  std::string name;
  friend bool operator==(const ScholarRegistered&, const ScholarRegistered&) = default;
};

struct ArticleSubmitted {
  ArticleId article;
  std::string uri;
  std::vector<ScholarId> authors;
  std::string digest;
  friend bool operator==(const ArticleSubmitted&, const ArticleSubmitted&) = default;
};

struct ArticleRevised {
  ArticleId article;
  std::uint32_t version = 0;
  std::string digest;
  std::vector<ReviewId> acknowledged;
  friend bool operator==(const ArticleRevised&, const ArticleRevised&) = default;
};

struct ReviewPosted {
  ReviewId review;
  ArticleId article;
  std::uint32_t version = 0;
  ScholarId reviewer;
  std::string body;
  friend bool operator==(const ReviewPosted&, const ReviewPosted&) = default;
};

struct ReviewVoteCast {
  ScholarId voter;
  ReviewId review;
  int sign = 0;
  friend bool operator==(const ReviewVoteCast&, const ReviewVoteCast&) = default;
};

struct ValidityVoteCast {
  ScholarId voter;
  ArticleId article;
  ValidityChoice choice = ValidityChoice::ReachedStandards;
  std::optional<ReviewId> substantiation;
  std::uint32_t version_seen = 0;
  friend bool operator==(const ValidityVoteCast&, const ValidityVoteCast&) = default;
};

struct PriorityToggled {
  ScholarId scholar;
  std::string item;
  bool active = false;
  friend bool operator==(const PriorityToggled&, const PriorityToggled&) = default;
};

struct IssueReleased {
  IssueId issue;
  ScholarId owner;
  std::string title;
  std::string editorial;
  std::vector<CuratedEntry> entries;
  friend bool operator==(const IssueReleased& a, const IssueReleased& b) {
    if (a.issue != b.issue || a.owner != b.owner || a.title != b.title ||
        a.editorial != b.editorial || a.entries.size() != b.entries.size()) {
      return false;
    }
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
      if (a.entries[i].item != b.entries[i].item || a.entries[i].comment != b.entries[i].comment) {
        return false;
      }
    }
    return true;
  }
};

struct SubscriptionChanged {
  ScholarId subscriber;
  ScholarId journal;
  bool active = false;
  friend bool operator==(const SubscriptionChanged&, const SubscriptionChanged&) = default;
};

}  // namespace events

using Payload = std::variant<events::ScholarRegistered, events::ArticleSubmitted,
                             events::ArticleRevised, events::ReviewPosted, events::ReviewVoteCast,
                             events::ValidityVoteCast, events::PriorityToggled,
                             events::IssueReleased, events::SubscriptionChanged>;

inline constexpr std::array<std::string_view, std::variant_size_v<Payload>> kKindNames = {
    "ScholarRegistered", "ArticleSubmitted", "ArticleRevised",
    "ReviewPosted",      "ReviewVoteCast",   "ValidityVoteCast",
    "PriorityToggled",   "IssueReleased",    "SubscriptionChanged",
};

struct Event {
  Seq seq = 0;
  std::string at;  // informational ISO-8601 UTC; never used for ordering
  Payload payload;

  std::string_view kind() const noexcept { return kKindNames[payload.index()]; }

  friend bool operator==(const Event&, const Event&) = default;
};

constexpr std::string_view choice_name(ValidityChoice c) noexcept {
  return c == ValidityChoice::ReachedStandards ? "reached_standards" : "needs_revisions";
}

inline std::optional<ValidityChoice> parse_choice(std::string_view s) noexcept {
  if (s == "reached_standards") return ValidityChoice::ReachedStandards;
  if (s == "needs_revisions") return ValidityChoice::NeedsRevisions;
  return std::nullopt;
}

}  // namespace openrev
