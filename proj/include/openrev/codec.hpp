#pragma once

#include <array>
#include <cctype>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>
#include <rapidjson/document.h>
#include <rapidjson/error/en.h>

#include "openrev/event.hpp"

// JSON Lines persistence of the event log: one event per line, keys in
// alphabetical order, no whitespace, no floating point. Loading is strict by
// default; save(load(bytes)) == bytes for any log this module wrote.
namespace openrev {

using json = nlohmann::json;

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::string reason)
      : std::runtime_error("line " + std::to_string(line) + ": " + reason),
        line_(line),
        reason_(std::move(reason)) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t line_;
  std::string reason_;
};

struct LoadOptions {
  /// When false, lines whose kind is unknown are skipped and counted instead
  /// of rejected. Unknown fields are rejected either way.
  bool strict = true;
};

struct LoadedLog {
  std::vector<Event> events;
  std::vector<Seq> skipped;  // seqs of lines dropped by a permissive load
};

namespace detail {

inline json entries_to_json(const std::vector<CuratedEntry>& entries) {
  json out = json::array();
  for (const auto& e : entries) {
    json j = {{"item", e.item}};
    if (e.comment) j["comment"] = *e.comment;
    out.push_back(std::move(j));
  }
  return out;
}

template <typename Tag>
json ids_to_json(const std::vector<Id<Tag>>& ids) {
  json out = json::array();
  for (const auto& id : ids) out.push_back(id.str());
  return out;
}

inline json payload_to_json(const Payload& payload) {
  return std::visit(
      overloaded{
          [](const events::ScholarRegistered& e) {
            return json{{"scholar", e.scholar.str()}, {"name", e.name}};
          },
          [](const events::ArticleSubmitted& e) {
            return json{{"article", e.article.str()},
                        {"uri", e.uri},
                        {"authors", ids_to_json(e.authors)},
                        {"digest", e.digest}};
          },
          [](const events::ArticleRevised& e) {
            return json{{"article", e.article.str()},
                        {"version", e.version},
                        {"digest", e.digest},
                        {"acknowledged", ids_to_json(e.acknowledged)}};
          },
          [](const events::ReviewPosted& e) {
            return json{{"review", e.review.str()},
                        {"article", e.article.str()},
                        {"version", e.version},
                        {"reviewer", e.reviewer.str()},
                        {"body", e.body}};
          },
          [](const events::ReviewVoteCast& e) {
            return json{{"voter", e.voter.str()}, {"review", e.review.str()}, {"sign", e.sign}};
          },
          [](const events::ValidityVoteCast& e) {
            json j{{"voter", e.voter.str()},
                   {"article", e.article.str()},
                   {"choice", std::string(choice_name(e.choice))},
                   {"version_seen", e.version_seen}};
            if (e.substantiation) j["substantiation"] = e.substantiation->str();
            return j;
          },
          [](const events::PriorityToggled& e) {
            return json{{"scholar", e.scholar.str()}, {"item", e.item}, {"active", e.active}};
          },
          [](const events::IssueReleased& e) {
            return json{{"issue", e.issue.str()},
                        {"owner", e.owner.str()},
                        {"title", e.title},
                        {"editorial", e.editorial},
                        {"entries", entries_to_json(e.entries)}};
          },
          [](const events::SubscriptionChanged& e) {
            return json{{"subscriber", e.subscriber.str()},
                        {"journal", e.journal.str()},
                        {"active", e.active}};
          },
      },
      payload);
}

// Reads the members of one parsed JSON object, counting consumed keys so
// leftovers (unknown or repeated keys) can be rejected.
class ObjectReader {
 public:
  using Value = rapidjson::Value;

  ObjectReader(const Value& obj, std::size_t line, std::string_view context)
      : obj_(obj), line_(line), context_(context) {
    if (!obj_.IsObject()) fail("expected an object");
  }

  const Value& require(const char* key) {
    const Value* v = optional(key);
    if (!v) fail(std::string("missing field '") + key + "'");
    return *v;
  }
  const Value* optional(const char* key) {
    auto it = obj_.FindMember(key);
    if (it == obj_.MemberEnd()) return nullptr;
    used_[n_used_++] = key;
    return &it->value;
  }

  std::string string(const char* key) { return as_string(require(key), key); }

  std::optional<std::string> optional_string(const char* key) {
    const Value* v = optional(key);
    if (!v) return std::nullopt;
    return as_string(*v, key);
  }

  template <typename Tag>
  Id<Tag> id(const char* key) {
    auto s = string(key);
    if (s.empty()) fail(std::string("empty identifier '") + key + "'");
    return Id<Tag>(std::move(s));
  }

  template <typename Tag>
  std::vector<Id<Tag>> ids(const char* key) {
    const Value& arr = require(key);
    if (!arr.IsArray()) fail(std::string("field '") + key + "' must be an array");
    std::vector<Id<Tag>> out;
    out.reserve(arr.Size());
    for (const auto& v : arr.GetArray()) out.emplace_back(as_string(v, key));
    return out;
  }

  std::uint32_t u32(const char* key) {
    const Value& v = require(key);
    if (!v.IsUint()) fail(std::string("field '") + key + "' must be a non-negative 32-bit integer");
    return v.GetUint();
  }

  int small_int(const char* key) {
    const Value& v = require(key);
    if (!v.IsInt()) fail(std::string("field '") + key + "' must be a 32-bit integer");
    return v.GetInt();
  }

  bool boolean(const char* key) {
    const Value& v = require(key);
    if (!v.IsBool()) fail(std::string("field '") + key + "' must be a boolean");
    return v.GetBool();
  }

  void finish() {
    if (obj_.MemberCount() == n_used_) return;
    std::set<std::string_view> names;
    for (const auto& m : obj_.GetObject()) {
      std::string_view key(m.name.GetString(), m.name.GetStringLength());
      if (!names.insert(key).second) fail("repeated field '" + std::string(key) + "'");
      bool known = false;
      for (std::size_t i = 0; i < n_used_; ++i) known = known || key == used_[i];
      if (!known) fail("unknown field '" + std::string(key) + "'");
    }
  }

  [[noreturn]] void fail(const std::string& reason) const {
    throw ParseError(line_, context_.empty() ? reason : std::string(context_) + ": " + reason);
  }

 private:
  std::string as_string(const Value& v, const char* key) const {
    if (!v.IsString()) fail(std::string("field '") + key + "' must be a string");
    return std::string(v.GetString(), v.GetStringLength());
  }

  const Value& obj_;
  std::size_t line_;
  std::string_view context_;
  std::array<const char*, 8> used_{};  // no record has more than 8 fields
  std::size_t n_used_ = 0;
};

inline bool looks_like_utc_timestamp(std::string_view s) {
  // YYYY-MM-DDTHH:MM:SS[.fraction]Z
  if (s.size() < 20 || s.back() != 'Z') return false;
  auto digits = [&](std::size_t from, std::size_t n) {
    for (std::size_t i = from; i < from + n; ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
  };
  if (!digits(0, 4) || s[4] != '-' || !digits(5, 2) || s[7] != '-' || !digits(8, 2) ||
      s[10] != 'T' || !digits(11, 2) || s[13] != ':' || !digits(14, 2) || s[16] != ':' ||
      !digits(17, 2)) {
    return false;
  }
  if (s.size() == 20) return true;
  return s[19] == '.' && s.size() > 21 && digits(20, s.size() - 21);
}

inline Payload payload_from_json(std::string_view kind, const rapidjson::Value& j,
                                 std::size_t line) {
  ObjectReader r(j, line, "payload");
  Payload out;
  if (kind == "ScholarRegistered") {
    events::ScholarRegistered e;
    e.scholar = r.id<ScholarTag>("scholar");
    e.name = r.string("name");
    out = std::move(e);
  } else if (kind == "ArticleSubmitted") {
    events::ArticleSubmitted e;
    e.article = r.id<ArticleTag>("article");
    e.uri = r.string("uri");
    e.authors = r.ids<ScholarTag>("authors");
    e.digest = r.string("digest");
    out = std::move(e);
  } else if (kind == "ArticleRevised") {
    events::ArticleRevised e;
    e.article = r.id<ArticleTag>("article");
    e.version = r.u32("version");
    e.digest = r.string("digest");
    e.acknowledged = r.ids<ReviewTag>("acknowledged");
    out = std::move(e);
  } else if (kind == "ReviewPosted") {
    events::ReviewPosted e;
    e.review = r.id<ReviewTag>("review");
    e.article = r.id<ArticleTag>("article");
    e.version = r.u32("version");
    e.reviewer = r.id<ScholarTag>("reviewer");
    e.body = r.string("body");
    out = std::move(e);
  } else if (kind == "ReviewVoteCast") {
    events::ReviewVoteCast e;
    e.voter = r.id<ScholarTag>("voter");
    e.review = r.id<ReviewTag>("review");
    e.sign = r.small_int("sign");
    out = std::move(e);
  } else if (kind == "ValidityVoteCast") {
    events::ValidityVoteCast e;
    e.voter = r.id<ScholarTag>("voter");
    e.article = r.id<ArticleTag>("article");
    auto choice = parse_choice(r.string("choice"));
    if (!choice) r.fail("unknown validity choice");
    e.choice = *choice;
    if (auto sub = r.optional_string("substantiation")) {
      if (sub->empty()) r.fail("empty identifier 'substantiation'");
      e.substantiation = ReviewId(std::move(*sub));
    }
    e.version_seen = r.u32("version_seen");
    out = std::move(e);
  } else if (kind == "PriorityToggled") {
    events::PriorityToggled e;
    e.scholar = r.id<ScholarTag>("scholar");
    e.item = r.string("item");
    e.active = r.boolean("active");
    out = std::move(e);
  } else if (kind == "IssueReleased") {
    events::IssueReleased e;
    e.issue = r.id<IssueTag>("issue");
    e.owner = r.id<ScholarTag>("owner");
    e.title = r.string("title");
    e.editorial = r.string("editorial");
    const auto& entries = r.require("entries");
    if (!entries.IsArray()) r.fail("field 'entries' must be an array");
    for (const auto& ej : entries.GetArray()) {
      ObjectReader er(ej, line, "entry");
      CuratedEntry entry;
      entry.item = er.string("item");
      entry.comment = er.optional_string("comment");
      er.finish();
      e.entries.push_back(std::move(entry));
    }
    out = std::move(e);
  } else if (kind == "SubscriptionChanged") {
    events::SubscriptionChanged e;
    e.subscriber = r.id<ScholarTag>("subscriber");
    e.journal = r.id<ScholarTag>("journal");
    e.active = r.boolean("active");
    out = std::move(e);
  } else {
    throw ParseError(line, "unknown kind '" + std::string(kind) + "'");
  }
  r.finish();
  return out;
}

inline bool is_known_kind(std::string_view kind) {
  for (auto k : kKindNames) {
    if (k == kind) return true;
  }
  return false;
}

}  // namespace detail

inline json to_json(const Event& event) {
  return json{{"seq", event.seq},
              {"at", event.at},
              {"kind", std::string(event.kind())},
              {"payload", detail::payload_to_json(event.payload)}};
}

/// Serializes one event as a single canonical line (no trailing newline).
inline std::string encode_event(const Event& event) { return to_json(event).dump(); }

inline std::string save_log(std::span<const Event> events) {
  std::string out;
  for (const auto& e : events) {
    out += encode_event(e);
    out += '\n';
  }
  return out;
}

inline LoadedLog load_log(std::string_view bytes, LoadOptions options = {}) {
  LoadedLog log;
  std::size_t line_no = 0;
  Seq expected = 1;
  std::size_t pos = 0;
  std::string line;
  while (pos < bytes.size()) {
    ++line_no;
    auto nl = bytes.find('\n', pos);
    if (nl == std::string_view::npos) nl = bytes.size();
    line.assign(bytes.substr(pos, nl - pos));
    pos = nl + 1;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) throw ParseError(line_no, "empty line");

    rapidjson::Document doc;
    doc.Parse<rapidjson::kParseValidateEncodingFlag>(line.data(), line.size());
    if (doc.HasParseError()) {
      throw ParseError(line_no, std::string("malformed JSON: ") +
                                    rapidjson::GetParseError_En(doc.GetParseError()) +
                                    " at offset " + std::to_string(doc.GetErrorOffset()));
    }
    detail::ObjectReader r(doc, line_no, "");
    const auto& seq_json = r.require("seq");
    if (!seq_json.IsUint64() || seq_json.GetUint64() == 0) {
      r.fail("'seq' must be a positive integer");
    }
    const Seq seq = seq_json.GetUint64();
    if (seq < expected) r.fail("duplicate seq " + std::to_string(seq));
    if (seq != expected) {
      r.fail("non-consecutive seq " + std::to_string(seq) + " (expected " +
             std::to_string(expected) + ")");
    }
    ++expected;
    std::string at = r.string("at");
    if (!detail::looks_like_utc_timestamp(at)) r.fail("'at' is not an ISO-8601 UTC timestamp");
    std::string kind = r.string("kind");
    const auto& payload = r.require("payload");
    r.finish();

    if (!detail::is_known_kind(kind)) {
      if (options.strict) r.fail("unknown kind '" + kind + "'");
      log.skipped.push_back(seq);
      continue;
    }
    log.events.push_back(Event{seq, std::move(at), detail::payload_from_json(kind, payload, line_no)});
  }
  return log;
}

}  // namespace openrev
