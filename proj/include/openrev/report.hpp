#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "openrev/metrics.hpp"

// Per-item metric records and their JSON / CSV renderings.
namespace openrev {

struct ItemMetrics {
  ItemUri uri;
  std::optional<ArticleId> article;  // set for hosted articles
  ValidityTally validity;
  std::size_t importance = 0;
  std::size_t priority = 0;
};

inline ItemMetrics item_metrics(const EngineState& state, const ItemUri& uri) {
  ItemMetrics m;
  m.uri = uri;
  if (const Article* a = state.find_article(uri)) {
    m.article = a->id;
    m.validity = *validity_tally(state, a->id);
  }
  m.importance = importance(state, uri).count;
  m.priority = priority(state, uri).count;
  return m;
}

/// Every item the state knows about: hosted articles, curated items and
/// priority-marked items, ordered by normalized URI.
inline std::vector<ItemMetrics> all_item_metrics(const EngineState& state) {
  std::set<ItemUri> items;
  for (const auto& [uri, id] : state.article_by_uri) items.insert(uri);
  for (const auto& [uri, curators] : state.curations) items.insert(uri);
  for (const auto& [key, mark] : state.priority_marks) items.insert(key.first);
  std::vector<ItemMetrics> out;
  out.reserve(items.size());
  for (const auto& uri : items) out.push_back(item_metrics(state, uri));
  return out;
}

inline nlohmann::json to_json(const ItemMetrics& m) {
  using nlohmann::json;
  json fraction = nullptr;
  if (m.validity.fraction) fraction = std::stod(m.validity.fraction->to_decimal(4));
  return {{"uri", m.uri.str()},
          {"validity",
           {{"n", m.validity.voter_count},
            {"validated", m.validity.validated_count},
            {"fraction", fraction}}},
          {"importance", m.importance},
          {"priority", m.priority}};
}

inline nlohmann::json metrics_json(const std::vector<ItemMetrics>& records) {
  auto out = nlohmann::json::array();
  for (const auto& r : records) out.push_back(to_json(r));
  return out;
}

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

inline std::string metrics_csv(const std::vector<ItemMetrics>& records) {
  std::string out = "uri,validity_n,validity_validated,validity_fraction,importance,priority\n";
  for (const auto& r : records) {
    out += detail::csv_field(r.uri.str());
    out += ',' + std::to_string(r.validity.voter_count);
    out += ',' + std::to_string(r.validity.validated_count);
    out += ',' + (r.validity.fraction ? r.validity.fraction->to_decimal(4) : std::string());
    out += ',' + std::to_string(r.importance);
    out += ',' + std::to_string(r.priority);
    out += '\n';
  }
  return out;
}

}  // namespace openrev
