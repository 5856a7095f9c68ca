#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "openrev/anomaly.hpp"
#include "openrev/report.hpp"
#include "openrev/state.hpp"

namespace openrev {

struct CurationEdge {
  ScholarId curator;
  ItemUri item;
  std::size_t issues = 0;  // how many of the curator's issues include it
};

struct AuthorshipEdge {
  ScholarId author;
  ItemUri item;
};

struct ReviewerEdge {
  ScholarId reviewer;
  ArticleId article;
  std::size_t reviews = 0;
};

struct CoCuration {
  ItemUri a;  // a < b
  ItemUri b;
  std::size_t weight = 0;  // distinct scholars who curated both
};

/// Scholar/item networks. Curation and co-curation count every curator,
/// authors included; reciprocity uses the author-excluded relation.
struct CurationGraph {
  std::vector<CurationEdge> curation;
  std::vector<AuthorshipEdge> authorship;
  std::vector<ReviewerEdge> reviewing;
  std::vector<CoCuration> co_curation;
  std::vector<ReciprocityRecord> reciprocity;
};

inline CurationGraph curation_graph(const EngineState& state) {
  CurationGraph g;
  std::map<ScholarId, std::set<ItemUri>> by_curator;
  for (const auto& [item, curators] : state.curations) {
    for (const auto& [curator, issues] : curators) {
      g.curation.push_back({curator, item, issues.size()});
      by_curator[curator].insert(item);
    }
  }
  std::sort(g.curation.begin(), g.curation.end(), [](const auto& x, const auto& y) {
    return std::tie(x.curator, x.item) < std::tie(y.curator, y.item);
  });

  for (const auto& [id, article] : state.articles) {
    for (const auto& author : article.authors) g.authorship.push_back({author, article.canonical_uri});
  }
  std::sort(g.authorship.begin(), g.authorship.end(), [](const auto& x, const auto& y) {
    return std::tie(x.author, x.item) < std::tie(y.author, y.item);
  });

  std::map<std::pair<ScholarId, ArticleId>, std::size_t> reviews;
  for (const auto& [id, r] : state.reviews) ++reviews[{r.reviewer, r.article}];
  for (const auto& [key, n] : reviews) g.reviewing.push_back({key.first, key.second, n});

  std::map<std::pair<ItemUri, ItemUri>, std::size_t> co;
  for (const auto& [curator, items] : by_curator) {
    for (auto i = items.begin(); i != items.end(); ++i) {
      for (auto j = std::next(i); j != items.end(); ++j) ++co[{*i, *j}];
    }
  }
  for (const auto& [key, w] : co) g.co_curation.push_back({key.first, key.second, w});

  g.reciprocity = reciprocity_records(state);
  return g;
}

struct GraphEdge {
  std::string kind;  // curates, authored, reviewed, co_curated, cross_curates
  std::string from;
  std::string to;
  std::size_t weight = 0;
};

/// Flattens the graph into typed edges, in the graph's canonical order.
inline std::vector<GraphEdge> edge_list(const CurationGraph& g) {
  std::vector<GraphEdge> out;
  for (const auto& e : g.curation) out.push_back({"curates", e.curator.str(), e.item.str(), e.issues});
  for (const auto& e : g.authorship) out.push_back({"authored", e.author.str(), e.item.str(), 1});
  for (const auto& e : g.reviewing) {
    out.push_back({"reviewed", e.reviewer.str(), e.article.str(), e.reviews});
  }
  for (const auto& e : g.co_curation) out.push_back({"co_curated", e.a.str(), e.b.str(), e.weight});
  for (const auto& r : g.reciprocity) {
    if (r.a_curates_b) out.push_back({"cross_curates", r.a.str(), r.b.str(), r.a_curates_b});
    if (r.b_curates_a) out.push_back({"cross_curates", r.b.str(), r.a.str(), r.b_curates_a});
  }
  return out;
}

inline nlohmann::json edges_json(const std::vector<GraphEdge>& edges) {
  auto out = nlohmann::json::array();
  for (const auto& e : edges) {
    out.push_back({{"kind", e.kind}, {"from", e.from}, {"to", e.to}, {"weight", e.weight}});
  }
  return out;
}

inline std::string edges_csv(const std::vector<GraphEdge>& edges) {
  std::string out = "kind,from,to,weight\n";
  for (const auto& e : edges) {
    out += e.kind + ',' + detail::csv_field(e.from) + ',' + detail::csv_field(e.to) + ',' +
           std::to_string(e.weight) + '\n';
  }
  return out;
}

}  // namespace openrev
