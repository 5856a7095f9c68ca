#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "openrev/digest.hpp"
#include "openrev/expected.hpp"
#include "openrev/metrics.hpp"
#include "openrev/state.hpp"

// Collusion detectors over the author-excluded, URI-normalized curation
// relation. Reports are advisory and never feed back into metrics.
namespace openrev {

struct ParameterError {
  std::string message;
};

/// Distinct items authored by `author` that `curator` curated (curator not a
/// co-author), keyed by ordered (curator, author).
using CrossCurations = std::map<std::pair<ScholarId, ScholarId>, std::set<ItemUri>>;

inline CrossCurations cross_curations(const EngineState& state) {
  CrossCurations out;
  for (const auto& [item, by_curator] : state.curations) {
    const Article* article = state.find_article(item);
    if (!article) continue;
    for (const auto& [curator, issues] : by_curator) {
      if (article->is_author(curator)) continue;
      for (const auto& author : article->authors) out[{curator, author}].insert(item);
    }
  }
  return out;
}

struct ReciprocityRecord {
  ScholarId a;  // a < b
  ScholarId b;
  std::size_t a_curates_b = 0;
  std::size_t b_curates_a = 0;
  // max over the two directions of (acts toward the other / all peer acts)
  double reciprocity_share = 0.0;
};

inline std::vector<ReciprocityRecord> reciprocity_records(const EngineState& state) {
  const auto acts = peer_curations(state);
  const auto cross = cross_curations(state);
  auto total = [&](const ScholarId& s) -> std::size_t {
    auto it = acts.find(s);
    return it == acts.end() ? 0 : it->second.size();
  };
  std::map<std::pair<ScholarId, ScholarId>, ReciprocityRecord> records;
  for (const auto& [key, items] : cross) {
    const auto& [curator, author] = key;
    const bool forward = curator < author;
    auto& rec = records[forward ? key : std::pair{author, curator}];
    rec.a = forward ? curator : author;
    rec.b = forward ? author : curator;
    (forward ? rec.a_curates_b : rec.b_curates_a) = items.size();
  }
  std::vector<ReciprocityRecord> out;
  out.reserve(records.size());
  for (auto& [key, rec] : records) {
    const auto ta = total(rec.a);
    const auto tb = total(rec.b);
    const double sa = ta ? static_cast<double>(rec.a_curates_b) / static_cast<double>(ta) : 0.0;
    const double sb = tb ? static_cast<double>(rec.b_curates_a) / static_cast<double>(tb) : 0.0;
    rec.reciprocity_share = std::max(sa, sb);
    out.push_back(rec);
  }
  return out;
}

inline Expected<std::vector<ReciprocityRecord>, ParameterError> flag_pairs(
    const std::vector<ReciprocityRecord>& records, double theta) {
  if (!(theta > 0.0 && theta <= 1.0)) {
    return unexpected(ParameterError{"theta must lie in (0, 1]"});
  }
  std::vector<ReciprocityRecord> flagged;
  for (const auto& r : records) {
    if (r.a_curates_b >= 1 && r.b_curates_a >= 1 && r.reciprocity_share >= theta) {
      flagged.push_back(r);
    }
  }
  return flagged;
}

struct EvidenceTriple {
  ScholarId curator;
  ItemUri item;
  IssueId issue;
  friend auto operator<=>(const EvidenceTriple&, const EvidenceTriple&) = default;
};

struct FlaggedGroup {
  std::set<ScholarId> members;
  std::size_t edges = 0;  // ordered member pairs with a cross-curation
  double density = 0.0;
  std::vector<EvidenceTriple> evidence;
};

struct GroupParams {
  double delta = 0.8;
  std::size_t min_size = 3;
  /// A directed edge a->b is kept only when a's acts toward b make up at
  /// least this share of a's peer curation. Zero keeps every edge.
  double min_edge_share = 0.1;
};

inline std::optional<ParameterError> check(const GroupParams& p) {
  if (!(p.delta > 0.0 && p.delta <= 1.0)) return ParameterError{"delta must lie in (0, 1]"};
  if (p.min_size < 2) return ParameterError{"min_size must be at least 2"};
  if (!(p.min_edge_share >= 0.0 && p.min_edge_share <= 1.0)) {
    return ParameterError{"min_edge_share must lie in [0, 1]"};
  }
  return std::nullopt;
}

namespace detail {

using Digraph = std::map<ScholarId, std::pair<std::set<ScholarId>, std::set<ScholarId>>>;  // out, in

inline Digraph collusion_graph(const EngineState& state, const CrossCurations& cross,
                               double min_edge_share) {
  const auto acts = peer_curations(state);
  Digraph g;
  for (const auto& [key, items] : cross) {
    const auto& [from, to] = key;
    const auto total = acts.at(from).size();
    if (static_cast<double>(items.size()) < min_edge_share * static_cast<double>(total)) continue;
    g[from].first.insert(to);
    g[to].second.insert(from);
  }
  return g;
}

inline std::size_t count_edges(const Digraph& g, const std::set<ScholarId>& nodes) {
  std::size_t e = 0;
  for (const auto& n : nodes) {
    for (const auto& t : g.at(n).first) e += nodes.count(t);
  }
  return e;
}

inline double density_of(std::size_t edges, std::size_t n) {
  return n < 2 ? 0.0 : static_cast<double>(edges) / static_cast<double>(n * (n - 1));
}

/// One peeling pass over `nodes`, lowest degree first (ties by ascending
/// id). Returns the densest suffix of the removal order with at least
/// `min_size` members; ties go to the larger suffix.
inline std::set<ScholarId> densest_suffix(const Digraph& g, const std::set<ScholarId>& nodes,
                                          std::size_t min_size) {
  std::map<ScholarId, std::size_t> degree;
  for (const auto& n : nodes) {
    const auto& [out, in] = g.at(n);
    std::size_t d = 0;
    for (const auto& t : out) d += nodes.count(t);
    for (const auto& s : in) d += nodes.count(s);
    degree[n] = d;
  }
  std::set<std::pair<std::size_t, ScholarId>> queue;
  for (const auto& [n, d] : degree) queue.insert({d, n});
  std::size_t edges = count_edges(g, nodes);
  std::set<ScholarId> remaining = nodes;
  std::vector<ScholarId> removed;
  std::size_t best_cut = 0, best_edges = 0, best_size = 0;
  bool found = false;
  while (remaining.size() >= min_size && remaining.size() >= 2) {
    const std::size_t size = remaining.size();
    // edges / (size (size - 1)) > best_edges / (best_size (best_size - 1))
    const auto lhs = static_cast<unsigned __int128>(edges) * best_size * (best_size - 1);
    const auto rhs = static_cast<unsigned __int128>(best_edges) * size * (size - 1);
    if (!found || lhs > rhs) {
      found = true;
      best_cut = removed.size();
      best_edges = edges;
      best_size = size;
    }
    auto [d, victim] = *queue.begin();
    queue.erase(queue.begin());
    remaining.erase(victim);
    removed.push_back(victim);
    edges -= d;
    auto relax = [&](const ScholarId& other) {
      if (!remaining.count(other)) return;
      auto& od = degree[other];
      queue.erase({od, other});
      --od;
      queue.insert({od, other});
    };
    const auto& [out, in] = g.at(victim);
    for (const auto& t : out) relax(t);
    for (const auto& s : in) relax(s);
  }
  if (!found || best_edges == 0) return {};
  std::set<ScholarId> out = nodes;
  for (std::size_t i = 0; i < best_cut; ++i) out.erase(removed[i]);
  return out;
}

}  // namespace detail

/// Dense cross-curation groups. Repeated greedy peeling splits the graph
/// into blocks: each pass takes the densest suffix of the removal order as a
/// block and sets it aside before the next pass. Blocks do not depend on
/// `delta`; those reaching it are reported, so raising `delta` only drops
/// groups.
inline Expected<std::vector<FlaggedGroup>, ParameterError> flag_groups(const EngineState& state,
                                                                       const GroupParams& p) {
  if (auto bad = check(p)) return unexpected(std::move(*bad));
  const auto cross = cross_curations(state);
  const auto g = detail::collusion_graph(state, cross, p.min_edge_share);
  std::set<ScholarId> nodes;
  for (const auto& [n, adj] : g) nodes.insert(n);

  std::vector<FlaggedGroup> groups;
  while (nodes.size() >= p.min_size) {
    auto members = detail::densest_suffix(g, nodes, p.min_size);
    if (members.empty()) break;
    for (const auto& m : members) nodes.erase(m);
    FlaggedGroup group;
    group.edges = detail::count_edges(g, members);
    group.density = detail::density_of(group.edges, members.size());
    if (group.density < p.delta) continue;
    for (const auto& a : members) {
      for (const auto& b : g.at(a).first) {
        if (!members.count(b)) continue;
        for (const auto& item : cross.at({a, b})) {
          for (const auto& issue : state.curations.at(item).at(a)) {
            group.evidence.push_back({a, item, issue});
          }
        }
      }
    }
    std::sort(group.evidence.begin(), group.evidence.end());
    group.evidence.erase(std::unique(group.evidence.begin(), group.evidence.end()),
                         group.evidence.end());
    group.members = std::move(members);
    groups.push_back(std::move(group));
  }
  return groups;
}

struct AnomalyParams {
  double theta = 0.5;
  double delta = 0.8;
  std::size_t min_size = 3;
  double min_edge_share = 0.1;

  GroupParams group_params() const { return {delta, min_size, min_edge_share}; }
};

inline std::optional<ParameterError> check(const AnomalyParams& p) {
  if (!(p.theta > 0.0 && p.theta <= 1.0)) return ParameterError{"theta must lie in (0, 1]"};
  return check(p.group_params());
}

struct AnomalyReport {
  StateDigest generated_from;
  std::vector<ReciprocityRecord> pairs;
  std::vector<FlaggedGroup> groups;
  AnomalyParams params;
};

inline Expected<AnomalyReport, ParameterError> anomaly_report(const EngineState& state,
                                                              const AnomalyParams& params) {
  auto pairs = flag_pairs(reciprocity_records(state), params.theta);
  if (!pairs) return unexpected(pairs.error());
  auto groups = flag_groups(state, params.group_params());
  if (!groups) return unexpected(groups.error());
  return AnomalyReport{digest(state), std::move(*pairs), std::move(*groups), params};
}

inline nlohmann::json to_json(const ReciprocityRecord& r) {
  return {{"a", r.a.str()},
          {"b", r.b.str()},
          {"a_curates_b", r.a_curates_b},
          {"b_curates_a", r.b_curates_a},
          {"reciprocity_share", r.reciprocity_share}};
}

inline nlohmann::json to_json(const AnomalyReport& report) {
  using nlohmann::json;
  json pairs = json::array();
  for (const auto& p : report.pairs) pairs.push_back(to_json(p));
  json groups = json::array();
  for (const auto& g : report.groups) {
    json members = json::array();
    for (const auto& m : g.members) members.push_back(m.str());
    json evidence = json::array();
    for (const auto& e : g.evidence) {
      evidence.push_back({{"curator", e.curator.str()}, {"item", e.item.str()}, {"issue", e.issue.str()}});
    }
    groups.push_back({{"members", members},
                      {"edges", g.edges},
                      {"density", g.density},
                      {"evidence", evidence}});
  }
  return {{"generated_from", report.generated_from.hex},
          {"parameters",
           {{"theta", report.params.theta},
            {"delta", report.params.delta},
            {"min_size", report.params.min_size},
            {"min_edge_share", report.params.min_edge_share}}},
          {"pairs", pairs},
          {"groups", groups}};
}

}  // namespace openrev
