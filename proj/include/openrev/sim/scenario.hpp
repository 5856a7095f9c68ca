#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "openrev/anomaly.hpp"
#include "openrev/digest.hpp"
#include "openrev/ledger.hpp"
#include "openrev/metrics.hpp"
#include "openrev/sim/agent.hpp"
#include "openrev/sim/config.hpp"
#include "openrev/stats.hpp"

namespace openrev::sim {

struct AgentLabel {
  ScholarId scholar;
  Strategy strategy = Strategy::Honest;
  std::optional<std::uint32_t> clique;
};

/// Latent facts the log does not carry: who follows which strategy, and the
/// quality of every article.
struct GroundTruth {
  std::vector<AgentLabel> agents;
  std::map<ArticleId, double> quality;
};

struct CliqueInflation {
  std::uint32_t clique = 0;
  std::size_t members = 0;
  std::size_t articles = 0;
  double mean_importance = 0.0;
  std::optional<double> baseline;   // honest mean importance at matched quality deciles
  std::optional<double> inflation;  // mean_importance / baseline
  std::size_t max_importance = 0;
};

struct ScenarioReport {
  std::size_t articles = 0;
  std::optional<double> spearman_quality_importance;
  std::size_t articles_with_votes = 0;  // voter count at least validity_min_voters
  std::optional<double> spearman_quality_validity;
  std::vector<CliqueInflation> inflation;
  std::size_t colluders = 0;
  std::size_t flagged_scholars = 0;
  std::size_t flagged_groups = 0;
  std::size_t flagged_pairs = 0;
  std::optional<double> detector_precision;
  std::optional<double> detector_recall;
  std::map<std::string, std::size_t> event_counts;
  std::size_t total_events = 0;
  std::map<std::string, std::size_t> dropped_intentions;  // by rule
  StateDigest digest;
};

struct EvaluationParams {
  AnomalyParams detector;
  std::size_t validity_min_voters = 5;
  ProtocolConfig protocol;
};

inline std::optional<double> ratio(std::size_t num, std::size_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

/// Replays `log` and scores metric fidelity and detector accuracy against
/// the ground truth.
inline Expected<ScenarioReport, ReplayError> evaluate(std::span<const Event> log,
                                                      const GroundTruth& truth,
                                                      const EvaluationParams& params) {
  auto replayed = replay(log, params.protocol);
  if (!replayed) return unexpected(replayed.error());
  const EngineState& state = *replayed;

  ScenarioReport report;
  report.digest = digest(state);
  report.total_events = log.size();
  for (const auto& e : log) ++report.event_counts[std::string(e.kind())];

  std::map<ScholarId, const AgentLabel*> labels;
  for (const auto& l : truth.agents) labels[l.scholar] = &l;

  std::vector<double> quality, importance_v, vq, vf;
  std::map<ArticleId, std::size_t> importance_of;
  for (const auto& [id, article] : state.articles) {
    auto q = truth.quality.find(id);
    if (q == truth.quality.end()) continue;
    const auto imp = importance(state, article.canonical_uri).count;
    importance_of[id] = imp;
    quality.push_back(q->second);
    importance_v.push_back(static_cast<double>(imp));
    const auto tally = *validity_tally(state, id);
    if (tally.voter_count >= params.validity_min_voters && tally.fraction) {
      vq.push_back(q->second);
      vf.push_back(tally.fraction->to_double());
    }
  }
  report.articles = quality.size();
  report.spearman_quality_importance = stats::spearman(quality, importance_v);
  report.articles_with_votes = vq.size();
  report.spearman_quality_validity = stats::spearman(vq, vf);

  // Honest baseline importance per quality decile.
  auto decile = [](double q) { return std::min(9, static_cast<int>(q * 10.0)); };
  auto sole_author_label = [&](const Article& a) -> const AgentLabel* {
    if (a.authors.size() != 1) return nullptr;
    auto it = labels.find(*a.authors.begin());
    return it == labels.end() ? nullptr : it->second;
  };
  std::array<double, 10> honest_sum{};
  std::array<std::size_t, 10> honest_n{};
  std::map<std::uint32_t, std::vector<std::pair<double, std::size_t>>> clique_articles;
  for (const auto& [id, article] : state.articles) {
    const auto* label = sole_author_label(article);
    auto q = truth.quality.find(id);
    if (!label || q == truth.quality.end()) continue;
    if (label->strategy == Strategy::Honest) {
      honest_sum[decile(q->second)] += static_cast<double>(importance_of[id]);
      ++honest_n[decile(q->second)];
    } else if (label->clique) {
      clique_articles[*label->clique].push_back({q->second, importance_of[id]});
    }
  }
  std::map<std::uint32_t, std::size_t> clique_size;
  for (const auto& l : truth.agents) {
    if (l.clique) ++clique_size[*l.clique];
  }
  for (const auto& [clique, members] : clique_size) {
    CliqueInflation ci;
    ci.clique = clique;
    ci.members = members;
    const auto& arts = clique_articles[clique];
    ci.articles = arts.size();
    double sum = 0, matched_sum = 0, matched_base = 0;
    std::size_t matched = 0;
    for (const auto& [q, imp] : arts) {
      sum += static_cast<double>(imp);
      ci.max_importance = std::max(ci.max_importance, imp);
      const int d = decile(q);
      if (honest_n[d] == 0) continue;
      matched_sum += static_cast<double>(imp);
      matched_base += honest_sum[d] / static_cast<double>(honest_n[d]);
      ++matched;
    }
    if (!arts.empty()) ci.mean_importance = sum / static_cast<double>(arts.size());
    if (matched > 0) {
      ci.baseline = matched_base / static_cast<double>(matched);
      if (*ci.baseline > 0) ci.inflation = (matched_sum / static_cast<double>(matched)) / *ci.baseline;
    }
    report.inflation.push_back(ci);
  }

  auto anomalies = anomaly_report(state, params.detector);
  if (!anomalies) throw std::invalid_argument(anomalies.error().message);
  std::set<ScholarId> flagged;
  for (const auto& g : anomalies->groups) flagged.insert(g.members.begin(), g.members.end());
  for (const auto& p : anomalies->pairs) {
    flagged.insert(p.a);
    flagged.insert(p.b);
  }
  std::size_t true_positive = 0;
  for (const auto& l : truth.agents) {
    if (l.strategy != Strategy::Colluder) continue;
    ++report.colluders;
    if (flagged.count(l.scholar)) ++true_positive;
  }
  report.flagged_scholars = flagged.size();
  report.flagged_groups = anomalies->groups.size();
  report.flagged_pairs = anomalies->pairs.size();
  report.detector_precision = ratio(true_positive, flagged.size());
  report.detector_recall = ratio(true_positive, report.colluders);
  return report;
}

struct ScenarioResult {
  std::vector<Event> log;
  GroundTruth truth;
  ScenarioReport report;
};

namespace detail {

inline std::string round_timestamp(std::uint32_t round) {
  using namespace std::chrono;
  const year_month_day ymd{sys_days{year{2016} / January / 1} + days{round}};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT00:00:00Z", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

class Simulator {
 public:
  explicit Simulator(const ScenarioConfig& cfg) : cfg_(cfg) {
    world_.config = &cfg_;
    world_.state.config.min_issue_size = cfg.min_issue_size;
    world_.authored.resize(cfg.agents.size());
    for (const auto& spec : cfg.agents) {
      agents_.emplace_back(spec, cfg.seed);
      if (spec.clique) {
        if (world_.clique_members.size() <= *spec.clique) world_.clique_members.resize(*spec.clique + 1);
        world_.clique_members[*spec.clique].push_back(spec.index);
      }
    }
  }

  ScenarioResult run() {
    for (const auto& a : agents_) {
      commit({{events::ScholarRegistered{a.id, std::string(strategy_name(a.spec.strategy)) + " agent " +
                                                     std::to_string(a.spec.index)}}});
    }
    for (std::uint32_t r = 0; r < cfg_.rounds; ++r) {
      world_.round = r;
      for (auto& agent : agents_) commit(agent_round(world_, agent));
    }

    ScenarioResult result;
    for (const auto& a : agents_) result.truth.agents.push_back({a.id, a.spec.strategy, a.spec.clique});
    for (const auto& art : world_.articles) result.truth.quality.emplace(art.id, art.quality);
    EvaluationParams params{cfg_.detector, cfg_.validity_min_voters, world_.state.config};
    auto report = evaluate(log_, result.truth, params);
    if (!report) {
      throw std::logic_error("simulated log failed to replay at seq " +
                             std::to_string(report.error().seq));
    }
    result.report = std::move(*report);
    result.report.dropped_intentions = dropped_;
    result.log = std::move(log_);
    return result;
  }

 private:
  void commit(std::vector<Intent> intents) {
    for (auto& in : intents) {
      Event event{world_.state.last_seq + 1, round_timestamp(world_.round), std::move(in.payload)};
      if (auto v = apply(world_.state, event)) {
        ++dropped_[std::string(rule_name(v->rule))];
        continue;
      }
      observe(event, in);
      log_.push_back(std::move(event));
    }
  }

  // Mirrors an accepted event into the simulator's latent bookkeeping.
  void observe(const Event& event, const Intent& in) {
    std::visit(overloaded{
                   [&](const events::ArticleSubmitted& e) {
                     const auto idx = static_cast<std::uint32_t>(world_.articles.size());
                     const auto author = agent_of(e.authors.front());
                     world_.articles.push_back({e.article, e.uri, author, in.quality, 1, {}, {}, 0});
                     world_.article_index.emplace(e.article, idx);
                     world_.authored[author].push_back(idx);
                   },
                   [&](const events::ArticleRevised& e) {
                     auto& art = world_.articles[world_.article_index.at(e.article)];
                     art.version = e.version;
                     for (const auto& r : e.acknowledged) art.acknowledged.insert(world_.review_index.at(r));
                   },
                   [&](const events::ReviewPosted& e) {
                     const auto idx = static_cast<std::uint32_t>(world_.reviews.size());
                     const auto article = world_.article_index.at(e.article);
                     world_.reviews.push_back({e.review, article, agent_of(e.reviewer), e.version, in.negative});
                     world_.review_index.emplace(e.review, idx);
                     world_.articles[article].reviews.push_back(idx);
                   },
                   [&](const events::PriorityToggled& e) {
                     auto uri = ItemUri::parse(e.item);
                     auto it = world_.state.article_by_uri.find(*uri);
                     if (it == world_.state.article_by_uri.end()) return;
                     auto& art = world_.articles[world_.article_index.at(it->second)];
                     art.priority = e.active ? art.priority + 1 : art.priority - 1;
                   },
                   [](const auto&) {},
               },
               event.payload);
  }

  static std::uint32_t agent_of(const ScholarId& id) {
    return static_cast<std::uint32_t>(std::stoul(id.str().substr(1)));
  }

  const ScenarioConfig& cfg_;
  World world_;
  std::vector<AgentState> agents_;
  std::vector<Event> log_;
  std::map<std::string, std::size_t> dropped_;
};

}  // namespace detail

/// Generates a log from `config` and scores it. Identical configs give
/// byte-identical logs and reports. Throws ConfigError on an invalid config.
inline ScenarioResult run_scenario(const ScenarioConfig& config) {
  validate(config);
  return detail::Simulator(config).run();
}

inline nlohmann::json to_json(const ScenarioReport& r) {
  using nlohmann::json;
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  json inflation = json::array();
  for (const auto& c : r.inflation) {
    inflation.push_back({{"clique", c.clique},
                         {"members", c.members},
                         {"articles", c.articles},
                         {"mean_importance", c.mean_importance},
                         {"max_importance", c.max_importance},
                         {"baseline", opt(c.baseline)},
                         {"inflation", opt(c.inflation)}});
  }
  return {{"digest", r.digest.hex},
          {"articles", r.articles},
          {"spearman_quality_importance", opt(r.spearman_quality_importance)},
          {"articles_with_votes", r.articles_with_votes},
          {"spearman_quality_validity", opt(r.spearman_quality_validity)},
          {"clique_inflation", inflation},
          {"detector",
           {{"colluders", r.colluders},
            {"flagged_scholars", r.flagged_scholars},
            {"flagged_groups", r.flagged_groups},
            {"flagged_pairs", r.flagged_pairs},
            {"precision", opt(r.detector_precision)},
            {"recall", opt(r.detector_recall)}}},
          {"event_counts", r.event_counts},
          {"total_events", r.total_events},
          {"dropped_intentions", r.dropped_intentions}};
}

}  // namespace openrev::sim
