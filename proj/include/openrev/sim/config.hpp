#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "openrev/anomaly.hpp"

namespace openrev::sim {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Strategy { Honest, Spammer, Colluder, FriendBiased, FreeRider };

constexpr std::string_view strategy_name(Strategy s) noexcept {
  switch (s) {
    case Strategy::Honest: return "honest";
    case Strategy::Spammer: return "spammer";
    case Strategy::Colluder: return "colluder";
    case Strategy::FriendBiased: return "friend_biased";
    case Strategy::FreeRider: return "free_rider";
  }
  return "unknown";
}

inline std::optional<Strategy> parse_strategy(std::string_view s) {
  for (auto v : {Strategy::Honest, Strategy::Spammer, Strategy::Colluder, Strategy::FriendBiased,
                 Strategy::FreeRider}) {
    if (strategy_name(v) == s) return v;
  }
  return std::nullopt;
}

struct Activity {
  double articles_per_round = 0.2;
  double reviews_per_round = 1.0;
  std::uint32_t reading_capacity = 10;  // R
  std::uint32_t issue_cadence = 5;      // rounds between issues
};

struct AgentSpec {
  std::uint32_t index = 0;  // position in the agent list; also the scheduling order
  Strategy strategy = Strategy::Honest;
  std::optional<std::uint32_t> clique;  // colluders only
  std::set<std::uint32_t> friends;      // friend-biased only
  Activity activity;
};

struct QualityModel {
  double alpha = 2.0;  // Beta shape parameters of latent quality
  double beta = 5.0;
  double perception_noise = 0.1;  // sigma of the Gaussian added per (agent, article)
};

struct Behavior {
  double reached_cutoff = 0.5;        // perceived quality needed for a REACHED vote
  double priority_cutoff = 0.6;       // perceived quality that triggers a priority mark
  double vote_probability = 0.3;      // chance of a validity vote per article read
  double review_vote_probability = 0.3;
  double revision_probability = 0.2;  // chance per round of revising a criticised article
  double subscribe_probability = 0.1;
  std::uint32_t issue_size = 4;       // entries per honest issue (at least min_issue_size)
  std::uint32_t spam_issue_size = 12;
  double spam_external_share = 0.5;   // share of spam entries pointing off-platform
  std::uint32_t candidate_factor = 3; // sampled candidates per reading slot
};

struct ScenarioConfig {
  std::uint64_t seed = 0;
  std::uint32_t rounds = 0;
  std::vector<AgentSpec> agents;
  QualityModel quality;
  Behavior behavior;
  std::size_t min_issue_size = 4;
  std::size_t validity_min_voters = 5;  // articles below this are left out of the validity correlation
  AnomalyParams detector;
};

namespace detail {

class Fields {
 public:
  Fields(const nlohmann::json& j, std::string context) : j_(j), context_(std::move(context)) {
    if (!j.is_object()) throw ConfigError(context_ + ": expected an object");
    for (const auto& [k, v] : j.items()) pending_.insert(k);
  }

  bool has(const char* key) const { return j_.contains(key); }

  const nlohmann::json* get(const char* key) {
    auto it = j_.find(key);
    if (it == j_.end()) return nullptr;
    pending_.erase(key);
    return &*it;
  }

  template <typename T>
  void read(const char* key, T& out) {
    const auto* v = get(key);
    if (!v) return;
    if constexpr (std::is_floating_point_v<T>) {
      if (!v->is_number()) fail(key, "must be a number");
      out = v->get<T>();
    } else if constexpr (std::is_integral_v<T>) {
      if (!v->is_number_unsigned()) fail(key, "must be a non-negative integer");
      out = v->get<T>();
    }
  }

  void done() const {
    if (!pending_.empty()) throw ConfigError(context_ + ": unknown key '" + *pending_.begin() + "'");
  }

  [[noreturn]] void fail(const char* key, const std::string& why) const {
    throw ConfigError(context_ + "." + key + " " + why);
  }

 private:
  const nlohmann::json& j_;
  std::string context_;
  std::set<std::string> pending_;
};

inline Activity read_activity(const nlohmann::json& j, Activity a, const std::string& ctx) {
  Fields f(j, ctx);
  f.read("articles_per_round", a.articles_per_round);
  f.read("reviews_per_round", a.reviews_per_round);
  f.read("reading_capacity", a.reading_capacity);
  f.read("issue_cadence", a.issue_cadence);
  f.done();
  return a;
}

}  // namespace detail

/// Checks ranges and cross-references; throws ConfigError.
inline void validate(const ScenarioConfig& c) {
  auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (c.quality.alpha <= 0 || c.quality.beta <= 0) throw ConfigError("quality shapes must be > 0");
  if (c.quality.perception_noise < 0) throw ConfigError("perception_noise must be >= 0");
  const auto& b = c.behavior;
  if (!unit(b.reached_cutoff) || !unit(b.priority_cutoff) || !unit(b.vote_probability) ||
      !unit(b.review_vote_probability) || !unit(b.revision_probability) ||
      !unit(b.subscribe_probability) || !unit(b.spam_external_share)) {
    throw ConfigError("behavior probabilities and cutoffs must lie in [0, 1]");
  }
  if (c.min_issue_size == 0) throw ConfigError("min_issue_size must be positive");
  if (b.candidate_factor == 0) throw ConfigError("candidate_factor must be positive");
  if (!(c.detector.theta > 0 && c.detector.theta <= 1) ||
      !(c.detector.delta > 0 && c.detector.delta <= 1) || c.detector.min_size < 2 ||
      !unit(c.detector.min_edge_share)) {
    throw ConfigError("detector parameters out of range");
  }
  std::map<std::uint32_t, std::size_t> clique_sizes;
  for (std::size_t i = 0; i < c.agents.size(); ++i) {
    const auto& a = c.agents[i];
    if (a.index != i) throw ConfigError("agent indices must be 0..n-1 in order");
    if (a.activity.articles_per_round < 0 || a.activity.reviews_per_round < 0) {
      throw ConfigError("activity rates must be >= 0");
    }
    if (a.activity.issue_cadence == 0) throw ConfigError("issue_cadence must be positive");
    if ((a.strategy == Strategy::Colluder) != a.clique.has_value()) {
      throw ConfigError("agent " + std::to_string(i) + ": clique is required for colluders only");
    }
    if (a.clique) ++clique_sizes[*a.clique];
    for (auto f : a.friends) {
      if (f >= c.agents.size() || f == i) {
        throw ConfigError("agent " + std::to_string(i) + ": invalid friend " + std::to_string(f));
      }
    }
  }
  for (const auto& [id, n] : clique_sizes) {
    if (n < 2) throw ConfigError("clique " + std::to_string(id) + " has fewer than 2 members");
  }
}

/// Parses a scenario document. Either "population" (counts per strategy) or
/// "agents" (explicit list) describes who takes part.
inline ScenarioConfig parse_config(const nlohmann::json& j) {
  using detail::Fields;
  ScenarioConfig c;
  Fields top(j, "config");
  if (!top.has("seed")) throw ConfigError("config.seed is required");
  if (!top.has("rounds")) throw ConfigError("config.rounds is required");
  top.read("seed", c.seed);
  top.read("rounds", c.rounds);
  top.read("min_issue_size", c.min_issue_size);
  top.read("validity_min_voters", c.validity_min_voters);

  if (const auto* q = top.get("quality")) {
    Fields f(*q, "config.quality");
    f.read("alpha", c.quality.alpha);
    f.read("beta", c.quality.beta);
    f.read("perception_noise", c.quality.perception_noise);
    f.done();
  }
  c.behavior.issue_size = static_cast<std::uint32_t>(c.min_issue_size);
  if (const auto* b = top.get("behavior")) {
    Fields f(*b, "config.behavior");
    f.read("reached_cutoff", c.behavior.reached_cutoff);
    f.read("priority_cutoff", c.behavior.priority_cutoff);
    f.read("vote_probability", c.behavior.vote_probability);
    f.read("review_vote_probability", c.behavior.review_vote_probability);
    f.read("revision_probability", c.behavior.revision_probability);
    f.read("subscribe_probability", c.behavior.subscribe_probability);
    f.read("issue_size", c.behavior.issue_size);
    f.read("spam_issue_size", c.behavior.spam_issue_size);
    f.read("spam_external_share", c.behavior.spam_external_share);
    f.read("candidate_factor", c.behavior.candidate_factor);
    f.done();
  }
  if (const auto* d = top.get("detector")) {
    Fields f(*d, "config.detector");
    f.read("theta", c.detector.theta);
    f.read("delta", c.detector.delta);
    f.read("min_size", c.detector.min_size);
    f.read("min_edge_share", c.detector.min_edge_share);
    f.done();
  }
  Activity defaults;
  if (const auto* a = top.get("defaults")) defaults = detail::read_activity(*a, defaults, "config.defaults");

  const auto* population = top.get("population");
  const auto* agents = top.get("agents");
  if ((population != nullptr) == (agents != nullptr)) {
    throw ConfigError("config needs exactly one of 'population' or 'agents'");
  }
  auto add = [&](Strategy s) -> AgentSpec& {
    AgentSpec spec;
    spec.index = static_cast<std::uint32_t>(c.agents.size());
    spec.strategy = s;
    spec.activity = defaults;
    c.agents.push_back(spec);
    return c.agents.back();
  };
  if (population) {
    Fields f(*population, "config.population");
    std::uint32_t honest = 0, spammer = 0, free_rider = 0, friend_biased = 0, friends_per_agent = 3;
    f.read("honest", honest);
    f.read("spammer", spammer);
    f.read("free_rider", free_rider);
    f.read("friend_biased", friend_biased);
    f.read("friends_per_agent", friends_per_agent);
    std::vector<std::uint32_t> cliques;
    if (const auto* cl = f.get("cliques")) {
      if (!cl->is_array()) f.fail("cliques", "must be an array of clique sizes");
      for (const auto& n : *cl) {
        if (!n.is_number_unsigned()) f.fail("cliques", "must hold non-negative integers");
        cliques.push_back(n.get<std::uint32_t>());
      }
    }
    f.done();
    for (std::uint32_t i = 0; i < honest; ++i) add(Strategy::Honest);
    for (std::uint32_t k = 0; k < cliques.size(); ++k) {
      for (std::uint32_t i = 0; i < cliques[k]; ++i) add(Strategy::Colluder).clique = k;
    }
    for (std::uint32_t i = 0; i < spammer; ++i) add(Strategy::Spammer);
    // Friend-biased agents befriend the following agents in a ring over the
    // friend-biased block.
    const auto first_friend = static_cast<std::uint32_t>(c.agents.size());
    for (std::uint32_t i = 0; i < friend_biased; ++i) {
      auto& spec = add(Strategy::FriendBiased);
      for (std::uint32_t k = 1; k <= friends_per_agent && k < friend_biased; ++k) {
        spec.friends.insert(first_friend + (i + k) % friend_biased);
      }
    }
    for (std::uint32_t i = 0; i < free_rider; ++i) add(Strategy::FreeRider);
  } else {
    if (!agents->is_array()) throw ConfigError("config.agents must be an array");
    for (const auto& aj : *agents) {
      const std::string ctx = "config.agents[" + std::to_string(c.agents.size()) + "]";
      Fields f(aj, ctx);
      const auto* s = f.get("strategy");
      if (!s || !s->is_string()) throw ConfigError(ctx + ".strategy is required");
      auto strategy = parse_strategy(s->get<std::string>());
      if (!strategy) throw ConfigError(ctx + ".strategy unknown: " + s->get<std::string>());
      auto& spec = add(*strategy);
      if (const auto* cl = f.get("clique")) {
        if (!cl->is_number_unsigned()) f.fail("clique", "must be a non-negative integer");
        spec.clique = cl->get<std::uint32_t>();
      }
      if (const auto* fr = f.get("friends")) {
        if (!fr->is_array()) f.fail("friends", "must be an array of agent indices");
        for (const auto& x : *fr) {
          if (!x.is_number_unsigned()) f.fail("friends", "must hold agent indices");
          spec.friends.insert(x.get<std::uint32_t>());
        }
      }
      if (const auto* act = f.get("activity")) spec.activity = detail::read_activity(*act, defaults, ctx + ".activity");
      f.done();
    }
  }
  top.done();
  validate(c);
  return c;
}

}  // namespace openrev::sim
