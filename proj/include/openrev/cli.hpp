#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "openrev/openrev.hpp"

// Batch front end. Payloads go to `out`, diagnostics to `err`; every command
// returns one of the exit codes below.
namespace openrev::cli {

enum ExitCode : int {
  kOk = 0,
  kViolation = 1,
  kUsage = 2,
  kIoError = 3,
};

enum class Format { Json, Csv };

struct LogOptions {
  std::string path;
  bool permissive = false;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path);
  return std::move(ss).str();
}

inline void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out.flush()) throw IoError("cannot write " + path);
}

namespace detail {

struct Replayed {
  EngineState state;
  std::size_t events = 0;
  std::vector<Seq> skipped;
};

inline nlohmann::json violation_json(const ReplayError& e) {
  return {{"status", "violation"},
          {"seq", e.seq},
          {"rule", std::string(rule_name(e.violation.rule))},
          {"detail", e.violation.detail}};
}

// Loads and replays; on failure reports and sets `code`.
inline std::optional<Replayed> load_state(const LogOptions& opts, std::ostream& out,
                                          std::ostream& err, int& code) {
  LoadedLog log;
  try {
    log = load_log(read_file(opts.path), LoadOptions{!opts.permissive});
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    code = kIoError;
    return std::nullopt;
  } catch (const ParseError& e) {
    err << "error: " << opts.path << ": " << e.what() << "\n";
    code = kIoError;
    return std::nullopt;
  }
  auto state = replay(log.events, ProtocolConfig{}, log.skipped);
  if (!state) {
    const auto& v = state.error();
    err << "error: seq " << v.seq << " violates " << rule_name(v.violation.rule) << ": "
        << v.violation.detail << "\n";
    out << violation_json(v).dump(2) << "\n";
    code = kViolation;
    return std::nullopt;
  }
  if (!log.skipped.empty()) {
    err << "warning: skipped " << log.skipped.size() << " event(s) of unknown kind\n";
  }
  return Replayed{std::move(*state), log.events.size(), std::move(log.skipped)};
}

}  // namespace detail

inline int cmd_validate(const LogOptions& opts, std::ostream& out, std::ostream& err) {
  int code = kOk;
  auto r = detail::load_state(opts, out, err, code);
  if (!r) return code;
  const auto d = digest(r->state);
  out << nlohmann::json{{"status", "ok"},
                        {"digest", d.hex},
                        {"events", r->events},
                        {"last_seq", r->state.last_seq},
                        {"skipped", r->skipped}}
             .dump(2)
      << "\n";
  err << "ok: " << r->events << " events, " << d.hex << "\n";
  return kOk;
}

struct MetricsOptions {
  LogOptions log;
  std::optional<std::string> item;
  std::optional<std::string> article;
  Format format = Format::Json;
};

inline int cmd_metrics(const MetricsOptions& opts, std::ostream& out, std::ostream& err) {
  std::optional<ItemUri> item;
  if (opts.item) {
    item = ItemUri::parse(*opts.item);
    if (!item) {
      err << "error: --item is not a valid URI: " << *opts.item << "\n";
      return kUsage;
    }
  }
  int code = kOk;
  auto r = detail::load_state(opts.log, out, err, code);
  if (!r) return code;

  std::vector<ItemMetrics> records;
  if (opts.article) {
    const Article* a = r->state.find_article(ArticleId(*opts.article));
    if (!a) {
      err << "error: unknown article " << *opts.article << "\n";
      return kViolation;
    }
    records.push_back(item_metrics(r->state, a->canonical_uri));
  } else if (item) {
    records.push_back(item_metrics(r->state, *item));
  } else {
    records = all_item_metrics(r->state);
  }
  if (opts.format == Format::Csv) {
    out << metrics_csv(records);
  } else {
    out << metrics_json(records).dump(2) << "\n";
  }
  err << records.size() << " item(s)\n";
  return kOk;
}

struct DetectOptions {
  LogOptions log;
  AnomalyParams params;
};

inline int cmd_detect(const DetectOptions& opts, std::ostream& out, std::ostream& err) {
  // Range errors are usage errors; check them before touching the log.
  const auto& p = opts.params;
  if (auto bad = check(p)) {
    err << "error: " << bad->message << "\n";
    return kUsage;
  }
  int code = kOk;
  auto r = detail::load_state(opts.log, out, err, code);
  if (!r) return code;
  auto report = anomaly_report(r->state, p);
  if (!report) {
    err << "error: " << report.error().message << "\n";
    return kUsage;
  }
  out << to_json(*report).dump(2) << "\n";
  err << report->pairs.size() << " flagged pair(s), " << report->groups.size()
      << " flagged group(s)\n";
  return kOk;
}

struct SimulateOptions {
  std::string config_path;
  std::string log_path;
  std::optional<std::string> report_path;
  std::optional<std::uint64_t> seed;
};

inline int cmd_simulate(const SimulateOptions& opts, std::ostream& out, std::ostream& err) {
  sim::ScenarioConfig config;
  try {
    auto j = nlohmann::json::parse(read_file(opts.config_path));
    config = sim::parse_config(j);
    if (opts.seed) config.seed = *opts.seed;
    sim::validate(config);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const nlohmann::json::parse_error& e) {
    err << "error: " << opts.config_path << ": " << e.what() << "\n";
    return kIoError;
  } catch (const sim::ConfigError& e) {
    err << "error: " << opts.config_path << ": " << e.what() << "\n";
    return kUsage;
  }
  auto result = sim::run_scenario(config);
  const auto report = sim::to_json(result.report).dump(2) + "\n";
  try {
    write_file(opts.log_path, save_log(result.log));
    if (opts.report_path) write_file(*opts.report_path, report);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  }
  out << report;
  err << "wrote " << result.log.size() << " events to " << opts.log_path << "\n";
  return kOk;
}

struct GraphOptions {
  LogOptions log;
  Format format = Format::Json;
};

inline int cmd_export_graph(const GraphOptions& opts, std::ostream& out, std::ostream& err) {
  int code = kOk;
  auto r = detail::load_state(opts.log, out, err, code);
  if (!r) return code;
  const auto edges = edge_list(curation_graph(r->state));
  if (opts.format == Format::Csv) {
    out << edges_csv(edges);
  } else {
    out << edges_json(edges).dump(2) << "\n";
  }
  err << edges.size() << " edge(s)\n";
  return kOk;
}

/// Parses `argv` and dispatches to one command.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"openrev: event-sourced open peer review and self-journal engine"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "openrev 0.1.0");

  const std::map<std::string, Format> formats{{"json", Format::Json}, {"csv", Format::Csv}};

  auto add_log_options = [](CLI::App* cmd, LogOptions& log) {
    cmd->add_option("log", log.path, "event log (JSON Lines)")->required();
    auto* strict = cmd->add_flag("--strict", "reject lines of unknown kind (default)");
    auto* permissive =
        cmd->add_flag("--permissive", log.permissive, "skip lines of unknown kind");
    strict->excludes(permissive);
  };

  LogOptions validate_opts;
  auto* validate = app.add_subcommand("validate", "replay a log and print its state digest");
  add_log_options(validate, validate_opts);

  MetricsOptions metrics_opts;
  auto* metrics = app.add_subcommand("metrics", "per-item validity, importance and priority");
  add_log_options(metrics, metrics_opts.log);
  auto* item_opt = metrics->add_option("--item", metrics_opts.item, "restrict to one item URI");
  metrics->add_option("--article", metrics_opts.article, "restrict to one hosted article id")
      ->excludes(item_opt);
  metrics->add_option("--format", metrics_opts.format, "json or csv")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));

  DetectOptions detect_opts;
  auto* detect = app.add_subcommand("detect", "reciprocity and dense-group anomaly report");
  add_log_options(detect, detect_opts.log);
  detect->add_option("--theta", detect_opts.params.theta, "pair reciprocity threshold")
      ->capture_default_str();
  detect->add_option("--delta", detect_opts.params.delta, "group density threshold")
      ->capture_default_str();
  detect->add_option("--min-size", detect_opts.params.min_size, "smallest reported group")
      ->capture_default_str();
  detect->add_option("--min-edge-share", detect_opts.params.min_edge_share,
                     "drop edges below this share of the curator's peer curation")
      ->capture_default_str();
  detect->add_option("--format", "json only")->check(CLI::IsMember({"json"}));

  SimulateOptions sim_opts;
  auto* simulate = app.add_subcommand("simulate", "run a scenario, write its log, print its report");
  simulate->add_option("config", sim_opts.config_path, "scenario config (JSON)")->required();
  simulate->add_option("out", sim_opts.log_path, "where to write the event log")->required();
  simulate->add_option("--seed", sim_opts.seed, "override the config seed");
  simulate->add_option("--report", sim_opts.report_path, "also write the report here");
  simulate->add_option("--format", "json only")->check(CLI::IsMember({"json"}));

  GraphOptions graph_opts;
  auto* graph = app.add_subcommand("export-graph", "curation, authorship and review edges");
  add_log_options(graph, graph_opts.log);
  graph->add_option("--format", graph_opts.format, "json or csv")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Help and version requests come through here with exit code 0.
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  if (validate->parsed()) return cmd_validate(validate_opts, out, err);
  if (metrics->parsed()) return cmd_metrics(metrics_opts, out, err);
  if (detect->parsed()) return cmd_detect(detect_opts, out, err);
  if (simulate->parsed()) return cmd_simulate(sim_opts, out, err);
  return cmd_export_graph(graph_opts, out, err);
}

}  // namespace openrev::cli
