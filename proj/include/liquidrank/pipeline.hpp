/*
 * Copyright 2026 The liquidrank Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// The four pipeline stages behind the command-line tool. Each stage reads
// its inputs from disk, writes its artifacts into an output directory and
// returns what it wrote. Errors surface as liquidrank::Error subclasses.

#pragma once

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "liquidrank/chart.hpp"
#include "liquidrank/digest.hpp"
#include "liquidrank/error.hpp"
#include "liquidrank/eval.hpp"
#include "liquidrank/graph.hpp"
#include "liquidrank/ingest.hpp"
#include "liquidrank/io.hpp"
#include "liquidrank/rank.hpp"

namespace liquidrank::pipeline {

namespace fs = std::filesystem;

inline constexpr int kManifestSchemaVersion = 1;

inline constexpr const char* kInteractionsFile = "interactions.csv";
inline constexpr const char* kIngestManifestFile = "manifest.json";
inline constexpr const char* kRankManifestFile = "rank_manifest.json";
inline constexpr const char* kGraphFile = "graph.csv";
inline constexpr const char* kReputationFile = "reputation.json";

inline std::string ranking_file_name(RankMethod m) {
  return "ranking_" + std::string(to_string(m)) + ".csv";
}

inline std::string_view to_string(InputFormat f) {
  return f == InputFormat::jsonl ? "jsonl" : "csv";
}

inline InputFormat parse_input_format(std::string_view s) {
  if (s == "jsonl") return InputFormat::jsonl;
  if (s == "csv") return InputFormat::csv;
  throw ValidationError("unknown input format: " + std::string(s));
}

namespace detail {

class StageTimer {
 public:
  void mark(const std::string& stage) {
    const auto now = std::chrono::steady_clock::now();
    timings_[stage] =
        std::chrono::duration<double, std::milli>(now - last_).count();
    last_ = now;
  }
  nlohmann::json json() const { return timings_; }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
  std::map<std::string, double> timings_;
};

inline void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
}

inline nlohmann::json outputs_json(const std::map<std::string, fs::path>& outputs) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [name, path] : outputs) out[name] = path.string();
  return out;
}

}  // namespace detail

// ---- ingest ----------------------------------------------------------------

struct IngestOptions {
  fs::path input;
  InputFormat format = InputFormat::jsonl;
  ParseMode mode = ParseMode::strict;
  fs::path out_dir = ".";
};

struct IngestResult {
  std::size_t tweet_count = 0;
  std::size_t interaction_count = 0;
  std::vector<LineIssue> malformed;
  fs::path interactions;
  fs::path manifest;
};

inline IngestResult run_ingest(const IngestOptions& opt) {
  detail::StageTimer timer;
  const std::string raw = io::read_file(opt.input);
  timer.mark("read");
  auto parsed = parse_tweets(raw, opt.format, opt.mode, opt.input.string());
  timer.mark("parse");
  const auto interactions = to_interactions(parsed.records);
  const auto graph = build_graph(interactions);
  timer.mark("extract");

  detail::ensure_dir(opt.out_dir);
  IngestResult result;
  result.tweet_count = parsed.records.size();
  result.interaction_count = interactions.size();
  result.malformed = std::move(parsed.malformed);
  result.interactions = opt.out_dir / kInteractionsFile;
  io::write_file(result.interactions, write_interactions(interactions));
  timer.mark("write");

  nlohmann::json malformed = nlohmann::json::array();
  for (const auto& m : result.malformed) {
    malformed.push_back({{"line", m.line}, {"reason", m.reason}});
  }
  const nlohmann::json manifest = {
      {"schema_version", kManifestSchemaVersion},
      {"command", "ingest"},
      {"config",
       {{"input", opt.input.string()},
        {"format", std::string(to_string(opt.format))},
        {"strict", opt.mode == ParseMode::strict},
        {"out_dir", opt.out_dir.string()}}},
      {"input_digest", "sha256:" + sha256_hex(raw)},
      {"tweet_count", result.tweet_count},
      {"record_count", result.interaction_count},
      {"malformed_count", result.malformed.size()},
      {"malformed", std::move(malformed)},
      {"node_count", graph.node_count()},
      {"edge_count", graph.edge_count()},
      {"outputs", {{"interactions", result.interactions.string()}}},
      {"timings_ms", timer.json()}};
  result.manifest = opt.out_dir / kIngestManifestFile;
  io::write_file(result.manifest, manifest.dump(2) + "\n");
  return result;
}

// ---- rank ------------------------------------------------------------------

struct RankOptions {
  // Interaction CSV or graph snapshot CSV; defaults to
  // <out_dir>/interactions.csv.
  std::optional<fs::path> input;
  std::optional<Timestamp> window_start;
  std::optional<Timestamp> window_end;
  RankParams params;
  std::vector<RankMethod> methods{RankMethod::mentions, RankMethod::liquid,
                                  RankMethod::product};
  ParseMode mode = ParseMode::strict;
  fs::path out_dir = ".";
};

struct RankResult {
  std::map<RankMethod, RankedList> rankings;
  std::optional<ReputationState> reputation;
  std::map<std::string, fs::path> outputs;
  std::size_t record_count = 0;
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  std::vector<std::string> warnings;
};

inline std::vector<RankMethod> parse_method_selection(std::string_view s) {
  if (s == "all") {
    return {RankMethod::mentions, RankMethod::liquid, RankMethod::product};
  }
  return {parse_rank_method(s)};
}

inline RankResult run_rank(const RankOptions& opt) {
  opt.params.validate();
  detail::StageTimer timer;
  const fs::path input = opt.input.value_or(opt.out_dir / kInteractionsFile);
  const std::string raw = io::read_file(input);
  timer.mark("read");

  TimeWindow window = TimeWindow::unbounded();
  if (opt.window_start || opt.window_end) {
    window = TimeWindow::make(opt.window_start.value_or(0),
                              opt.window_end.value_or(TimeWindow::kUnbounded));
  }

  RankResult result;
  RatingGraph graph;
  const bool is_snapshot = raw.rfind("rater,ratee,weight", 0) == 0;
  if (is_snapshot) {
    if (opt.window_start || opt.window_end) {
      throw ValidationError("time window flags do not apply to a graph snapshot");
    }
    graph = io::parse_graph_csv(raw, input.string());
    result.record_count = static_cast<std::size_t>(graph.total_weight());
  } else {
    auto parsed = parse_interactions(raw, opt.mode, input.string());
    for (const auto& m : parsed.malformed) {
      result.warnings.push_back(input.string() + ":" + std::to_string(m.line) +
                                ": skipped: " + m.reason);
    }
    graph = build_graph(parsed.records, window);
    result.record_count = static_cast<std::size_t>(graph.total_weight());
  }
  timer.mark("graph");
  result.node_count = graph.node_count();
  result.edge_count = graph.edge_count();
  if (graph.edge_count() == 0) {
    throw EmptyGraph("no interactions inside the time window; nothing to rank");
  }

  auto wants = [&](RankMethod m) {
    return std::find(opt.methods.begin(), opt.methods.end(), m) != opt.methods.end();
  };
  const bool need_liquid = wants(RankMethod::liquid) || wants(RankMethod::product);
  const bool need_mentions = wants(RankMethod::mentions) || wants(RankMethod::product);

  std::optional<RankedList> mentions;
  std::optional<RankedList> liquid;
  if (need_mentions) {
    mentions = mention_rank(graph);
    timer.mark("mentions");
  }
  if (need_liquid) {
    result.reputation = liquid_rank(graph, opt.params);
    liquid = to_ranked_list(*result.reputation);
    timer.mark("liquid");
    if (!result.reputation->converged) {
      result.warnings.push_back(
          "liquid rank did not converge after " +
          std::to_string(result.reputation->iterations) +
          " iterations (final delta " + io::format_score(result.reputation->final_delta) +
          ")");
    }
  }
  if (wants(RankMethod::mentions)) result.rankings[RankMethod::mentions] = *mentions;
  if (wants(RankMethod::liquid)) result.rankings[RankMethod::liquid] = *liquid;
  if (wants(RankMethod::product)) {
    result.rankings[RankMethod::product] = product_rank(*mentions, *liquid);
    timer.mark("product");
  }

  detail::ensure_dir(opt.out_dir);
  result.outputs["graph"] = opt.out_dir / kGraphFile;
  io::write_file(result.outputs["graph"], io::write_graph_csv(graph));
  for (const auto& [method, list] : result.rankings) {
    const fs::path path = opt.out_dir / ranking_file_name(method);
    io::write_file(path, io::write_ranking_csv(list));
    result.outputs["ranking_" + std::string(to_string(method))] = path;
  }
  if (result.reputation) {
    const fs::path path = opt.out_dir / kReputationFile;
    io::write_file(path, io::reputation_json(*result.reputation, graph.window(),
                                             opt.params));
    result.outputs["reputation"] = path;
  }
  timer.mark("write");

  nlohmann::json methods = nlohmann::json::array();
  for (auto m : opt.methods) methods.push_back(std::string(to_string(m)));
  nlohmann::json config = {{"input", input.string()},
                           {"input_kind", is_snapshot ? "graph" : "interactions"},
                           {"window", io::window_json(graph.window())},
                           {"params", io::params_json(opt.params)},
                           {"methods", std::move(methods)},
                           {"strict", opt.mode == ParseMode::strict},
                           {"out_dir", opt.out_dir.string()}};
  nlohmann::json manifest = {{"schema_version", kManifestSchemaVersion},
                             {"command", "rank"},
                             {"config", std::move(config)},
                             {"input_digest", "sha256:" + sha256_hex(raw)},
                             {"record_count", result.record_count},
                             {"node_count", result.node_count},
                             {"edge_count", result.edge_count},
                             {"outputs", detail::outputs_json(result.outputs)},
                             {"timings_ms", timer.json()}};
  if (result.reputation) {
    manifest["liquid"] = {{"iterations", result.reputation->iterations},
                          {"final_delta", result.reputation->final_delta},
                          {"converged", result.reputation->converged}};
  }
  io::write_file(opt.out_dir / kRankManifestFile, manifest.dump(2) + "\n");
  return result;
}

// ---- evaluate --------------------------------------------------------------

struct EvaluateOptions {
  std::vector<fs::path> rankings;
  fs::path judgments;
  std::size_t k = 50;
  int relevance_threshold = JudgmentSet::kDefaultThreshold;
  fs::path out_dir = ".";
};

struct EvaluateResult {
  std::vector<MetricReport> reports;
  std::vector<fs::path> report_files;
  double mean_reciprocal_rank = 0;
  std::string table;
};

inline std::string format_table(const std::vector<MetricReport>& reports,
                                const std::vector<fs::path>& sources,
                                double mrr) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-10s %5s %10s %10s %10s %13s  %s\n", "method",
                "k", "precision", "avg_prec", "recip_rank", "found/total",
                "ranking");
  out += line;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    const std::string found =
        std::to_string(r.relevant_found) + "/" + std::to_string(r.relevant_total);
    std::snprintf(line, sizeof line, "%-10s %5zu %10.4f %10.4f %10.4f %13s  %s\n",
                  r.method.c_str(), r.k, r.precision, r.average_precision,
                  r.reciprocal_rank, found.c_str(),
                  sources[i].filename().string().c_str());
    out += line;
  }
  std::snprintf(line, sizeof line, "mean reciprocal rank over %zu ranking(s): %.4f\n",
                reports.size(), mrr);
  out += line;
  return out;
}

inline EvaluateResult run_evaluate(const EvaluateOptions& opt) {
  if (opt.k < 1) throw ValidationError("k must be at least 1");
  if (opt.rankings.empty()) throw EmptyInput();
  const auto judgments = io::parse_judgments_csv(
      io::read_file(opt.judgments), opt.relevance_threshold, opt.judgments.string());

  std::vector<RankedList> lists;
  for (const auto& path : opt.rankings) {
    lists.push_back(io::parse_ranking_csv(io::read_file(path), path.string()));
  }

  detail::ensure_dir(opt.out_dir);
  EvaluateResult result;
  for (std::size_t i = 0; i < lists.size(); ++i) {
    if (lists[i].empty()) throw EmptyRanking();
    auto report = evaluate(lists[i], judgments, opt.k);
    const fs::path out =
        opt.out_dir / (opt.rankings[i].stem().string() + ".report.json");
    io::write_file(out, io::report_json(report).dump(2) + "\n");
    result.reports.push_back(std::move(report));
    result.report_files.push_back(out);
  }
  result.mean_reciprocal_rank = mean_reciprocal_rank(lists, judgments);
  result.table = format_table(result.reports, opt.rankings, result.mean_reciprocal_rank);
  return result;
}

// ---- report ----------------------------------------------------------------

enum class ChartFormat { txt, svg };

inline ChartFormat parse_chart_format(std::string_view s) {
  if (s == "txt") return ChartFormat::txt;
  if (s == "svg") return ChartFormat::svg;
  throw ValidationError("unknown chart format: " + std::string(s));
}

struct ReportOptions {
  std::vector<fs::path> rankings;
  ChartFormat format = ChartFormat::txt;
  std::size_t k = 50;
  fs::path out_dir = ".";
};

inline std::vector<fs::path> run_report(const ReportOptions& opt) {
  if (opt.k < 1) throw ValidationError("k must be at least 1");
  detail::ensure_dir(opt.out_dir);
  std::vector<fs::path> written;
  for (const auto& path : opt.rankings) {
    const auto list = io::parse_ranking_csv(io::read_file(path), path.string());
    const std::string title = path.stem().string();
    const bool svg = opt.format == ChartFormat::svg;
    const fs::path out = opt.out_dir / (title + (svg ? ".svg" : ".txt"));
    io::write_file(out, svg ? chart::render_svg(list, opt.k, title)
                            : chart::render_text(list, opt.k, title));
    written.push_back(out);
  }
  return written;
}

}  // namespace liquidrank::pipeline
