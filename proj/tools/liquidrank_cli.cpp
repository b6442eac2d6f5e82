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

// liquidrank: ingest tweets, rank channels, evaluate and chart rankings.
//
// Exit codes: 0 success, 1 I/O failure, 2 malformed input or invalid
// arguments, 3 domain failure (empty graph, degenerate update).

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "liquidrank/liquidrank.hpp"

namespace lr = liquidrank;
namespace pl = liquidrank::pipeline;

namespace {

struct SharedFlags {
  std::string input;
  std::string format = "jsonl";
  std::optional<lr::Timestamp> window_start;
  std::optional<lr::Timestamp> window_end;
  double epsilon = lr::RankParams::kDefaultEpsilon;
  std::size_t max_iters = 1000;
  double alpha = 0.5;
  std::string norm = "l1";
  std::size_t k = 50;
  std::string method = "all";
  std::string judgments;
  std::string out_dir = ".";
  bool strict = false;
  int threshold = lr::JudgmentSet::kDefaultThreshold;
  std::string chart_format = "txt";
  std::vector<std::string> rankings;
};

void add_common(CLI::App* cmd, SharedFlags& f) {
  cmd->add_option("--out-dir", f.out_dir, "Output directory")->capture_default_str();
  cmd->add_option("--k", f.k, "Cutoff for evaluation and charts")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
}

void add_window_and_params(CLI::App* cmd, SharedFlags& f) {
  cmd->add_option("--window-start", f.window_start, "Inclusive window start (epoch s)");
  cmd->add_option("--window-end", f.window_end, "Exclusive window end (epoch s)");
  cmd->add_option("--epsilon", f.epsilon, "Convergence threshold")->capture_default_str();
  cmd->add_option("--max-iters", f.max_iters, "Iteration cap")->capture_default_str();
  cmd->add_option("--alpha", f.alpha, "Damping in (0,1]; 1 is undamped")
      ->capture_default_str();
  cmd->add_option("--norm", f.norm, "Normalisation after each cycle")
      ->check(CLI::IsMember({"l1", "max"}))
      ->capture_default_str();
}

lr::ParseMode parse_mode(const SharedFlags& f) {
  return f.strict ? lr::ParseMode::strict : lr::ParseMode::lenient;
}

lr::RankParams rank_params(const SharedFlags& f) {
  lr::RankParams p;
  p.epsilon = f.epsilon;
  p.max_iters = f.max_iters;
  p.alpha = f.alpha;
  p.norm_mode = lr::parse_norm_mode(f.norm);
  return p;
}

std::vector<std::filesystem::path> ranking_paths(const SharedFlags& f) {
  std::vector<std::filesystem::path> out;
  if (!f.input.empty()) out.emplace_back(f.input);
  for (const auto& r : f.rankings) out.emplace_back(r);
  return out;
}

int run_ingest(const SharedFlags& f) {
  pl::IngestOptions opt;
  opt.input = f.input;
  opt.format = pl::parse_input_format(f.format);
  opt.mode = parse_mode(f);
  opt.out_dir = f.out_dir;
  const auto result = pl::run_ingest(opt);
  for (const auto& m : result.malformed) {
    std::cerr << "warning: " << f.input << ":" << m.line << ": skipped: " << m.reason
              << "\n";
  }
  std::cout << "ingested " << result.tweet_count << " tweets, "
            << result.interaction_count << " interactions -> "
            << result.interactions.string() << "\n";
  return 0;
}

int run_rank(const SharedFlags& f) {
  pl::RankOptions opt;
  if (!f.input.empty()) opt.input = f.input;
  opt.window_start = f.window_start;
  opt.window_end = f.window_end;
  opt.params = rank_params(f);
  opt.methods = pl::parse_method_selection(f.method);
  opt.mode = parse_mode(f);
  opt.out_dir = f.out_dir;
  const auto result = pl::run_rank(opt);
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
  std::cout << "ranked " << result.node_count << " nodes over " << result.edge_count
            << " edges\n";
  for (const auto& [name, path] : result.outputs) {
    std::cout << "  " << name << ": " << path.string() << "\n";
  }
  return 0;
}

int run_evaluate(const SharedFlags& f) {
  pl::EvaluateOptions opt;
  opt.rankings = ranking_paths(f);
  opt.judgments = f.judgments;
  opt.k = f.k;
  opt.relevance_threshold = f.threshold;
  opt.out_dir = f.out_dir;
  const auto result = pl::run_evaluate(opt);
  std::cout << result.table;
  return 0;
}

int run_report(const SharedFlags& f) {
  pl::ReportOptions opt;
  opt.rankings = ranking_paths(f);
  opt.format = pl::parse_chart_format(f.chart_format);
  opt.k = f.k;
  opt.out_dir = f.out_dir;
  for (const auto& path : pl::run_report(opt)) std::cout << path.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mention-graph reputation ranking (liquid rank) and evaluation"};
  app.set_config("--config", "", "TOML/INI file with option values; flags win");
  app.require_subcommand(1);
  SharedFlags f;

  auto* ingest = app.add_subcommand("ingest", "Extract mention interactions from tweets");
  ingest->add_option("--input", f.input, "Tweet file")->required();
  ingest->add_option("--format", f.format, "Input format")
      ->check(CLI::IsMember({"jsonl", "csv"}))
      ->capture_default_str();
  ingest->add_flag("--strict", f.strict, "Fail on the first malformed line");
  add_common(ingest, f);

  auto* rank = app.add_subcommand("rank", "Compute mention, liquid and product rankings");
  rank->add_option("--input", f.input,
                   "Interaction CSV or graph snapshot (default <out-dir>/interactions.csv)");
  rank->add_option("--method", f.method, "Ranking method")
      ->check(CLI::IsMember({"mentions", "liquid", "product", "all"}))
      ->capture_default_str();
  rank->add_flag("--strict", f.strict, "Fail on the first malformed interaction row");
  add_window_and_params(rank, f);
  add_common(rank, f);

  auto* evaluate = app.add_subcommand("evaluate", "Score rankings against judgments");
  evaluate->add_option("--input", f.input, "Ranking CSV");
  evaluate->add_option("rankings", f.rankings, "Further ranking CSVs");
  evaluate->add_option("--judgments", f.judgments, "Judgment CSV (node,grade)")
      ->required();
  evaluate->add_option("--threshold", f.threshold, "Minimum relevant grade")
      ->check(CLI::Range(0, 2))
      ->capture_default_str();
  add_common(evaluate, f);

  auto* report = app.add_subcommand("report", "Draw bar charts of rankings");
  report->add_option("--input", f.input, "Ranking CSV");
  report->add_option("rankings", f.rankings, "Further ranking CSVs");
  report->add_option("--chart", f.chart_format, "Chart format")
      ->check(CLI::IsMember({"txt", "svg"}))
      ->capture_default_str();
  add_common(report, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*ingest) return run_ingest(f);
    if (*rank) return run_rank(f);
    if (*evaluate) return run_evaluate(f);
    if (*report) return run_report(f);
  } catch (const lr::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const lr::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const lr::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
