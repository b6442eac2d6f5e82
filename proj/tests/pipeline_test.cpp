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

#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "liquidrank/liquidrank.hpp"
#include "test_dir.hpp"

namespace lr = liquidrank;
namespace io = liquidrank::io;
namespace pl = liquidrank::pipeline;
using testing_util::ScratchDir;

namespace {

// Three tweets, four mentions; yields the graph {a->b:2, b->c:1}.
const char* kThreeTweets =
    "{\"author\":\"a\",\"text\":\"@b and @B again\",\"timestamp\":1}\n"
    "{\"author\":\"b\",\"text\":\"hello @c\",\"timestamp\":2}\n"
    "{\"author\":\"c\",\"text\":\"I am @c\",\"timestamp\":3}\n";

std::vector<std::string> order(const lr::RankedList& l) {
  std::vector<std::string> out;
  for (const auto& e : l.entries) out.push_back(e.node);
  return out;
}

std::size_t line_count(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

pl::IngestResult ingest(const ScratchDir& dir, const std::string& data,
                        lr::ParseMode mode = lr::ParseMode::strict) {
  io::write_file(dir / "tweets.jsonl", data);
  pl::IngestOptions opt;
  opt.input = dir / "tweets.jsonl";
  opt.mode = mode;
  opt.out_dir = dir.path();
  return pl::run_ingest(opt);
}

}  // namespace

TEST(Ingest, ThreeTweetsFourMentions) {
  ScratchDir dir;
  io::write_file(dir / "tweets.jsonl",
                 "{\"author\":\"a\",\"text\":\"@b @c\",\"timestamp\":1}\n"
                 "{\"author\":\"b\",\"text\":\"@c\",\"timestamp\":2}\n"
                 "{\"author\":\"c\",\"text\":\"@a\",\"timestamp\":3}\n");
  pl::IngestOptions opt{dir / "tweets.jsonl", lr::InputFormat::jsonl,
                        lr::ParseMode::strict, dir.path()};
  const auto r = pl::run_ingest(opt);
  EXPECT_EQ(r.interaction_count, 4u);
  const auto csv = io::read_file(r.interactions);
  EXPECT_EQ(line_count(csv), 5u);
  const auto manifest = nlohmann::json::parse(io::read_file(r.manifest));
  EXPECT_EQ(manifest["schema_version"], 1);
  EXPECT_EQ(manifest["record_count"], 4);
  EXPECT_EQ(manifest["node_count"], 3);
  EXPECT_EQ(manifest["edge_count"], 4);
  EXPECT_EQ(manifest["input_digest"].get<std::string>().substr(0, 7), "sha256:");
  EXPECT_TRUE(std::filesystem::exists(manifest["outputs"]["interactions"].get<std::string>()));
  EXPECT_TRUE(manifest["timings_ms"].contains("parse"));
}

TEST(Ingest, EmptyFileGivesHeaderOnly) {
  ScratchDir dir;
  const auto r = ingest(dir, "");
  EXPECT_EQ(io::read_file(r.interactions), "rater,ratee,timestamp\n");
}

TEST(Ingest, StrictModeReportsLine) {
  ScratchDir dir;
  try {
    ingest(dir, std::string(kThreeTweets) + "{broken\n");
    FAIL() << "expected FormatError";
  } catch (const lr::FormatError& e) {
    EXPECT_EQ(e.line(), 4u);
    EXPECT_NE(std::string(e.what()).find("tweets.jsonl:4"), std::string::npos);
  }
  const auto lenient = ingest(dir, std::string(kThreeTweets) + "{broken\n", lr::ParseMode::lenient);
  EXPECT_EQ(lenient.malformed.size(), 1u);
  EXPECT_EQ(lenient.interaction_count, 3u);
}

TEST(Rank, AllMethodsOnThreeNodeGraph) {
  ScratchDir dir;
  ingest(dir, kThreeTweets);
  pl::RankOptions opt;
  opt.out_dir = dir.path();
  const auto r = pl::run_rank(opt);
  ASSERT_EQ(r.rankings.size(), 3u);
  const auto mentions = io::parse_ranking_csv(io::read_file(dir / "ranking_mentions.csv"));
  EXPECT_EQ(order(mentions), (std::vector<std::string>{"b", "c", "a"}));

  // Pipeline composition: same orderings as the library calls.
  const auto graph = lr::build_graph(std::vector<lr::InteractionRecord>{
      {"a", "b", 1}, {"a", "b", 1}, {"b", "c", 2}});
  const auto state = lr::liquid_rank(graph);
  const auto liquid = io::parse_ranking_csv(io::read_file(dir / "ranking_liquid.csv"));
  const auto product = io::parse_ranking_csv(io::read_file(dir / "ranking_product.csv"));
  EXPECT_EQ(order(liquid), order(lr::to_ranked_list(state)));
  EXPECT_EQ(order(product),
            order(lr::product_rank(lr::mention_rank(graph), lr::to_ranked_list(state))));
  EXPECT_EQ(io::read_file(dir / "ranking_mentions.csv"),
            io::write_ranking_csv(lr::mention_rank(graph)));
  EXPECT_EQ(io::read_file(dir / "graph.csv"), "rater,ratee,weight\na,b,2\nb,c,1\n");

  const auto snap = nlohmann::json::parse(io::read_file(dir / "reputation.json"));
  EXPECT_EQ(snap["converged"], true);
  EXPECT_EQ(snap["iterations"], state.iterations);
  EXPECT_TRUE(std::filesystem::exists(dir / "rank_manifest.json"));
}

TEST(Rank, UndampedPeriodicRecordsNonConvergence) {
  ScratchDir dir;
  io::write_file(dir / "interactions.csv",
                 "rater,ratee,timestamp\na,b,1\nb,a,1\nb,a,1\nb,a,1\n");
  pl::RankOptions opt;
  opt.out_dir = dir.path();
  opt.methods = {lr::RankMethod::liquid};
  opt.params.alpha = 1.0;
  const auto r = pl::run_rank(opt);
  ASSERT_EQ(r.warnings.size(), 1u);
  const auto snap = nlohmann::json::parse(io::read_file(dir / "reputation.json"));
  EXPECT_EQ(snap["converged"], false);
  EXPECT_EQ(snap["iterations"], 1000);
  EXPECT_FALSE(std::filesystem::exists(dir / "ranking_mentions.csv"));
}

TEST(Rank, MissingInputIsIoError) {
  ScratchDir dir;
  pl::RankOptions opt;
  opt.out_dir = dir.path();
  EXPECT_THROW(pl::run_rank(opt), lr::IoError);
}

TEST(Rank, WindowAndEmptyGraph) {
  ScratchDir dir;
  io::write_file(dir / "interactions.csv",
                 "rater,ratee,timestamp\na,b,1\na,b,2\nb,c,3\n");
  pl::RankOptions opt;
  opt.out_dir = dir.path();
  opt.window_start = 5;
  EXPECT_THROW(pl::run_rank(opt), lr::EmptyGraph);
  opt.window_start = 2;
  opt.window_end = 4;
  const auto r = pl::run_rank(opt);
  EXPECT_EQ(r.record_count, 2u);
  EXPECT_EQ(io::read_file(dir / "graph.csv"), "rater,ratee,weight\na,b,1\nb,c,1\n");
  const auto snap = nlohmann::json::parse(io::read_file(dir / "reputation.json"));
  EXPECT_EQ(snap["window"]["start"], 2);
  EXPECT_EQ(snap["window"]["end"], 4);
}

TEST(Rank, AcceptsGraphSnapshot) {
  ScratchDir dir;
  io::write_file(dir / "g.csv", "rater,ratee,weight\na,b,2\nb,c,1\n");
  pl::RankOptions opt;
  opt.input = dir / "g.csv";
  opt.out_dir = dir / "out";
  opt.methods = {lr::RankMethod::mentions};
  const auto r = pl::run_rank(opt);
  EXPECT_EQ(order(r.rankings.at(lr::RankMethod::mentions)),
            (std::vector<std::string>{"b", "c", "a"}));
  opt.window_end = 10;
  EXPECT_THROW(pl::run_rank(opt), lr::ValidationError);
}

TEST(Rank, Deterministic) {
  ScratchDir a, b;
  for (const auto* dir : {&a, &b}) {
    ingest(*dir, kThreeTweets);
    pl::RankOptions opt;
    opt.out_dir = dir->path();
    pl::run_rank(opt);
  }
  for (const char* f : {"interactions.csv", "graph.csv", "ranking_mentions.csv",
                        "ranking_liquid.csv", "ranking_product.csv", "reputation.json"}) {
    EXPECT_EQ(io::read_file(a / f), io::read_file(b / f)) << f;
  }
}

TEST(Evaluate, TwoRankingsSharedJudgments) {
  ScratchDir dir;
  ingest(dir, kThreeTweets);
  pl::RankOptions ropt;
  ropt.out_dir = dir.path();
  pl::run_rank(ropt);
  io::write_file(dir / "judgments.csv", "node,grade\nb,2\nc,2\na,0\n");
  pl::EvaluateOptions opt;
  opt.rankings = {dir / "ranking_mentions.csv", dir / "ranking_liquid.csv"};
  opt.judgments = dir / "judgments.csv";
  opt.k = 2;
  opt.out_dir = dir / "eval";
  const auto r = pl::run_evaluate(opt);
  ASSERT_EQ(r.reports.size(), 2u);
  // b and c fill the top two of both rankings.
  EXPECT_EQ(r.reports[0].precision, 1.0);
  EXPECT_EQ(r.reports[1].precision, 1.0);
  EXPECT_EQ(r.mean_reciprocal_rank, 1.0);
  EXPECT_EQ(line_count(r.table), 4u);
  EXPECT_NE(r.table.find("mentions"), std::string::npos);
  EXPECT_NE(r.table.find("liquid"), std::string::npos);
  const auto doc = nlohmann::json::parse(io::read_file(dir / "eval" / "ranking_liquid.report.json"));
  EXPECT_EQ(doc["method"], "liquid");
  EXPECT_EQ(doc["k"], 2);
  EXPECT_EQ(doc["relevant_total"], 2);
}

TEST(Evaluate, DuplicateJudgmentIsFormatError) {
  ScratchDir dir;
  io::write_file(dir / "r.csv", "rank,node,score,method\n1,a,1,liquid\n");
  io::write_file(dir / "j.csv", "node,grade\na,2\na,0\n");
  pl::EvaluateOptions opt{{dir / "r.csv"}, dir / "j.csv", 50, 2, dir.path()};
  EXPECT_THROW(pl::run_evaluate(opt), lr::FormatError);
}

TEST(Report, TextBarsAreProportional) {
  const auto list = lr::make_ranked_list(lr::RankMethod::mentions,
                                         {{"b", 2, 0}, {"c", 1, 0}, {"a", 0, 0}});
  const auto text = lr::chart::render_text(list, 50, "ranking_mentions");
  EXPECT_EQ(text,
            "Ranking: ranking_mentions (mentions, top 3 of 3)\n"
            "1  b    |##################################################| 2\n"
            "2  c    |#########################                         | 1\n"
            "3  a    |                                                  | 0\n");
}

TEST(Report, WritesChartsPerRanking) {
  ScratchDir dir;
  io::write_file(dir / "empty.csv", "rank,node,score,method\n");
  io::write_file(dir / "three.csv",
                 "rank,node,score,method\n1,b,2,mentions\n2,c,1,mentions\n3,a,0,mentions\n");
  pl::ReportOptions opt{{dir / "empty.csv", dir / "three.csv"}, pl::ChartFormat::txt, 50,
                        dir / "charts"};
  const auto files = pl::run_report(opt);
  ASSERT_EQ(files.size(), 2u);
  EXPECT_EQ(line_count(io::read_file(files[0])), 1u);
  EXPECT_EQ(line_count(io::read_file(files[1])), 4u);

  opt.format = pl::ChartFormat::svg;
  opt.k = 2;
  const auto svgs = pl::run_report(opt);
  const auto svg = io::read_file(svgs[1]);
  EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
  EXPECT_NE(svg.find("width=\"420.00\""), std::string::npos);
  EXPECT_NE(svg.find("width=\"210.00\""), std::string::npos);
  EXPECT_EQ(svg.find("3. a"), std::string::npos);
  EXPECT_EQ(pl::run_report(opt), svgs);
  EXPECT_EQ(io::read_file(svgs[1]), svg);
}

TEST(Report, EscapesMarkup) {
  const auto list = lr::make_ranked_list(lr::RankMethod::liquid, {{"a<b>&", 1, 0}});
  const auto svg = lr::chart::render_svg(list, 5, "t\"itle");
  EXPECT_NE(svg.find("1. a&lt;b&gt;&amp;"), std::string::npos);
  EXPECT_NE(svg.find("t&quot;itle"), std::string::npos);
}
