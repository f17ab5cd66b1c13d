// Copyright 2026 The stylegap Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "stylegap/report.hpp"

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "stylegap/synth.hpp"
#include "test_util.hpp"

namespace stylegap::report {
namespace {

using nlohmann::json;

protocol::AggregateReport displacement(std::vector<std::string> spaces = {}) {
  const auto spec = synth::load_fixture_spec(testing::fixture_dir() / "synth" / "displacement.json");
  return protocol::aggregate(synth::build_fixture(spec), std::move(spaces));
}

TEST(FormatFloat, NineSignificantDigits) {
  EXPECT_EQ(format_float(3.0), "3");
  EXPECT_EQ(format_float(std::sqrt(2.5)), "1.58113883");
  EXPECT_EQ(format_float(0.1 + 0.2), "0.3");
  EXPECT_EQ(format_float(-0.0), "0");
  EXPECT_EQ(format_float(1.5e-12), "1.5e-12");
  EXPECT_EQ(format_float(-123456789.25), "-123456789");
}

TEST(CanonicalJson, SortedIndentedAndStable) {
  json v = {{"zeta", 1}, {"alpha", {{"b", 0.25}, {"a", json::array({1, 2})}}}, {"mid", "x"},
            {"empty", json::object()}, {"none", json::array()}, {"nan", std::nan("")}};
  const std::string expected =
      "{\n"
      "  \"alpha\": {\n"
      "    \"a\": [\n"
      "      1,\n"
      "      2\n"
      "    ],\n"
      "    \"b\": 0.25\n"
      "  },\n"
      "  \"empty\": {},\n"
      "  \"mid\": \"x\",\n"
      "  \"nan\": null,\n"
      "  \"none\": [],\n"
      "  \"zeta\": 1\n"
      "}\n";
  EXPECT_EQ(canonical_json(v), expected);
  EXPECT_EQ(json::parse(canonical_json(v))["alpha"]["b"], 0.25);
}

TEST(BuildReport, Structure) {
  const json r = build_report(displacement({"vggish", "clap"}));
  EXPECT_EQ(r["schema_version"], 1);
  EXPECT_EQ(r["tool"]["name"], "stylegap");
  EXPECT_EQ(r["config"]["cov_divisor"], "n-1");
  EXPECT_EQ(r["config"]["pooling"], "clip");
  EXPECT_EQ(r["config"]["spaces"], json::array({"vggish", "clap"}));
  ASSERT_EQ(r["results"].size(), 4u);

  const json& first = r["results"][0];
  EXPECT_EQ(first["artist"], "Billie Eilish");
  EXPECT_EQ(first["space"], "clap");
  // baseline, artist name, five styled, five cross-styled
  ASSERT_EQ(first["conditions"].size(), 12u);
  EXPECT_EQ(first["conditions"][2]["condition"], "styled_1");
  EXPECT_EQ(first["conditions"][2]["set_index"], 1);
  EXPECT_EQ(first["conditions"][7]["source_artist"], "Ludovico Einaudi");
  EXPECT_EQ(first["conditions"][0]["per_clip"].size(), 10u);
  EXPECT_TRUE(first["conditions"][0]["per_clip"][0].contains("d_min"));
  EXPECT_TRUE(first["conditions"][0]["per_clip"][0].contains("centroid_sim"));

  const json& summary = first["styled_summary"];
  EXPECT_EQ(summary["fad_per_set"].size(), 5u);
  EXPECT_EQ(summary["dmin_median_per_set"].size(), 5u);
  EXPECT_TRUE(summary.contains("dmin_median_pooled"));
  EXPECT_TRUE(first["name_free_gap"].contains("fad"));
  EXPECT_TRUE(first["name_free_gap"].contains("dmin_median"));

  ASSERT_EQ(r["cross_artist"].size(), 2u);
  EXPECT_EQ(r["cross_artist"][0]["delta"].size(), 2u);
  EXPECT_EQ(r["cross_artist"][0]["cells"].size(), 4u);
}

TEST(BuildReport, PanelsFollowRequestedSpaceOrder) {
  const json r = build_report(displacement({"vggish", "clap"}));
  const json& p = r["panels"];
  ASSERT_EQ(p.size(), 6u);
  EXPECT_EQ(p["A"]["kind"], "fad_bars");
  EXPECT_EQ(p["A"]["space"], "vggish");
  EXPECT_EQ(p["B"]["kind"], "dmin_bars");
  EXPECT_EQ(p["C"]["kind"], "cross_artist_delta");
  EXPECT_EQ(p["D"]["space"], "clap");
  EXPECT_EQ(p["F"]["matrix"]["space"], "clap");
  EXPECT_EQ(p["A"]["rows"].size(), 6u);
  EXPECT_EQ(p["E"]["rows"][2]["per_set"].size(), 5u);

  const json single = build_report(displacement({"clap"}))["panels"];
  EXPECT_EQ(single.size(), 3u);
  EXPECT_EQ(single["A"]["space"], "clap");
}

TEST(BuildReport, ValuesMatchAggregate) {
  const auto agg = displacement({"clap"});
  const json r = build_report(agg);
  const auto& cell = agg.cells[1];
  EXPECT_EQ(r["results"][1]["artist"], cell.artist);
  EXPECT_EQ(r["results"][1]["styled_summary"]["fad_mean"].get<double>(), cell.styled_fad_mean);
  EXPECT_EQ(r["cross_artist"][0]["delta"][0][1].get<double>(), agg.cross[0].cells[0][1].stat.delta);
}

TEST(BuildReport, Deterministic) {
  EXPECT_EQ(canonical_json(build_report(displacement())), canonical_json(build_report(displacement())));
}

TEST(RenderCsv, RowsAndHeader) {
  const auto agg = displacement({"clap"});
  const std::string csv = render_csv(agg);
  std::vector<std::string> lines;
  std::size_t start = 0;
  for (std::size_t nl; (nl = csv.find('\n', start)) != std::string::npos; start = nl + 1) {
    lines.push_back(csv.substr(start, nl - start));
  }
  ASSERT_EQ(lines.size(), 1u + 2u * 12u);
  EXPECT_EQ(lines[0],
            "artist,space,condition,set_index,source_artist,n_clips,fad,dmin_median,"
            "centroid_sim_mean,delta_vs_baseline");
  EXPECT_EQ(lines[1].rfind("Billie Eilish,clap,baseline,0,,10,", 0), 0u);
  EXPECT_EQ(lines[1].substr(lines[1].rfind(',') + 1), "0");
  EXPECT_EQ(lines[8].rfind("Billie Eilish,clap,cross_styled:Ludovico Einaudi:1,1,Ludovico Einaudi,10,", 0), 0u);
}

TEST(RenderCsv, QuotesAwkwardNames) {
  auto agg = displacement({"clap"});
  agg.cells[0].artist = "Tyler, \"The\" Creator";
  const std::string csv = render_csv(agg);
  EXPECT_NE(csv.find("\"Tyler, \"\"The\"\" Creator\",clap,baseline"), std::string::npos);
}

}  // namespace
}  // namespace stylegap::report
