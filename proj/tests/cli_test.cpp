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

#include "cli.hpp"

#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "stylegap/emb_store.hpp"
#include "test_util.hpp"

namespace stylegap::cli {
namespace {

using nlohmann::json;

struct Result {
  int status = 0;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "stylegap");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int status = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::filesystem::path synth_fixture(const std::string& spec, const std::string& name) {
  const auto dir = testing::scratch_dir(name);
  const auto r = run_cli({"synth", "--spec", (testing::fixture_dir() / "synth" / spec).string(),
                          "--out", dir.string()});
  EXPECT_EQ(r.status, 0) << r.err;
  return dir;
}

TEST(Cli, PromptsBillie) {
  const auto r = run_cli({"prompts", "--bundle", (testing::fixture_dir() / "bundles" / "billie_eilish.json").string()});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 7u);
  const std::string base =
      "a moody contemporary pop track with subtle electronic textures, minimal percussion, and "
      "an atmospheric groove";
  EXPECT_EQ(l[0], base);
  EXPECT_EQ(l[1], base + " [Billie Eilish]");
  EXPECT_EQ(l[2], base + ", breathy lead timbre, sub-bass pulses, dry room reverb");
  EXPECT_EQ(l[6], base + ", delicate lead timbre, distorted bass texture, syncopated glitch rhythm");
}

TEST(Cli, PromptsEinaudi) {
  const auto r = run_cli({"prompts", "--bundle", (testing::fixture_dir() / "bundles" / "ludovico_einaudi.json").string()});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 7u);
  EXPECT_NE(l[1].find(" [Ludovico Einaudi]"), std::string::npos);
  EXPECT_EQ(l[1].substr(l[1].size() - 19), " [Ludovico Einaudi]");
}

TEST(Cli, PromptsWrongSetCount) {
  const auto r = run_cli({"prompts", "--bundle", (testing::fixture_dir() / "bundles" / "invalid" / "four_sets.json").string()});
  EXPECT_EQ(r.status, 24);
  const json diag = json::parse(lines(r.err).at(0));
  EXPECT_EQ(diag["error"], "WrongSetCount");
  EXPECT_EQ(diag["exit_code"], 24);
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run_cli({}).status, 2);
  EXPECT_EQ(run_cli({"evaluate", "--manifest", "x.json"}).status, 2);
  EXPECT_EQ(run_cli({"evaluate", "--manifest", "x", "--out", "y", "--format", "xml"}).status, 2);
  EXPECT_EQ(run_cli({"--help"}).status, 0);
}

TEST(Cli, ValidateAndSeedViolation) {
  const auto dir = synth_fixture("displacement.json", "cli_validate");
  const auto manifest = dir / "manifest.json";
  const auto ok = run_cli({"validate", "--manifest", manifest.string()});
  ASSERT_EQ(ok.status, 0) << ok.err;
  const json summary = json::parse(ok.out);
  EXPECT_EQ(summary["status"], "ok");
  EXPECT_EQ(summary["artists"][0]["spaces"]["clap"]["generated"], 70);
  EXPECT_EQ(summary["artists"][0]["spaces"]["clap"]["references"], 15);
  EXPECT_EQ(summary["artists"][0]["spaces"]["clap"]["cross_styled"], 50);

  json doc = json::parse(read_file(manifest));
  auto& gen = doc["artists"][0]["generated"];
  for (auto it = gen.begin(); it != gen.end(); ++it) {
    if ((*it)["clip_id"] == "billie_eilish-clap-styled3-s9") {
      gen.erase(it);
      break;
    }
  }
  write_file_atomic(manifest, doc.dump(2));
  const auto bad = run_cli({"validate", "--manifest", manifest.string()});
  EXPECT_EQ(bad.status, 3);
  const json diag = json::parse(lines(bad.err).at(0));
  EXPECT_EQ(diag["error"], "MatchedSeedViolation");
  EXPECT_NE(diag["message"].get<std::string>().find("seed 9"), std::string::npos);
}

TEST(Cli, MissingEmbeddingFile) {
  const auto dir = synth_fixture("null.json", "cli_missing");
  std::filesystem::remove(dir / "embeddings" / "vggish" / "ludovico_einaudi-vggish-ref07.emb1");
  const auto r = run_cli({"validate", "--manifest", (dir / "manifest.json").string()});
  EXPECT_EQ(r.status, 5);
  EXPECT_EQ(json::parse(lines(r.err).at(0))["error"], "MissingEmbeddingFile");
  EXPECT_EQ(run_cli({"validate", "--manifest", (dir / "absent.json").string()}).status, 5);
}

TEST(Cli, EvaluateIsByteStable) {
  const auto dir = synth_fixture("displacement.json", "cli_eval");
  const auto manifest = (dir / "manifest.json").string();
  const auto a = dir / "a.json";
  const auto b = dir / "b.json";
  ASSERT_EQ(run_cli({"evaluate", "--manifest", manifest, "--out", a.string()}).status, 0);
  ASSERT_EQ(run_cli({"evaluate", "--manifest", manifest, "--out", b.string()}).status, 0);
  EXPECT_EQ(read_file(a), read_file(b));
  const json report = json::parse(read_file(a));
  EXPECT_EQ(report["config"]["spaces"], json::array({"clap", "vggish"}));

  const auto frame = dir / "frame.json";
  ASSERT_EQ(run_cli({"evaluate", "--manifest", manifest, "--out", frame.string(), "--spaces",
                     "vggish", "--frame-level", "--cov-divisor", "n"})
                .status,
            0);
  const json fr = json::parse(read_file(frame));
  EXPECT_EQ(fr["config"]["pooling"], "frame");
  EXPECT_EQ(fr["config"]["cov_divisor"], "n");
  EXPECT_EQ(fr["results"].size(), 2u);

  const auto csv = dir / "r.csv";
  ASSERT_EQ(run_cli({"evaluate", "--manifest", manifest, "--out", csv.string(), "--format", "csv",
                     "--spaces", "clap,vggish"})
                .status,
            0);
  EXPECT_EQ(lines(read_file(csv)).size(), 1u + 4u * 12u);
}

TEST(Cli, EvaluateUnknownSpace) {
  const auto dir = synth_fixture("null.json", "cli_space");
  const auto r = run_cli({"evaluate", "--manifest", (dir / "manifest.json").string(), "--out",
                          (dir / "r.json").string(), "--spaces", "mfcc"});
  EXPECT_EQ(r.status, 13);
  EXPECT_FALSE(std::filesystem::exists(dir / "r.json"));
}

TEST(Cli, SynthIsReproducible) {
  const auto a = synth_fixture("toward_centroid.json", "cli_synth_a");
  const auto b = synth_fixture("toward_centroid.json", "cli_synth_b");
  std::size_t files = 0;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(a)) {
    if (!entry.is_regular_file()) continue;
    const auto rel = std::filesystem::relative(entry.path(), a);
    EXPECT_EQ(read_file(entry.path()), read_file(b / rel)) << rel;
    ++files;
  }
  EXPECT_EQ(files, 1u + 2u * 2u * (15u + 10u * 12u));
}

TEST(Cli, BadSynthSpec) {
  const auto dir = testing::scratch_dir("cli_bad_spec");
  write_file_atomic(dir / "spec.json", "{\"rng_seed\": 1}");
  const auto r = run_cli({"synth", "--spec", (dir / "spec.json").string(), "--out", (dir / "o").string()});
  EXPECT_EQ(r.status, 15);
  EXPECT_EQ(json::parse(lines(r.err).at(0))["error"], "InvalidSpec");
}

}  // namespace
}  // namespace stylegap::cli
