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
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "stylegap/emb_store.hpp"
#include "stylegap/error.hpp"
#include "stylegap/promptkit.hpp"
#include "stylegap/protocol.hpp"
#include "stylegap/report.hpp"
#include "stylegap/synth.hpp"

namespace stylegap::cli {
namespace {

using nlohmann::json;

int report_error(const Error& e, std::ostream& err) {
  json diag = {{"level", "error"},
               {"error", std::string(error_name(e.code()))},
               {"exit_code", exit_code(e.code())},
               {"message", e.what()}};
  for (const auto& [key, value] : e.context()) {
    if (!diag.contains(key)) diag[key] = value;
  }
  err << diag.dump() << "\n";
  return exit_code(e.code());
}

int cmd_validate(const std::string& manifest_path, std::ostream& out) {
  const Manifest m = load_manifest(manifest_path);
  json artists = json::array();
  for (const auto& a : m.artists) {
    json spaces = json::object();
    for (const auto& s : m.spaces(a.name)) {
      std::size_t generated = 0;
      std::size_t cross = 0;
      for (const auto& r : a.generated) {
        if (r.space_tag != s) continue;
        if (r.condition->kind == ConditionKind::kCrossStyled) {
          ++cross;
        } else {
          ++generated;
        }
      }
      spaces[s] = {{"references", m.references(a.name, s).size()},
                   {"generated", generated},
                   {"cross_styled", cross}};
    }
    artists.push_back({{"name", a.name}, {"spaces", std::move(spaces)}});
  }
  out << json{{"status", "ok"}, {"seeds", m.seeds.size()}, {"artists", std::move(artists)}}.dump()
      << "\n";
  return 0;
}

struct EvaluateArgs {
  std::string manifest;
  std::vector<std::string> spaces;
  std::string out;
  std::string format = "json";
  bool frame_level = false;
  std::string cov_divisor = "n-1";
};

int cmd_evaluate(const EvaluateArgs& args, std::ostream& out) {
  const Manifest m = load_manifest(args.manifest);
  protocol::EvalOptions options;
  options.frame_level = args.frame_level;
  options.cov_divisor =
      args.cov_divisor == "n" ? metrics::CovDivisor::kPopulation : metrics::CovDivisor::kUnbiased;
  const auto aggregate = protocol::aggregate(m, args.spaces, options);
  const std::string bytes = args.format == "csv"
                                ? report::render_csv(aggregate)
                                : report::canonical_json(report::build_report(aggregate));
  write_file_atomic(args.out, bytes);
  out << json{{"status", "ok"}, {"out", args.out}, {"format", args.format}}.dump() << "\n";
  return 0;
}

int cmd_prompts(const std::string& bundle_path, std::ostream& out) {
  const auto prompts = promptkit::build_prompts(promptkit::load_bundle(bundle_path));
  out << prompts.baseline_prompt << "\n" << prompts.artist_name_prompt << "\n";
  for (const auto& p : prompts.styled_prompts) out << p << "\n";
  return 0;
}

int cmd_synth(const std::string& spec_path, const std::string& out_dir, std::ostream& out) {
  const auto spec = synth::load_fixture_spec(spec_path);
  const auto manifest = synth::write_fixture(spec, out_dir);
  out << json{{"status", "ok"}, {"manifest", manifest.string()}}.dump() << "\n";
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Prompt-level style controllability metrics over audio embeddings", "stylegap"};
  app.require_subcommand(1);
  app.set_version_flag("--version", report::kToolVersion);

  std::string manifest_path;
  auto* validate = app.add_subcommand("validate", "Check a manifest and its embedding files");
  validate->add_option("--manifest", manifest_path, "Manifest JSON")->required();

  EvaluateArgs eval;
  auto* evaluate = app.add_subcommand("evaluate", "Compute FAD, min-distance and cross-artist deltas");
  evaluate->add_option("--manifest", eval.manifest, "Manifest JSON")->required();
  evaluate->add_option("--spaces", eval.spaces, "Embedding spaces, comma separated")->delimiter(',');
  evaluate->add_option("--out", eval.out, "Report path")->required();
  evaluate->add_option("--format", eval.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  evaluate->add_flag("--frame-level", eval.frame_level, "Pool frame rows for FAD");
  evaluate->add_option("--cov-divisor", eval.cov_divisor, "Covariance divisor")
      ->check(CLI::IsMember({"n-1", "n"}));

  std::string bundle_path;
  auto* prompts = app.add_subcommand("prompts", "Print the seven prompts built from a bundle");
  prompts->add_option("--bundle", bundle_path, "Descriptor bundle JSON")->required();

  std::string spec_path;
  std::string out_dir;
  auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic fixture");
  synth_cmd->add_option("--spec", spec_path, "Fixture spec JSON")->required();
  synth_cmd->add_option("--out", out_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    if (*validate) return cmd_validate(manifest_path, out);
    if (*evaluate) return cmd_evaluate(eval, out);
    if (*prompts) return cmd_prompts(bundle_path, out);
    if (*synth_cmd) return cmd_synth(spec_path, out_dir, out);
  } catch (const Error& e) {
    return report_error(e, err);
  } catch (const std::exception& e) {
    err << json{{"level", "error"}, {"error", "Internal"}, {"exit_code", 1}, {"message", e.what()}}.dump()
        << "\n";
    return 1;
  }
  return 1;
}

}  // namespace stylegap::cli
