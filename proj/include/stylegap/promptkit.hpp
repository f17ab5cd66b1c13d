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

#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <string_view>

#include "stylegap/condition.hpp"

namespace stylegap::promptkit {

inline constexpr int kTokensPerSet = 3;
inline constexpr int kMinWordsPerToken = 2;
inline constexpr int kMaxWordsPerToken = 4;

using DescriptorSet = std::array<std::string, kTokensPerSet>;

/// LLM-sampled descriptor bundle for one artist: a neutral baseline sentence
/// and five sets of three short style tokens.
struct DescriptorBundle {
  std::string artist_name;
  std::string baseline;
  std::array<DescriptorSet, kDescriptorSets> sets;

  bool operator==(const DescriptorBundle&) const = default;
};

struct PromptSet {
  std::string baseline_prompt;
  std::string artist_name_prompt;
  std::array<std::string, kDescriptorSets> styled_prompts;  // index 0 is set 1
};

/// Checks one style token: 2-4 space-separated words drawn from [a-z0-9-].
/// Hyphens join words ("sub-bass" is one word). Throws Error on violation.
void validate_token(std::string_view token);

/// Parses and validates a bundle in the
/// {"artist_name": ..., "baseline": ..., "sets": [[t,t,t] x5]} schema.
DescriptorBundle parse_bundle(std::string_view json_text);
DescriptorBundle load_bundle(const std::filesystem::path& path);

/// Canonical JSON text for a bundle; parse_bundle(serialize_bundle(b)) == b.
std::string serialize_bundle(const DescriptorBundle& bundle);

PromptSet build_prompts(const DescriptorBundle& bundle);

/// "{baseline} [{artist_name}]"
std::string artist_name_prompt(std::string_view baseline, std::string_view artist_name);

/// baseline + ", " + t1 + ", " + t2 + ", " + t3
std::string styled_prompt(std::string_view baseline, const DescriptorSet& set);

}  // namespace stylegap::promptkit
