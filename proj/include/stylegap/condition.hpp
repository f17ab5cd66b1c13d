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

#include <compare>
#include <string>

namespace stylegap {

/// Number of descriptor sets sampled per artist.
inline constexpr int kDescriptorSets = 5;

enum class ConditionKind { kBaseline, kArtistName, kStyled, kCrossStyled };

/// Experimental prompt condition a generated clip was rendered under.
///
/// Styled(k) appends the evaluated artist's k-th descriptor set to its
/// baseline prompt; CrossStyled(source, k) appends another artist's k-th set
/// to the evaluated artist's baseline.
struct ConditionKey {
  ConditionKind kind = ConditionKind::kBaseline;
  int set_index = 0;          // 1..kDescriptorSets for styled kinds, else 0
  std::string source_artist;  // only for kCrossStyled

  static ConditionKey baseline() { return {}; }
  static ConditionKey artist_name() { return {ConditionKind::kArtistName, 0, {}}; }
  static ConditionKey styled(int set) { return {ConditionKind::kStyled, set, {}}; }
  static ConditionKey cross_styled(std::string source, int set) {
    return {ConditionKind::kCrossStyled, set, std::move(source)};
  }

  /// "baseline", "artist_name", "styled_3", "cross_styled:<source>:2".
  std::string label() const;

  auto operator<=>(const ConditionKey&) const = default;
  bool operator==(const ConditionKey&) const = default;
};

}  // namespace stylegap
