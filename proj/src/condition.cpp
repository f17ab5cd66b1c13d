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

#include "stylegap/condition.hpp"

namespace stylegap {

std::string ConditionKey::label() const {
  switch (kind) {
    case ConditionKind::kBaseline: return "baseline";
    case ConditionKind::kArtistName: return "artist_name";
    case ConditionKind::kStyled: return "styled_" + std::to_string(set_index);
    case ConditionKind::kCrossStyled:
      return "cross_styled:" + source_artist + ":" + std::to_string(set_index);
  }
  return "unknown";
}

}  // namespace stylegap
