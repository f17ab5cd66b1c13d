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

#include <string>

#include <json.hpp>

#include "stylegap/protocol.hpp"

namespace stylegap::report {

inline constexpr const char* kToolName = "stylegap";
inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

/// Full report: config echo, per artist x space metrics, cross-artist delta
/// matrices and plot-panel tables (three panels per space: FAD bars,
/// min-distance bars, delta matrix; A-C for the first space, D-F next).
nlohmann::json build_report(const protocol::AggregateReport& report);

/// JSON text with sorted keys, two-space indent and every float printed with
/// 9 significant digits; non-finite floats become null.
std::string canonical_json(const nlohmann::json& value);

/// One row per (artist, space, condition), fixed column order.
std::string render_csv(const protocol::AggregateReport& report);

/// "%.9g" with negative zero folded to "0".
std::string format_float(double value);

}  // namespace stylegap::report
