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
#include <optional>
#include <string>
#include <vector>

#include "stylegap/condition.hpp"
#include "stylegap/emb_store.hpp"
#include "stylegap/metrics.hpp"

namespace stylegap::protocol {

struct EvalOptions {
  metrics::CovDivisor cov_divisor = metrics::CovDivisor::kUnbiased;
  /// Pool every frame row into the FAD populations instead of one mean
  /// vector per clip. Cosine metrics always use clip vectors.
  bool frame_level = false;
};

struct ConditionMetrics {
  ConditionKey condition;
  double fad = 0.0;
  metrics::MinDistanceResult dmin;
  double dmin_median = 0.0;
  std::vector<double> centroid_sims;  // per clip, seed order
  double centroid_sim_mean = 0.0;
  std::size_t n_clips = 0;
};

/// Clip vectors (mean of each clip's rows), one row per record.
RowMatrix clip_vectors(const Manifest& manifest, const std::vector<const ClipRecord*>& records);

/// Every frame row of every record stacked.
RowMatrix frame_rows(const Manifest& manifest, const std::vector<const ClipRecord*>& records);

ConditionMetrics evaluate_condition(const Manifest& manifest, std::string_view artist,
                                    std::string_view space, const ConditionKey& condition,
                                    const EvalOptions& options = {});

/// Results for one artist in one embedding space.
struct ArtistSpaceReport {
  std::string artist;
  std::string space;
  ConditionMetrics baseline;
  ConditionMetrics artist_name;
  std::array<ConditionMetrics, kDescriptorSets> styled;
  std::vector<ConditionMetrics> cross_styled;  // by source artist, then set
  double styled_fad_mean = 0.0;
  double styled_fad_std = 0.0;  // divisor 4
  double styled_dmin_median_pooled = 0.0;  // one median over all styled clips
  std::array<double, kDescriptorSets> styled_dmin_median_per_set{};
  double name_free_gap_fad = 0.0;   // styled_fad_mean - artist_name fad
  double name_free_gap_dmin = 0.0;  // pooled styled median - artist_name median
};

struct DeltaCell {
  std::string target;  // reference set the clips are scored against
  std::string source;  // artist whose descriptors were applied
  metrics::DeltaStat stat;
  std::array<double, kDescriptorSets> per_set_delta{};
};

/// A x A matrix of cross-artist deltas; rows are targets, columns sources,
/// both in the sorted artist order.
struct CrossArtistMatrix {
  std::string space;
  std::vector<std::string> artists;
  std::vector<std::vector<DeltaCell>> cells;
};

struct AggregateReport {
  EvalOptions options;
  std::vector<std::string> spaces;
  std::vector<ArtistSpaceReport> cells;  // sorted by artist, then space
  std::vector<CrossArtistMatrix> cross;  // per space; empty without cross records
};

/// FAD mean and sample std over exactly five per-set values.
std::pair<double, double> fad_mean_std(const std::array<double, kDescriptorSets>& per_set);

ArtistSpaceReport evaluate_artist_space(const Manifest& manifest, std::string_view artist,
                                        std::string_view space, const EvalOptions& options = {});

CrossArtistMatrix cross_artist_matrix(const Manifest& manifest, std::string_view space,
                                      const EvalOptions& options = {});

/// True when every ordered artist pair has cross-styled records in `space`.
bool has_cross_conditions(const Manifest& manifest, std::string_view space);

/// Evaluates every artist in every requested space (all manifest spaces
/// when `spaces` is empty).
AggregateReport aggregate(const Manifest& manifest, std::vector<std::string> spaces,
                          const EvalOptions& options = {});

/// Matched-seed pairing table for one artist and space.
std::vector<SeedRow> pair_by_seed(const Manifest& manifest, std::string_view artist,
                                  std::string_view space);

/// Per-seed d_min differences (a - b) between two conditions, in seed order.
std::vector<double> paired_dmin_diffs(const Manifest& manifest, std::string_view artist,
                                      std::string_view space, const ConditionKey& a,
                                      const ConditionKey& b);

}  // namespace stylegap::protocol
