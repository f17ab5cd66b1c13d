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

#include "stylegap/protocol.hpp"

#include <algorithm>
#include <set>

#include "stylegap/error.hpp"

namespace stylegap::protocol {
namespace {

ErrorContext where(std::string_view artist, std::string_view space, const ConditionKey& c) {
  return {{"artist", std::string(artist)}, {"space", std::string(space)}, {"condition", c.label()}};
}

std::vector<const ClipRecord*> condition_records(const Manifest& manifest, std::string_view artist,
                                                 std::string_view space,
                                                 const ConditionKey& condition) {
  auto records = manifest.generated(artist, space, condition);
  if (records.empty()) {
    const ErrorCode code = condition.kind == ConditionKind::kCrossStyled
                               ? ErrorCode::kMissingCrossCondition
                               : ErrorCode::kMissingCondition;
    throw Error(code,
                "artist '" + std::string(artist) + "' has no " + condition.label() +
                    " clips in space '" + std::string(space) + "'",
                where(artist, space, condition));
  }
  return records;
}

std::vector<const ClipRecord*> reference_records(const Manifest& manifest, std::string_view artist,
                                                 std::string_view space) {
  auto refs = manifest.references(artist, space);
  if (refs.empty()) {
    throw Error(ErrorCode::kEmptyReferenceSet,
                "artist '" + std::string(artist) + "' has no references in space '" +
                    std::string(space) + "'",
                {{"artist", std::string(artist)}, {"space", std::string(space)}});
  }
  return refs;
}

std::vector<std::string> sorted_artists(const Manifest& manifest) {
  std::vector<std::string> names;
  for (const auto& a : manifest.artists) names.push_back(a.name);
  std::sort(names.begin(), names.end());
  return names;
}

}  // namespace

RowMatrix clip_vectors(const Manifest& manifest, const std::vector<const ClipRecord*>& records) {
  if (records.empty()) return {};
  const Eigen::Index dim = manifest.embedding(*records.front()).dim();
  RowMatrix out(static_cast<Eigen::Index>(records.size()), dim);
  for (std::size_t i = 0; i < records.size(); ++i) {
    const EmbeddingMatrix& emb = manifest.embedding(*records[i]);
    if (emb.dim() != dim) {
      throw Error(ErrorCode::kDimensionMismatch, "clip " + records[i]->clip_id +
                                                     " has dimension " + std::to_string(emb.dim()));
    }
    out.row(static_cast<Eigen::Index>(i)) = emb.mean_row().transpose();
  }
  return out;
}

RowMatrix frame_rows(const Manifest& manifest, const std::vector<const ClipRecord*>& records) {
  if (records.empty()) return {};
  const Eigen::Index dim = manifest.embedding(*records.front()).dim();
  Eigen::Index total = 0;
  for (const auto* r : records) total += manifest.embedding(*r).count();
  RowMatrix out(total, dim);
  Eigen::Index at = 0;
  for (const auto* r : records) {
    const EmbeddingMatrix& emb = manifest.embedding(*r);
    if (emb.dim() != dim) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "clip " + r->clip_id + " has dimension " + std::to_string(emb.dim()));
    }
    out.middleRows(at, emb.count()) = emb.rows.cast<double>();
    at += emb.count();
  }
  return out;
}

ConditionMetrics evaluate_condition(const Manifest& manifest, std::string_view artist,
                                    std::string_view space, const ConditionKey& condition,
                                    const EvalOptions& options) {
  const auto records = condition_records(manifest, artist, space, condition);
  const auto refs = reference_records(manifest, artist, space);
  try {
    const RowMatrix gen_vecs = clip_vectors(manifest, records);
    const RowMatrix ref_vecs = clip_vectors(manifest, refs);

    ConditionMetrics out;
    out.condition = condition;
    out.n_clips = records.size();

    const auto gen_summary = metrics::estimate_gaussian(
        options.frame_level ? frame_rows(manifest, records) : gen_vecs, options.cov_divisor);
    const auto ref_summary = metrics::estimate_gaussian(
        options.frame_level ? frame_rows(manifest, refs) : ref_vecs, options.cov_divisor);
    out.fad = metrics::frechet_distance(gen_summary, ref_summary);

    std::vector<std::string> ids;
    for (const auto* r : records) ids.push_back(r->clip_id);
    out.dmin = metrics::min_distance_condition(gen_vecs, ref_vecs, ids);
    out.dmin_median = out.dmin.median;

    out.centroid_sims = metrics::centroid_similarities(gen_vecs, ref_vecs);
    out.centroid_sim_mean = metrics::mean(out.centroid_sims);
    return out;
  } catch (const Error& e) {
    throw e.with_context(where(artist, space, condition));
  }
}

std::pair<double, double> fad_mean_std(const std::array<double, kDescriptorSets>& per_set) {
  return {metrics::mean(per_set), metrics::sample_std(per_set)};
}

ArtistSpaceReport evaluate_artist_space(const Manifest& manifest, std::string_view artist,
                                        std::string_view space, const EvalOptions& options) {
  ArtistSpaceReport rep;
  rep.artist = artist;
  rep.space = space;
  rep.baseline = evaluate_condition(manifest, artist, space, ConditionKey::baseline(), options);
  rep.artist_name = evaluate_condition(manifest, artist, space, ConditionKey::artist_name(), options);

  std::array<double, kDescriptorSets> fads{};
  std::vector<double> pooled;
  for (int k = 1; k <= kDescriptorSets; ++k) {
    auto& m = rep.styled[k - 1];
    m = evaluate_condition(manifest, artist, space, ConditionKey::styled(k), options);
    fads[k - 1] = m.fad;
    rep.styled_dmin_median_per_set[k - 1] = m.dmin_median;
    for (const auto& c : m.dmin.per_clip) pooled.push_back(c.d_min);
  }
  std::tie(rep.styled_fad_mean, rep.styled_fad_std) = fad_mean_std(fads);
  rep.styled_dmin_median_pooled = metrics::median(pooled);
  rep.name_free_gap_fad = rep.styled_fad_mean - rep.artist_name.fad;
  rep.name_free_gap_dmin = rep.styled_dmin_median_pooled - rep.artist_name.dmin_median;

  std::set<std::string> sources;
  for (const auto& r : manifest.artist(artist).generated) {
    if (r.space_tag == space && r.condition->kind == ConditionKind::kCrossStyled) {
      sources.insert(r.condition->source_artist);
    }
  }
  for (const auto& source : sources) {
    for (int k = 1; k <= kDescriptorSets; ++k) {
      rep.cross_styled.push_back(evaluate_condition(
          manifest, artist, space, ConditionKey::cross_styled(source, k), options));
    }
  }
  return rep;
}

bool has_cross_conditions(const Manifest& manifest, std::string_view space) {
  if (manifest.artists.size() < 2) return false;
  for (const auto& target : manifest.artists) {
    for (const auto& source : manifest.artists) {
      if (target.name == source.name) continue;
      bool found = false;
      for (const auto& r : target.generated) {
        if (r.space_tag == space && r.condition->kind == ConditionKind::kCrossStyled &&
            r.condition->source_artist == source.name) {
          found = true;
          break;
        }
      }
      if (!found) return false;
    }
  }
  return true;
}

CrossArtistMatrix cross_artist_matrix(const Manifest& manifest, std::string_view space,
                                      const EvalOptions& /*options*/) {
  CrossArtistMatrix out;
  out.space = space;
  out.artists = sorted_artists(manifest);
  for (const auto& target : out.artists) {
    const RowMatrix refs = clip_vectors(manifest, reference_records(manifest, target, space));
    const double base = metrics::centroid_similarity(
        clip_vectors(manifest, condition_records(manifest, target, space, ConditionKey::baseline())),
        refs);
    std::vector<DeltaCell> row;
    for (const auto& source : out.artists) {
      DeltaCell cell;
      cell.target = target;
      cell.source = source;
      std::array<double, kDescriptorSets> set_means{};
      for (int k = 1; k <= kDescriptorSets; ++k) {
        const ConditionKey cond = target == source ? ConditionKey::styled(k)
                                                   : ConditionKey::cross_styled(source, k);
        const auto records = condition_records(manifest, target, space, cond);
        set_means[k - 1] = metrics::centroid_similarity(clip_vectors(manifest, records), refs);
        cell.per_set_delta[k - 1] = set_means[k - 1] - base;
      }
      cell.stat = metrics::delta(metrics::shifted_mean(set_means), base);
      row.push_back(std::move(cell));
    }
    out.cells.push_back(std::move(row));
  }
  return out;
}

AggregateReport aggregate(const Manifest& manifest, std::vector<std::string> spaces,
                          const EvalOptions& options) {
  AggregateReport report;
  report.options = options;
  if (spaces.empty()) spaces = manifest.all_spaces();
  for (const auto& s : spaces) {
    if (std::find(report.spaces.begin(), report.spaces.end(), s) == report.spaces.end()) {
      report.spaces.push_back(s);
    }
  }
  std::vector<std::string> ordered_spaces = report.spaces;
  std::sort(ordered_spaces.begin(), ordered_spaces.end());

  for (const auto& artist : sorted_artists(manifest)) {
    const auto present = manifest.spaces(artist);
    for (const auto& space : ordered_spaces) {
      if (std::find(present.begin(), present.end(), space) == present.end()) {
        throw Error(ErrorCode::kMissingCondition,
                    "artist '" + artist + "' has no clips in space '" + space + "'",
                    {{"artist", artist}, {"space", space}});
      }
      report.cells.push_back(evaluate_artist_space(manifest, artist, space, options));
    }
  }

  for (const auto& space : ordered_spaces) {
    bool any_cross = false;
    for (const auto& a : manifest.artists) {
      for (const auto& r : a.generated) {
        any_cross |= r.space_tag == space && r.condition->kind == ConditionKind::kCrossStyled;
      }
    }
    if (!any_cross) continue;
    if (!has_cross_conditions(manifest, space)) {
      throw Error(ErrorCode::kMissingCrossCondition,
                  "space '" + space + "' has cross-styled clips for only some artist pairs",
                  {{"space", space}});
    }
    report.cross.push_back(cross_artist_matrix(manifest, space, options));
  }
  return report;
}

std::vector<SeedRow> pair_by_seed(const Manifest& manifest, std::string_view artist,
                                  std::string_view space) {
  return check_matched_seeds(manifest, manifest.artist(artist), space);
}

std::vector<double> paired_dmin_diffs(const Manifest& manifest, std::string_view artist,
                                      std::string_view space, const ConditionKey& a,
                                      const ConditionKey& b) {
  pair_by_seed(manifest, artist, space);
  const RowMatrix refs = clip_vectors(manifest, reference_records(manifest, artist, space));
  const auto ra = condition_records(manifest, artist, space, a);
  const auto rb = condition_records(manifest, artist, space, b);
  if (ra.size() != rb.size()) {
    throw Error(ErrorCode::kMatchedSeedViolation, "conditions cover different seed counts",
                {{"artist", std::string(artist)}, {"space", std::string(space)}});
  }
  const RowMatrix va = clip_vectors(manifest, ra);
  const RowMatrix vb = clip_vectors(manifest, rb);
  std::vector<double> diffs;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    if (*ra[i]->seed != *rb[i]->seed) {
      throw Error(ErrorCode::kMatchedSeedViolation,
                  "seed " + std::to_string(*ra[i]->seed) + " has no partner",
                  {{"artist", std::string(artist)}, {"seed", std::to_string(*ra[i]->seed)}});
    }
    const auto idx = static_cast<Eigen::Index>(i);
    diffs.push_back(metrics::min_distance(metrics::row(va, idx), refs) -
                    metrics::min_distance(metrics::row(vb, idx), refs));
  }
  return diffs;
}

}  // namespace stylegap::protocol
