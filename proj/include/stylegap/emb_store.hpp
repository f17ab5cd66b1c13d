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
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "stylegap/condition.hpp"
#include "stylegap/promptkit.hpp"

namespace stylegap {

using FloatRows = Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// N x dim float32 embeddings in one embedding space; one row per vector.
struct EmbeddingMatrix {
  std::string space_tag;
  FloatRows rows;

  Eigen::Index count() const { return rows.rows(); }
  Eigen::Index dim() const { return rows.cols(); }

  /// Throws unless N >= 1, dim >= 1, entries finite and every row has
  /// positive Euclidean norm.
  void validate() const;

  /// Mean of all rows, in double precision.
  Eigen::VectorXd mean_row() const;

  bool operator==(const EmbeddingMatrix& other) const;
};

inline constexpr std::uint32_t kEmb1Version = 1;
inline constexpr std::size_t kEmb1FixedHeaderBytes = 20;

// EMB1 layout, all integers little-endian:
//   "EMB1" | u32 version | u32 dim | u32 count | u32 tag_len | tag bytes |
//   count*dim float32, row-major.
EmbeddingMatrix read_emb1(const std::filesystem::path& path);
EmbeddingMatrix decode_emb1(const std::string& bytes);
void write_emb1(const EmbeddingMatrix& matrix, const std::filesystem::path& path);
std::string encode_emb1(const EmbeddingMatrix& matrix);

enum class ClipRole { kGenerated, kReference };

struct ClipRecord {
  std::string clip_id;
  std::string artist;
  ClipRole role = ClipRole::kGenerated;
  std::optional<ConditionKey> condition;  // generated only
  std::optional<std::int64_t> seed;       // generated only
  std::string space_tag;
  std::string path;  // relative to the manifest directory
  std::optional<std::int64_t> n_rows;
  std::string metadata;  // opaque JSON text (e.g. excerpt timestamps), may be empty

  bool operator==(const ClipRecord&) const = default;
};

struct ArtistBlock {
  std::string name;
  std::string baseline_prompt;
  std::vector<ClipRecord> references;
  std::vector<ClipRecord> generated;
  std::string descriptors;  // bundle path relative to the manifest, may be empty
  std::optional<promptkit::DescriptorBundle> bundle;

  bool operator==(const ArtistBlock&) const = default;
};

inline constexpr int kDefaultReferenceCount = 15;

struct Manifest {
  int version = 1;
  std::vector<std::int64_t> seeds;
  int n_references = kDefaultReferenceCount;
  std::vector<ArtistBlock> artists;

  std::filesystem::path base_dir;
  std::map<std::string, EmbeddingMatrix> embeddings;  // by clip_id

  const ArtistBlock& artist(std::string_view name) const;
  const EmbeddingMatrix& embedding(const ClipRecord& record) const;

  /// Space tags present for an artist, sorted.
  std::vector<std::string> spaces(std::string_view artist) const;
  /// Space tags present anywhere in the manifest, sorted.
  std::vector<std::string> all_spaces() const;

  /// Generated records of one condition in one space, ordered by seed.
  std::vector<const ClipRecord*> generated(std::string_view artist, std::string_view space,
                                           const ConditionKey& condition) const;
  /// Reference records in one space, ordered by clip_id.
  std::vector<const ClipRecord*> references(std::string_view artist,
                                            std::string_view space) const;

  /// Metadata equality plus bit-exact embedding equality; base_dir ignored.
  bool operator==(const Manifest& other) const;
};

/// Per-seed clip ids for one artist and space: baseline, artist-name, styled 1..5.
struct SeedRow {
  std::int64_t seed = 0;
  std::array<std::string, 2 + kDescriptorSets> clip_ids;
};

/// Checks matched-seed completeness of one artist in one space and returns
/// the pairing table ordered as the declared seed list. Cross-styled
/// records, when present for a source artist, must be complete too.
std::vector<SeedRow> check_matched_seeds(const Manifest& manifest, const ArtistBlock& artist,
                                         std::string_view space);

/// Parses, validates and loads every referenced embedding file.
Manifest load_manifest(const std::filesystem::path& path);

/// Same as load_manifest over already-read JSON text; relative paths resolve
/// against base_dir.
Manifest parse_manifest(const std::string& json_text, const std::filesystem::path& base_dir);

/// Canonical JSON text (sorted keys, two-space indent).
std::string serialize_manifest(const Manifest& manifest);

/// Writes bytes to a sibling temp file and renames it over the target.
void write_file_atomic(const std::filesystem::path& path, const std::string& bytes);

std::string read_file(const std::filesystem::path& path);

}  // namespace stylegap
