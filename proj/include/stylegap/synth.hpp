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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "stylegap/emb_store.hpp"

namespace stylegap::synth {

/// Standard-normal stream: std::mt19937_64 (output fully fixed by the C++
/// standard) feeding Box-Muller. Uniforms are the top 53 bits scaled to
/// [0, 1); each Box-Muller pair yields two draws, consumed in order.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}

  double uniform();
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Seed for the population stream named `label` under a root seed:
/// SplitMix64 finalizer applied to root ^ FNV-1a-64(label).
std::uint64_t stream_seed(std::uint64_t root, std::string_view label);

/// Gaussian population with mean `mu` and covariance sigma_scale * I, or
/// `covariance` when given.
struct SynthSpec {
  std::string space_tag = "synthetic";
  int dim = 0;
  int n = 0;
  Eigen::VectorXd mu;
  double sigma_scale = 1.0;
  std::optional<Eigen::MatrixXd> covariance;
  std::uint64_t rng_seed = 0;

  void validate() const;
  Eigen::MatrixXd covariance_matrix() const;
};

/// n x dim double-precision draws, row by row from a single stream.
RowMatrix draw_rows(const SynthSpec& spec);

/// draw_rows stored as float32.
EmbeddingMatrix sample_population(const SynthSpec& spec);

// ---------------------------------------------------------------------------
// Synthetic experiment fixtures
// ---------------------------------------------------------------------------

struct FixtureSpace {
  std::string tag;
  int dim = 0;
  int frames = 1;  // rows per clip file
};

struct FixtureArtist {
  std::string name;
  std::string bundle;  // descriptor bundle path relative to the spec file, optional
};

/// Geometry of the synthetic embedding space. Per space, orthonormal
/// directions e0 (shared) and e_a (one per artist) are drawn; the artist
/// reference centroid is R (e0 + e_a) and the baseline centre is
/// R (e0 + affinity * e_a). Conditions move the baseline centre a fraction
/// of the way toward a centroid:
///   artist-name     toward own centroid by name_pull
///   styled(k)       toward own centroid by styled_pull, plus set jitter
///   cross(b, k)     toward artist b's centroid by cross_pull, plus b's jitter
/// Every generated clip of seed s adds the same per-seed noise vector.
struct FixtureGeometry {
  double centroid_radius = 4.0;
  double baseline_affinity = 0.5;
  double reference_noise = 0.5;
  double generated_noise = 0.5;
  double frame_noise = 0.1;
  double name_pull = 0.7;
  double styled_pull = 0.5;
  double cross_pull = 0.5;
  double set_jitter = 0.1;
};

struct FixtureSpec {
  std::uint64_t rng_seed = 0;
  std::vector<std::int64_t> seeds;
  int n_references = kDefaultReferenceCount;
  std::vector<FixtureSpace> spaces;
  std::vector<FixtureArtist> artists;
  bool cross_artist = true;
  FixtureGeometry geometry;
  std::filesystem::path spec_dir;  // resolves bundle paths
};

FixtureSpec parse_fixture_spec(const std::string& json_text, const std::filesystem::path& spec_dir);
FixtureSpec load_fixture_spec(const std::filesystem::path& path);

/// Builds the manifest and its embeddings in memory. Descriptor bundles,
/// when named, are loaded and referenced as "descriptors/<slug>.json".
Manifest build_fixture(const FixtureSpec& spec);

/// Writes manifest.json, embeddings/<space>/<clip>.emb1 and descriptor
/// bundles under out_dir; returns the manifest path.
std::filesystem::path write_fixture(const FixtureSpec& spec, const std::filesystem::path& out_dir);

/// Lowercase alphanumerics with every other run replaced by '_'.
std::string slug(std::string_view name);

}  // namespace stylegap::synth
