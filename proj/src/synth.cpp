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

#include "stylegap/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <json.hpp>

#include "stylegap/error.hpp"
#include "stylegap/promptkit.hpp"

namespace stylegap::synth {
namespace {

using nlohmann::json;

Error invalid(const std::string& message) { return Error(ErrorCode::kInvalidSpec, message); }

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

Eigen::VectorXd draw_vector(GaussianStream& stream, Eigen::Index dim) {
  Eigen::VectorXd v(dim);
  for (Eigen::Index j = 0; j < dim; ++j) v[j] = stream.normal();
  return v;
}

// Orthonormal directions from Gram-Schmidt over seeded Gaussian draws.
std::vector<Eigen::VectorXd> orthonormal_basis(GaussianStream& stream, int dim, int count) {
  std::vector<Eigen::VectorXd> basis;
  while (static_cast<int>(basis.size()) < count) {
    Eigen::VectorXd v = draw_vector(stream, dim);
    for (const auto& b : basis) v -= v.dot(b) * b;
    const double norm = v.norm();
    if (norm < 1e-6) continue;
    basis.push_back(v / norm);
  }
  return basis;
}

std::string condition_slug(const ConditionKey& c) {
  switch (c.kind) {
    case ConditionKind::kBaseline: return "baseline";
    case ConditionKind::kArtistName: return "artist_name";
    case ConditionKind::kStyled: return "styled" + std::to_string(c.set_index);
    case ConditionKind::kCrossStyled:
      return "cross_" + slug(c.source_artist) + "_" + std::to_string(c.set_index);
  }
  return "unknown";
}

double get_number(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) throw invalid(std::string("'") + key + "' must be a number");
  const double v = obj[key].get<double>();
  if (!std::isfinite(v)) throw invalid(std::string("'") + key + "' must be finite");
  return v;
}

void reject_unknown(const json& obj, std::initializer_list<std::string_view> allowed,
                    const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw invalid("unexpected field '" + key + "' in " + where);
    }
  }
}

}  // namespace

double GaussianStream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double GaussianStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

std::uint64_t stream_seed(std::uint64_t root, std::string_view label) {
  return splitmix64(root ^ fnv1a64(label));
}

void SynthSpec::validate() const {
  if (dim < 1) throw invalid("dim must be positive");
  if (n < 1) throw invalid("n must be positive");
  if (mu.size() != dim) throw invalid("mu has " + std::to_string(mu.size()) + " entries, dim is " + std::to_string(dim));
  if (!mu.allFinite()) throw invalid("mu must be finite");
  if (covariance) {
    const auto& c = *covariance;
    if (c.rows() != dim || c.cols() != dim) throw invalid("covariance must be dim x dim");
    if (!c.allFinite()) throw invalid("covariance must be finite");
    if ((c - c.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, c.cwiseAbs().maxCoeff())) {
      throw invalid("covariance must be symmetric");
    }
  } else if (!(sigma_scale >= 0.0) || !std::isfinite(sigma_scale)) {
    throw invalid("sigma_scale must be a non-negative finite number");
  }
}

Eigen::MatrixXd SynthSpec::covariance_matrix() const {
  if (covariance) return *covariance;
  return sigma_scale * Eigen::MatrixXd::Identity(dim, dim);
}

RowMatrix draw_rows(const SynthSpec& spec) {
  spec.validate();
  Eigen::MatrixXd factor;
  if (spec.covariance) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(*spec.covariance);
    if (eig.info() != Eigen::Success) throw invalid("covariance eigendecomposition failed");
    const Eigen::VectorXd& lambda = eig.eigenvalues();
    if (lambda.minCoeff() < -1e-9 * std::max(1.0, lambda.maxCoeff())) {
      throw invalid("covariance is not positive semidefinite");
    }
    factor = eig.eigenvectors() * lambda.cwiseMax(0.0).cwiseSqrt().asDiagonal() *
             eig.eigenvectors().transpose();
  }
  const double scale = std::sqrt(spec.sigma_scale);
  GaussianStream stream(spec.rng_seed);
  RowMatrix out(spec.n, spec.dim);
  for (int i = 0; i < spec.n; ++i) {
    const Eigen::VectorXd z = draw_vector(stream, spec.dim);
    out.row(i) = (spec.mu + (spec.covariance ? Eigen::VectorXd(factor * z) : Eigen::VectorXd(scale * z)))
                     .transpose();
  }
  return out;
}

EmbeddingMatrix sample_population(const SynthSpec& spec) {
  EmbeddingMatrix m;
  m.space_tag = spec.space_tag;
  m.rows = draw_rows(spec).cast<float>();
  try {
    m.validate();
  } catch (const Error& e) {
    throw invalid(std::string("spec produces an invalid population: ") + e.what());
  }
  return m;
}

std::string slug(std::string_view name) {
  std::string out;
  bool gap = false;
  for (char c : name) {
    const char lower = (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
    if ((lower >= 'a' && lower <= 'z') || (lower >= '0' && lower <= '9')) {
      if (gap && !out.empty()) out.push_back('_');
      out.push_back(lower);
      gap = false;
    } else {
      gap = true;
    }
  }
  return out;
}

FixtureSpec parse_fixture_spec(const std::string& json_text, const std::filesystem::path& spec_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw invalid(std::string("fixture spec is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw invalid("fixture spec must be an object");
  reject_unknown(doc, {"version", "rng_seed", "seeds", "n_references", "spaces", "artists",
                       "cross_artist", "geometry", "description"},
                 "fixture spec");
  if (doc.value("version", 1) != 1) throw invalid("fixture spec version must be 1");

  FixtureSpec spec;
  spec.spec_dir = spec_dir;
  if (!doc.contains("rng_seed") || !doc["rng_seed"].is_number_unsigned()) {
    throw invalid("'rng_seed' must be a non-negative integer");
  }
  spec.rng_seed = doc["rng_seed"].get<std::uint64_t>();

  if (!doc.contains("seeds") || !doc["seeds"].is_array() || doc["seeds"].empty()) {
    throw invalid("'seeds' must be a non-empty array");
  }
  for (const auto& s : doc["seeds"]) {
    if (!s.is_number_unsigned()) throw invalid("seeds must be non-negative integers");
    spec.seeds.push_back(s.get<std::int64_t>());
  }
  if (doc.contains("n_references")) {
    if (!doc["n_references"].is_number_unsigned() || doc["n_references"].get<int>() < 1) {
      throw invalid("'n_references' must be a positive integer");
    }
    spec.n_references = doc["n_references"].get<int>();
  }

  if (!doc.contains("spaces") || !doc["spaces"].is_array() || doc["spaces"].empty()) {
    throw invalid("'spaces' must be a non-empty array");
  }
  for (const auto& s : doc["spaces"]) {
    if (!s.is_object() || !s.contains("tag") || !s["tag"].is_string() || !s.contains("dim") ||
        !s["dim"].is_number_unsigned()) {
      throw invalid("each space needs a string 'tag' and a positive 'dim'");
    }
    reject_unknown(s, {"tag", "dim", "frames"}, "space");
    FixtureSpace space{s["tag"].get<std::string>(), s["dim"].get<int>(), s.value("frames", 1)};
    if (space.tag.empty() || space.dim < 1 || space.frames < 1) {
      throw invalid("space '" + space.tag + "' needs a tag, dim >= 1 and frames >= 1");
    }
    spec.spaces.push_back(std::move(space));
  }

  if (!doc.contains("artists") || !doc["artists"].is_array() || doc["artists"].empty()) {
    throw invalid("'artists' must be a non-empty array");
  }
  for (const auto& a : doc["artists"]) {
    FixtureArtist artist;
    if (a.is_string()) {
      artist.name = a.get<std::string>();
    } else if (a.is_object() && a.contains("name") && a["name"].is_string()) {
      reject_unknown(a, {"name", "bundle"}, "artist");
      artist.name = a["name"].get<std::string>();
      if (a.contains("bundle")) {
        if (!a["bundle"].is_string()) throw invalid("artist 'bundle' must be a path string");
        artist.bundle = a["bundle"].get<std::string>();
      }
    } else {
      throw invalid("artists must be names or {\"name\", \"bundle\"} objects");
    }
    if (slug(artist.name).empty()) throw invalid("artist name '" + artist.name + "' has no letters");
    spec.artists.push_back(std::move(artist));
  }
  for (std::size_t i = 0; i < spec.artists.size(); ++i) {
    for (std::size_t j = i + 1; j < spec.artists.size(); ++j) {
      if (slug(spec.artists[i].name) == slug(spec.artists[j].name)) {
        throw invalid("artists '" + spec.artists[i].name + "' and '" + spec.artists[j].name +
                      "' collide in clip ids");
      }
    }
  }
  for (const auto& space : spec.spaces) {
    if (space.dim < static_cast<int>(spec.artists.size()) + 1) {
      throw invalid("space '" + space.tag + "' needs dim > number of artists");
    }
  }
  spec.cross_artist = doc.value("cross_artist", true);

  if (doc.contains("geometry")) {
    const json& g = doc["geometry"];
    if (!g.is_object()) throw invalid("'geometry' must be an object");
    reject_unknown(g, {"centroid_radius", "baseline_affinity", "reference_noise",
                       "generated_noise", "frame_noise", "name_pull", "styled_pull",
                       "cross_pull", "set_jitter"},
                   "geometry");
    FixtureGeometry& geo = spec.geometry;
    geo.centroid_radius = get_number(g, "centroid_radius", geo.centroid_radius);
    geo.baseline_affinity = get_number(g, "baseline_affinity", geo.baseline_affinity);
    geo.reference_noise = get_number(g, "reference_noise", geo.reference_noise);
    geo.generated_noise = get_number(g, "generated_noise", geo.generated_noise);
    geo.frame_noise = get_number(g, "frame_noise", geo.frame_noise);
    geo.name_pull = get_number(g, "name_pull", geo.name_pull);
    geo.styled_pull = get_number(g, "styled_pull", geo.styled_pull);
    geo.cross_pull = get_number(g, "cross_pull", geo.cross_pull);
    geo.set_jitter = get_number(g, "set_jitter", geo.set_jitter);
    if (!(geo.centroid_radius > 0.0)) throw invalid("centroid_radius must be positive");
    for (double noise : {geo.reference_noise, geo.generated_noise, geo.frame_noise, geo.set_jitter}) {
      if (noise < 0.0) throw invalid("noise scales must be non-negative");
    }
  }
  return spec;
}

FixtureSpec load_fixture_spec(const std::filesystem::path& path) {
  return parse_fixture_spec(read_file(path), path.parent_path());
}

Manifest build_fixture(const FixtureSpec& spec) {
  const FixtureGeometry& geo = spec.geometry;
  Manifest m;
  m.seeds = spec.seeds;
  m.n_references = spec.n_references;

  for (const auto& fa : spec.artists) {
    ArtistBlock block;
    block.name = fa.name;
    block.baseline_prompt = "synthetic baseline prompt for " + fa.name;
    if (!fa.bundle.empty()) {
      block.bundle = promptkit::load_bundle(spec.spec_dir / fa.bundle);
      if (block.bundle->artist_name != fa.name) {
        throw invalid("bundle " + fa.bundle + " is for artist '" + block.bundle->artist_name + "'");
      }
      block.baseline_prompt = block.bundle->baseline;
      block.descriptors = "descriptors/" + slug(fa.name) + ".json";
    }
    m.artists.push_back(std::move(block));
  }

  const int n_artists = static_cast<int>(spec.artists.size());
  for (const auto& space : spec.spaces) {
    GaussianStream basis_stream(stream_seed(spec.rng_seed, "basis/" + space.tag));
    const auto basis = orthonormal_basis(basis_stream, space.dim, n_artists + 1);
    const double radius = geo.centroid_radius;

    std::vector<Eigen::VectorXd> centroids;
    std::vector<Eigen::VectorXd> baselines;
    std::vector<std::array<Eigen::VectorXd, kDescriptorSets>> jitter;
    for (int a = 0; a < n_artists; ++a) {
      centroids.push_back(radius * (basis[0] + basis[a + 1]));
      baselines.push_back(radius * (basis[0] + geo.baseline_affinity * basis[a + 1]));
      GaussianStream set_stream(
          stream_seed(spec.rng_seed, "set/" + space.tag + "/" + spec.artists[a].name));
      std::array<Eigen::VectorXd, kDescriptorSets> sets;
      for (auto& v : sets) v = geo.set_jitter * draw_vector(set_stream, space.dim);
      jitter.push_back(std::move(sets));
    }

    auto emit = [&](ArtistBlock& block, ClipRecord rec, const Eigen::VectorXd& clip) {
      GaussianStream frame_stream(stream_seed(spec.rng_seed, "frame/" + rec.clip_id));
      EmbeddingMatrix emb;
      emb.space_tag = space.tag;
      emb.rows.resize(space.frames, space.dim);
      for (int f = 0; f < space.frames; ++f) {
        Eigen::VectorXd row = clip;
        if (geo.frame_noise > 0.0) row += geo.frame_noise * draw_vector(frame_stream, space.dim);
        emb.rows.row(f) = row.cast<float>().transpose();
      }
      emb.validate();
      rec.artist = block.name;
      rec.space_tag = space.tag;
      rec.path = "embeddings/" + space.tag + "/" + rec.clip_id + ".emb1";
      rec.n_rows = space.frames;
      m.embeddings.emplace(rec.clip_id, std::move(emb));
      if (rec.role == ClipRole::kReference) {
        block.references.push_back(std::move(rec));
      } else {
        block.generated.push_back(std::move(rec));
      }
    };

    for (int a = 0; a < n_artists; ++a) {
      ArtistBlock& block = m.artists[a];
      const std::string prefix = slug(block.name) + "-" + space.tag;

      GaussianStream ref_stream(stream_seed(spec.rng_seed, "ref/" + space.tag + "/" + block.name));
      for (int r = 0; r < spec.n_references; ++r) {
        ClipRecord rec;
        rec.role = ClipRole::kReference;
        char idx[16];
        std::snprintf(idx, sizeof idx, "%02d", r + 1);
        rec.clip_id = prefix + "-ref" + idx;
        emit(block, rec,
             centroids[a] + geo.reference_noise * draw_vector(ref_stream, space.dim));
      }

      std::vector<std::pair<ConditionKey, Eigen::VectorXd>> centres;
      const Eigen::VectorXd& base = baselines[a];
      centres.emplace_back(ConditionKey::baseline(), base);
      centres.emplace_back(ConditionKey::artist_name(), base + geo.name_pull * (centroids[a] - base));
      for (int k = 1; k <= kDescriptorSets; ++k) {
        centres.emplace_back(ConditionKey::styled(k),
                             base + geo.styled_pull * (centroids[a] - base) + jitter[a][k - 1]);
      }
      if (spec.cross_artist) {
        for (int b = 0; b < n_artists; ++b) {
          if (b == a) continue;
          for (int k = 1; k <= kDescriptorSets; ++k) {
            centres.emplace_back(ConditionKey::cross_styled(spec.artists[b].name, k),
                                 base + geo.cross_pull * (centroids[b] - base) + jitter[b][k - 1]);
          }
        }
      }

      GaussianStream seed_stream(stream_seed(spec.rng_seed, "seed/" + space.tag + "/" + block.name));
      for (std::int64_t seed : spec.seeds) {
        const Eigen::VectorXd noise = geo.generated_noise * draw_vector(seed_stream, space.dim);
        for (const auto& [condition, centre] : centres) {
          ClipRecord rec;
          rec.role = ClipRole::kGenerated;
          rec.condition = condition;
          rec.seed = seed;
          rec.clip_id = prefix + "-" + condition_slug(condition) + "-s" + std::to_string(seed);
          emit(block, rec, centre + noise);
        }
      }
    }
  }
  return m;
}

std::filesystem::path write_fixture(const FixtureSpec& spec, const std::filesystem::path& out_dir) {
  const Manifest m = build_fixture(spec);
  std::error_code ec;
  for (const auto& space : spec.spaces) {
    std::filesystem::create_directories(out_dir / "embeddings" / space.tag, ec);
    if (ec) {
      throw Error(ErrorCode::kIoFailure, "cannot create " + (out_dir / "embeddings" / space.tag).string());
    }
  }
  for (const auto& block : m.artists) {
    if (!block.bundle) continue;
    std::filesystem::create_directories(out_dir / "descriptors", ec);
    write_file_atomic(out_dir / block.descriptors, promptkit::serialize_bundle(*block.bundle));
  }
  for (const auto& block : m.artists) {
    for (const auto* list : {&block.references, &block.generated}) {
      for (const auto& rec : *list) write_emb1(m.embedding(rec), out_dir / rec.path);
    }
  }
  const auto manifest_path = out_dir / "manifest.json";
  write_file_atomic(manifest_path, serialize_manifest(m));
  return manifest_path;
}

}  // namespace stylegap::synth
