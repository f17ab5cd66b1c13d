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

#include <cmath>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "stylegap/error.hpp"
#include "test_util.hpp"

namespace stylegap::synth {
namespace {

SynthSpec isotropic(int dim, int n, double mu, double sigma_scale, std::uint64_t seed) {
  SynthSpec s;
  s.dim = dim;
  s.n = n;
  s.mu = Eigen::VectorXd::Constant(dim, mu);
  s.sigma_scale = sigma_scale;
  s.rng_seed = seed;
  return s;
}

TEST(GaussianStream, FirstDrawsAreFrozen) {
  // mt19937_64 is fully specified, so these values hold on any conforming
  // standard library; the 10000th raw output is fixed by the standard.
  std::mt19937_64 engine(5489u);
  engine.discard(9999);
  EXPECT_EQ(engine(), 9981545732273789042ull);

  GaussianStream a(7);
  GaussianStream b(7);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.normal(), b.normal());
  GaussianStream c(8);
  EXPECT_NE(GaussianStream(7).normal(), c.normal());
}

TEST(GaussianStream, UniformRangeAndMoments) {
  GaussianStream s(123);
  double sum = 0.0, sum2 = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = s.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
  for (int i = 0; i < n; ++i) {
    const double z = s.normal();
    sum += z;
    sum2 += z * z;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.01);
  EXPECT_NEAR(sum2 / n, 1.0, 0.01);
}

TEST(StreamSeed, DependsOnRootAndLabel) {
  EXPECT_EQ(stream_seed(1, "ref/vggish/A"), stream_seed(1, "ref/vggish/A"));
  EXPECT_NE(stream_seed(1, "ref/vggish/A"), stream_seed(2, "ref/vggish/A"));
  EXPECT_NE(stream_seed(1, "ref/vggish/A"), stream_seed(1, "ref/vggish/B"));
}

TEST(SamplePopulation, DeterministicPerSeed) {
  const auto spec = isotropic(2, 3, 1.0, 1.0, 7);
  EXPECT_EQ(sample_population(spec), sample_population(spec));
  auto other = spec;
  other.rng_seed = 8;
  EXPECT_FALSE(sample_population(spec) == sample_population(other));
}

TEST(SamplePopulation, ZeroScaleRepeatsMean) {
  auto spec = isotropic(4, 6, 0.0, 0.0, 1);
  spec.mu << 1.0, -2.0, 0.5, 3.0;
  const auto m = sample_population(spec);
  for (Eigen::Index i = 0; i < m.count(); ++i) {
    EXPECT_EQ(m.rows.row(i), spec.mu.cast<float>().transpose());
  }
}

TEST(SamplePopulation, LawOfLargeNumbers) {
  const auto rows = draw_rows(isotropic(8, 5000, 0.0, 1.0, 2024));
  EXPECT_LT(rows.colwise().mean().norm(), 0.1);
}

TEST(SamplePopulation, InvalidSpecs) {
  auto expect_invalid = [](const SynthSpec& s) {
    try {
      sample_population(s);
      ADD_FAILURE();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kInvalidSpec);
    }
  };
  expect_invalid(isotropic(0, 3, 0.0, 1.0, 1));
  expect_invalid(isotropic(2, 0, 0.0, 1.0, 1));
  expect_invalid(isotropic(2, 3, 0.0, -1.0, 1));
  expect_invalid(isotropic(2, 3, 0.0, 0.0, 1));  // every row would have zero norm
  auto bad_mu = isotropic(3, 3, 0.0, 1.0, 1);
  bad_mu.mu = Eigen::VectorXd::Zero(2);
  expect_invalid(bad_mu);
  auto asym = isotropic(2, 3, 1.0, 1.0, 1);
  asym.covariance = Eigen::Matrix2d{{1.0, 0.5}, {0.0, 1.0}};
  expect_invalid(asym);
  auto indefinite = isotropic(2, 3, 1.0, 1.0, 1);
  indefinite.covariance = Eigen::Matrix2d{{1.0, 0.0}, {0.0, -1.0}};
  expect_invalid(indefinite);
}

TEST(AnalyticFad, ClosedForms) {
  const auto p = isotropic(4, 10, 0.0, 1.0, 1);
  EXPECT_EQ(oracle::analytic_fad(p, p), 0.0);
  auto q = p;
  q.mu.array() += 0.5;
  EXPECT_DOUBLE_EQ(oracle::analytic_fad(p, q), 1.0);
  EXPECT_DOUBLE_EQ(oracle::analytic_fad(isotropic(1, 2, 0.0, 1.0, 1), isotropic(1, 2, 0.0, 4.0, 1)), 1.0);
  auto full = p;
  full.covariance = Eigen::MatrixXd::Identity(4, 4);
  EXPECT_NEAR(oracle::analytic_fad(full, q), 1.0, 1e-12);
  EXPECT_THROW(oracle::analytic_fad(p, isotropic(3, 2, 0.0, 1.0, 1)), Error);
}

TEST(BruteForceDmin, SelfReferenceIsZero) {
  EXPECT_EQ(oracle::brute_force_dmin({{3.0, 4.0}}, {{3.0, 4.0}}).front(), 0.0);
}

TEST(Slug, Normalizes) {
  EXPECT_EQ(slug("Billie Eilish"), "billie_eilish");
  EXPECT_EQ(slug("Tyler, The Creator"), "tyler_the_creator");
  EXPECT_EQ(slug("  The  Weeknd! "), "the_weeknd");
}

// ---------------------------------------------------------------------------
// Fixtures
// ---------------------------------------------------------------------------

FixtureSpec load(const char* name) {
  return load_fixture_spec(testing::fixture_dir() / "synth" / name);
}

TEST(Fixture, RecordLayout) {
  const Manifest m = build_fixture(load("displacement.json"));
  ASSERT_EQ(m.artists.size(), 2u);
  for (const auto& a : m.artists) {
    // Two spaces x (10 seeds x (7 + 5 cross)).
    EXPECT_EQ(a.generated.size(), 2u * 10u * 12u);
    EXPECT_EQ(a.references.size(), 2u * 15u);
  }
  const auto& clip = m.embedding(m.artists[0].generated.front());
  EXPECT_EQ(clip.space_tag, "vggish");
  EXPECT_EQ(clip.count(), 3);
  EXPECT_EQ(clip.dim(), 128);
}

TEST(Fixture, NullScenarioPutsEveryClipOnItsCentroid) {
  const Manifest m = build_fixture(load("null.json"));
  for (const auto& a : m.artists) {
    const auto& first = m.embedding(a.references.front());
    for (const auto* list : {&a.references, &a.generated}) {
      for (const auto& r : *list) {
        if (r.space_tag != first.space_tag) continue;
        const auto& e = m.embedding(r);
        for (Eigen::Index f = 0; f < e.count(); ++f) EXPECT_EQ(e.rows.row(f), first.rows.row(0));
      }
    }
  }
}

TEST(Fixture, MatchedSeedsShareNoise) {
  auto spec = load("displacement.json");
  spec.geometry.frame_noise = 0.0;
  spec.geometry.set_jitter = 0.0;
  spec.geometry.styled_pull = 0.0;
  spec.geometry.name_pull = 0.0;
  spec.geometry.cross_pull = 0.0;
  const Manifest m = build_fixture(spec);
  for (std::int64_t seed : {0, 5}) {
    const auto base = m.generated("Billie Eilish", "clap", ConditionKey::baseline());
    const auto styled = m.generated("Billie Eilish", "clap", ConditionKey::styled(2));
    EXPECT_EQ(m.embedding(*base[seed]).rows, m.embedding(*styled[seed]).rows);
  }
}

TEST(Fixture, WriteIsReproducibleAndSeedSensitive) {
  const auto spec = load("toward_centroid.json");
  const auto a = testing::scratch_dir("fixture_a");
  const auto b = testing::scratch_dir("fixture_b");
  write_fixture(spec, a);
  write_fixture(spec, b);
  const std::string clip = "embeddings/clap/billie_eilish-clap-styled2-s4.emb1";
  EXPECT_EQ(read_file(a / "manifest.json"), read_file(b / "manifest.json"));
  EXPECT_EQ(read_file(a / clip), read_file(b / clip));

  auto reseeded = spec;
  reseeded.rng_seed += 1;
  const auto c = testing::scratch_dir("fixture_c");
  write_fixture(reseeded, c);
  EXPECT_EQ(read_file(a / "manifest.json"), read_file(c / "manifest.json"));
  EXPECT_NE(read_file(a / clip), read_file(c / clip));
  EXPECT_EQ(read_file(a / clip).size(), read_file(c / clip).size());
}

TEST(Fixture, SpecErrors) {
  auto expect_invalid = [](const std::string& text) {
    try {
      parse_fixture_spec(text, ".");
      ADD_FAILURE() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kInvalidSpec);
    }
  };
  expect_invalid("{");
  expect_invalid(R"({"rng_seed": 1, "seeds": [0], "spaces": [{"tag":"a","dim":4}]})");
  expect_invalid(R"({"rng_seed": 1, "seeds": [0], "spaces": [{"tag":"a","dim":2}], "artists": ["A", "B"]})");
  expect_invalid(R"({"rng_seed": 1, "seeds": [], "spaces": [{"tag":"a","dim":4}], "artists": ["A"]})");
  expect_invalid(R"({"rng_seed": -1, "seeds": [0], "spaces": [{"tag":"a","dim":4}], "artists": ["A"]})");
  expect_invalid(R"({"rng_seed": 1, "seeds": [0], "spaces": [{"tag":"a","dim":4}], "artists": ["A"], "bogus": 1})");
  expect_invalid(R"({"rng_seed": 1, "seeds": [0], "spaces": [{"tag":"a","dim":4}], "artists": ["A", "a"]})");
  expect_invalid(R"({"rng_seed": 1, "seeds": [0], "spaces": [{"tag":"a","dim":4}], "artists": ["A"], "geometry": {"reference_noise": -1}})");
}

}  // namespace
}  // namespace stylegap::synth
