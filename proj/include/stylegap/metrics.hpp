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

#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "stylegap/emb_store.hpp"

namespace stylegap::metrics {

/// View of row `i` of a row-major matrix.
inline std::span<const double> row(const RowMatrix& m, Eigen::Index i) {
  return {m.data() + i * m.cols(), static_cast<std::size_t>(m.cols())};
}

/// Cosine similarity clamped to [-1, 1]. Throws ZeroNormInput.
double cosine_similarity(std::span<const double> a, std::span<const double> b);

/// 1 - cosine_similarity, in [0, 2].
double cosine_distance(std::span<const double> a, std::span<const double> b);

/// Cosine distance from `gen` to its nearest reference row.
double min_distance(std::span<const double> gen, const RowMatrix& refs);

struct ClipDistance {
  std::string clip_id;
  double d_min = 0.0;
};

struct MinDistanceResult {
  std::vector<ClipDistance> per_clip;
  double median = 0.0;
};

MinDistanceResult min_distance_condition(const RowMatrix& gens, const RowMatrix& refs,
                                         std::span<const std::string> ids);

/// Order-statistic median; even counts average the central pair.
double median(std::vector<double> values);

double mean(std::span<const double> values);

/// Sample standard deviation (divisor n - 1).
double sample_std(std::span<const double> values);

/// Mean computed as x0 + sum(x_i - x0)/n, which returns x0 exactly when all
/// inputs are equal.
double shifted_mean(std::span<const double> values);

enum class CovDivisor { kUnbiased, kPopulation };

struct GaussianSummary {
  Eigen::VectorXd mu;
  Eigen::MatrixXd sigma;
  std::size_t n = 0;
};

/// Column mean and sample covariance, symmetrized as (S + S^T) / 2.
GaussianSummary estimate_gaussian(const RowMatrix& samples,
                                  CovDivisor divisor = CovDivisor::kUnbiased);

/// Tr((A B)^{1/2}) for symmetric PSD A, B through the symmetric route
/// sum sqrt(eig(A^{1/2} B A^{1/2})).
///
/// A is decomposed first; if that fails or A has an eigenvalue below
/// -1e-6 * tr(A) / D, eps * I with eps = 1e-10 * tr(A) / D is added and the
/// decomposition retried once before SqrtmFailure is thrown.
double trace_sqrt_product(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// Frechet distance ||mu_p - mu_q||^2 + Tr(S_p + S_q - 2 (S_p S_q)^{1/2}).
double frechet_distance(const GaussianSummary& p, const GaussianSummary& q);

/// Per-clip cosine similarity of each generated row to the mean reference row.
std::vector<double> centroid_similarities(const RowMatrix& gens, const RowMatrix& refs);

/// Mean of centroid_similarities.
double centroid_similarity(const RowMatrix& gens, const RowMatrix& refs);

struct DeltaStat {
  double styled_mean_sim = 0.0;
  double baseline_mean_sim = 0.0;
  double delta = 0.0;
};

DeltaStat delta(double styled_sim, double baseline_sim);

}  // namespace stylegap::metrics
