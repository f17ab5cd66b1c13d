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

#include "stylegap/metrics.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "stylegap/error.hpp"

namespace stylegap::metrics {
namespace {

void require_same_dim(std::size_t a, std::size_t b) {
  if (a != b) {
    throw Error(ErrorCode::kDimensionMismatch,
                "dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

Eigen::VectorXd column_mean(const RowMatrix& m) {
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) sum[j] += m(i, j);
  }
  return sum / static_cast<double>(m.rows());
}

// Square root of a symmetric PSD matrix; negative eigenvalues clamp to zero.
bool symmetric_sqrt(const Eigen::MatrixXd& a, Eigen::MatrixXd& out) {
  const Eigen::Index d = a.rows();
  const double tr = a.trace();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a);
  if (eig.info() != Eigen::Success) return false;
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  if (d > 0 && lambda.minCoeff() < -1e-6 * tr / static_cast<double>(d)) return false;
  const Eigen::VectorXd root = lambda.cwiseMax(0.0).cwiseSqrt();
  out = eig.eigenvectors() * root.asDiagonal() * eig.eigenvectors().transpose();
  return true;
}

}  // namespace

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  require_same_dim(a.size(), b.size());
  double dot = 0.0;
  double na2 = 0.0;
  double nb2 = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
  for (std::size_t i = 0; i < a.size(); ++i) na2 += a[i] * a[i];
  for (std::size_t i = 0; i < b.size(); ++i) nb2 += b[i] * b[i];
  if (!(na2 > 0.0) || !(nb2 > 0.0) || !std::isfinite(na2) || !std::isfinite(nb2)) {
    throw Error(ErrorCode::kZeroNormInput, "cosine of a zero-norm or non-finite vector");
  }
  // sqrt(x * x) == x exactly, so a vector scores exactly 1 against itself.
  double denom = std::sqrt(na2 * nb2);
  if (!std::isnormal(denom)) denom = std::sqrt(na2) * std::sqrt(nb2);
  return std::clamp(dot / denom, -1.0, 1.0);
}

double cosine_distance(std::span<const double> a, std::span<const double> b) {
  return 1.0 - cosine_similarity(a, b);
}

double min_distance(std::span<const double> gen, const RowMatrix& refs) {
  if (refs.rows() == 0) throw Error(ErrorCode::kEmptyReferenceSet, "reference set is empty");
  double best = cosine_distance(gen, row(refs, 0));
  for (Eigen::Index j = 1; j < refs.rows(); ++j) {
    const double d = cosine_distance(gen, row(refs, j));
    if (d < best) best = d;
  }
  return best;
}

MinDistanceResult min_distance_condition(const RowMatrix& gens, const RowMatrix& refs,
                                         std::span<const std::string> ids) {
  if (gens.rows() == 0) {
    throw Error(ErrorCode::kInsufficientSamples, "no generated clips for min-distance");
  }
  if (ids.size() != static_cast<std::size_t>(gens.rows())) {
    throw Error(ErrorCode::kDimensionMismatch, "clip id count differs from generated rows");
  }
  MinDistanceResult result;
  std::vector<double> values;
  for (Eigen::Index i = 0; i < gens.rows(); ++i) {
    const double d = min_distance(row(gens, i), refs);
    result.per_clip.push_back({ids[static_cast<std::size_t>(i)], d});
    values.push_back(d);
  }
  result.median = median(std::move(values));
  return result;
}

double median(std::vector<double> values) {
  if (values.empty()) throw Error(ErrorCode::kInsufficientSamples, "median of an empty list");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

double mean(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::kInsufficientSamples, "mean of an empty list");
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

double sample_std(std::span<const double> values) {
  if (values.size() < 2) {
    throw Error(ErrorCode::kInsufficientSamples, "sample std needs at least two values");
  }
  const double m = mean(values);
  double ss = 0.0;
  for (double v : values) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

double shifted_mean(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::kInsufficientSamples, "mean of an empty list");
  const double x0 = values.front();
  double sum = 0.0;
  for (double v : values) sum += v - x0;
  return x0 + sum / static_cast<double>(values.size());
}

GaussianSummary estimate_gaussian(const RowMatrix& samples, CovDivisor divisor) {
  const auto n = samples.rows();
  if (n < 2) {
    throw Error(ErrorCode::kInsufficientSamples,
                "covariance needs at least 2 samples, got " + std::to_string(n));
  }
  GaussianSummary g;
  g.n = static_cast<std::size_t>(n);
  g.mu = column_mean(samples);
  const Eigen::MatrixXd centered = samples.rowwise() - g.mu.transpose();
  const double denom = divisor == CovDivisor::kUnbiased ? static_cast<double>(n - 1)
                                                        : static_cast<double>(n);
  const Eigen::MatrixXd s = (centered.transpose() * centered) / denom;
  g.sigma = (s + s.transpose()) / 2.0;
  return g;
}

double trace_sqrt_product(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const Eigen::Index d = a.rows();
  Eigen::MatrixXd a_root;
  if (!symmetric_sqrt(a, a_root)) {
    const double eps = 1e-10 * a.trace() / static_cast<double>(d);
    const Eigen::MatrixXd jittered = a + eps * Eigen::MatrixXd::Identity(d, d);
    if (!symmetric_sqrt(jittered, a_root)) {
      throw Error(ErrorCode::kSqrtmFailure,
                  "covariance square root failed after jitter retry");
    }
  }
  Eigen::MatrixXd m = a_root * b * a_root;
  m = (m + m.transpose()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) {
    throw Error(ErrorCode::kSqrtmFailure, "eigendecomposition of the covariance product failed");
  }
  return eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
}

double frechet_distance(const GaussianSummary& p, const GaussianSummary& q) {
  require_same_dim(static_cast<std::size_t>(p.mu.size()), static_cast<std::size_t>(q.mu.size()));
  const double mean_term = (p.mu - q.mu).squaredNorm();
  const double tr_p = p.sigma.trace();
  const double tr_q = q.sigma.trace();
  const double cross = trace_sqrt_product(p.sigma, q.sigma);
  const double fad = mean_term + tr_p + tr_q - 2.0 * cross;
  // Rounding can leave a tiny negative residue; anything larger is a failure.
  const double tolerance = 1e-6 * std::max(1.0, mean_term + tr_p + tr_q);
  if (fad < -tolerance) {
    throw Error(ErrorCode::kSqrtmFailure,
                "Frechet distance evaluated to " + std::to_string(fad));
  }
  return std::max(fad, 0.0);
}

std::vector<double> centroid_similarities(const RowMatrix& gens, const RowMatrix& refs) {
  if (refs.rows() == 0) throw Error(ErrorCode::kEmptyReferenceSet, "reference set is empty");
  if (gens.rows() == 0) throw Error(ErrorCode::kInsufficientSamples, "no generated clips");
  const Eigen::VectorXd centroid = column_mean(refs);
  if (!(centroid.norm() > 0.0)) {
    throw Error(ErrorCode::kZeroNormCentroid, "reference centroid has zero norm");
  }
  const std::span<const double> c(centroid.data(), static_cast<std::size_t>(centroid.size()));
  std::vector<double> sims;
  sims.reserve(static_cast<std::size_t>(gens.rows()));
  for (Eigen::Index i = 0; i < gens.rows(); ++i) sims.push_back(cosine_similarity(row(gens, i), c));
  return sims;
}

double centroid_similarity(const RowMatrix& gens, const RowMatrix& refs) {
  return mean(centroid_similarities(gens, refs));
}

DeltaStat delta(double styled_sim, double baseline_sim) {
  return {styled_sim, baseline_sim, styled_sim - baseline_sim};
}

}  // namespace stylegap::metrics
