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

#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include <Eigen/Eigenvalues>

#include "stylegap/error.hpp"

namespace stylegap::oracle {

double analytic_fad(const synth::SynthSpec& p, const synth::SynthSpec& q) {
  if (p.dim != q.dim) throw Error(ErrorCode::kDimensionMismatch, "spec dimensions differ");
  const double mean_term = (p.mu - q.mu).squaredNorm();
  if (!p.covariance && !q.covariance) {
    const double d = p.dim;
    return mean_term + d * p.sigma_scale + d * q.sigma_scale -
           2.0 * d * std::sqrt(p.sigma_scale * q.sigma_scale);
  }
  const Eigen::MatrixXd sp = p.covariance_matrix();
  const Eigen::MatrixXd sq = q.covariance_matrix();
  Eigen::EigenSolver<Eigen::MatrixXd> eig(sp * sq, false);
  double trace_root = 0.0;
  for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
    trace_root += std::sqrt(std::max(eig.eigenvalues()[i].real(), 0.0));
  }
  return mean_term + sp.trace() + sq.trace() - 2.0 * trace_root;
}

std::vector<double> brute_force_dmin(const std::vector<std::vector<double>>& gens,
                                     const std::vector<std::vector<double>>& refs) {
  if (refs.empty()) throw Error(ErrorCode::kEmptyReferenceSet, "no references");
  std::vector<double> out;
  for (const auto& g : gens) {
    double best = 0.0;
    for (std::size_t j = 0; j < refs.size(); ++j) {
      const auto& r = refs[j];
      double dot = 0.0, gg = 0.0, rr = 0.0;
      for (std::size_t i = 0; i < g.size(); ++i) dot += g[i] * r[i];
      for (std::size_t i = 0; i < g.size(); ++i) gg += g[i] * g[i];
      for (std::size_t i = 0; i < r.size(); ++i) rr += r[i] * r[i];
      double denom = std::sqrt(gg * rr);
      if (!std::isnormal(denom)) denom = std::sqrt(gg) * std::sqrt(rr);
      double cos = dot / denom;
      if (cos > 1.0) cos = 1.0;
      if (cos < -1.0) cos = -1.0;
      const double d = 1.0 - cos;
      if (j == 0 || d < best) best = d;
    }
    out.push_back(best);
  }
  return out;
}

}  // namespace stylegap::oracle
