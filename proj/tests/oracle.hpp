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

// Independent reference computations used only by tests.

#include <vector>

#include "stylegap/synth.hpp"

namespace stylegap::oracle {

/// Exact Frechet distance between the Gaussians two specs describe. The
/// covariance cross term uses the eigenvalues of the (non-symmetric)
/// product S_p S_q, or D * sqrt(s_p * s_q) when both are isotropic.
double analytic_fad(const synth::SynthSpec& p, const synth::SynthSpec& q);

/// Naive double loop of cosine distance to the nearest reference, one value
/// per generated vector.
std::vector<double> brute_force_dmin(const std::vector<std::vector<double>>& gens,
                                     const std::vector<std::vector<double>>& refs);

}  // namespace stylegap::oracle
