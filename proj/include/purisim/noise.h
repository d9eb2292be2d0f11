// Copyright 2026 The purisim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PURISIM_NOISE_H
#define PURISIM_NOISE_H

#include <array>

#include "purisim/circuit.h"
#include "purisim/hyperstate.h"

namespace purisim {

enum class ErrorKind { BitFlip, PhaseFlip };

/// Time-distributed mixture over the four error-generation configurations.
///
/// weights = (none, pol, spa, both); non-negative, summing to 1 within 1e-12.
class ErrorDistribution {
   public:
    ErrorDistribution(ErrorKind kind, std::array<double, 4> weights);

    ErrorKind kind() const { return kind_; }
    const std::array<double, 4> &weights() const { return weights_; }
    double none() const { return weights_[0]; }
    double pol() const { return weights_[1]; }
    double spa() const { return weights_[2]; }
    double both() const { return weights_[3]; }

    /// The configurations realizing each branch, in weight order.
    std::array<CircuitName, 4> branches() const;

   private:
    ErrorKind kind_;
    std::array<double, 4> weights_;
};

/// Independent flips with marginals p_pol and p_spa.
ErrorDistribution independent_rates(ErrorKind kind, double p_pol, double p_spa);

/// sum_k w_k E_k rho E_k^dagger with E_k the branch unitaries on one photon.
/// splitting_error perturbs the MZIs of the bit-flip configurations.
HyperState apply_error_mixture(const HyperState &state, const ErrorDistribution &dist,
                               Photon side = Photon::Bob, double splitting_error = 0);

/// Per-dof white-noise admixture. v = 1 leaves that dof untouched.
struct BaselineNoise {
    double visibility_pol = 1;
    double visibility_spa = 1;
};

/// For each dof, mixes the dof-pair subspace with the two-qubit depolarizing
/// channel: rho -> v rho + (1 - v)/16 sum_{a,b} (s_a x s_b) rho (s_a x s_b).
HyperState apply_baseline(const HyperState &state, const BaselineNoise &noise);

/// Visibility v with v + (1 - v)/4 = target_fidelity. Needs F in [0.25, 1].
double calibrate_visibility(double target_fidelity);

}  // namespace purisim

#endif
