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

#include "purisim/noise.h"

#include <cmath>
#include <stdexcept>

namespace purisim {

namespace {

void check_probability(double p, const char *what) {
    if (!(p >= 0 && p <= 1)) {
        throw std::invalid_argument(std::string(what) + ": probability outside [0,1]");
    }
}

Matrix16 depolarize_dof(const Matrix16 &rho, Dof dof, double v) {
    if (v == 1) {
        return rho;
    }
    const std::array<Matrix2, 4> paulis{Matrix2::Identity(), pauli_x(), pauli_y(), pauli_z()};
    Matrix16 twirled = Matrix16::Zero();
    for (const auto &sa : paulis) {
        for (const auto &sb : paulis) {
            const Matrix16 k = kron(lift(sa, dof), lift(sb, dof));
            twirled += k * rho * k.adjoint();
        }
    }
    return v * rho + (1 - v) / 16.0 * twirled;
}

}  // namespace

ErrorDistribution::ErrorDistribution(ErrorKind kind, std::array<double, 4> weights)
    : kind_(kind), weights_(weights) {
    double total = 0;
    for (double w : weights_) {
        if (!(w >= 0) || !std::isfinite(w)) {
            throw std::invalid_argument("ErrorDistribution: weights must be finite and non-negative");
        }
        total += w;
    }
    if (std::abs(total - 1) > 1e-12) {
        throw std::invalid_argument("ErrorDistribution: weights must sum to 1");
    }
}

std::array<CircuitName, 4> ErrorDistribution::branches() const {
    if (kind_ == ErrorKind::BitFlip) {
        return {CircuitName::EgcF, CircuitName::EgcG, CircuitName::EgcH, CircuitName::EgcI};
    }
    return {CircuitName::EgcB, CircuitName::EgcC, CircuitName::EgcD, CircuitName::EgcE};
}

ErrorDistribution independent_rates(ErrorKind kind, double p_pol, double p_spa) {
    check_probability(p_pol, "independent_rates");
    check_probability(p_spa, "independent_rates");
    return ErrorDistribution(kind, {(1 - p_pol) * (1 - p_spa), p_pol * (1 - p_spa),
                                    (1 - p_pol) * p_spa, p_pol * p_spa});
}

HyperState apply_error_mixture(const HyperState &state, const ErrorDistribution &dist, Photon side,
                               double splitting_error) {
    const auto names = dist.branches();
    Matrix16 acc = Matrix16::Zero();
    for (size_t k = 0; k < names.size(); ++k) {
        if (dist.weights()[k] == 0) {
            continue;
        }
        const Matrix16 e = embed(circuit_unitary(names[k], splitting_error), side);
        acc += dist.weights()[k] * (e * state.matrix() * e.adjoint());
    }
    return HyperState(acc);
}

HyperState apply_baseline(const HyperState &state, const BaselineNoise &noise) {
    check_probability(noise.visibility_pol, "apply_baseline");
    check_probability(noise.visibility_spa, "apply_baseline");
    Matrix16 rho = depolarize_dof(state.matrix(), Dof::Polarization, noise.visibility_pol);
    rho = depolarize_dof(rho, Dof::Spatial, noise.visibility_spa);
    return HyperState(rho);
}

double calibrate_visibility(double target_fidelity) {
    if (!(target_fidelity >= 0.25 && target_fidelity <= 1)) {
        throw std::invalid_argument("calibrate_visibility: fidelity must lie in [0.25, 1]");
    }
    return (4 * target_fidelity - 1) / 3;
}

}  // namespace purisim
