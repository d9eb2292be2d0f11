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

#ifndef PURISIM_CIRCUIT_H
#define PURISIM_CIRCUIT_H

#include <string>
#include <string_view>
#include <vector>

#include "purisim/hyperstate.h"

namespace purisim {

/// Two phase shifters and two directional couplers.
///
/// U = DC(e) P(theta) DC(e) P(phi) with P(a) = diag(e^{ia}, 1). DC(e) splits
/// power (0.5 + e, 0.5 - e) with cross-coupling phase i.
struct MziSetting {
    double theta = 0;
    double phi = 0;
    double splitting_error = 0;
};

Matrix2 directional_coupler(double splitting_error);
/// Throws std::invalid_argument unless splitting_error is in (-0.5, 0.5).
Matrix2 mzi_unitary(const MziSetting &setting);

/// max_ij |a_ij - e^{i chi} b_ij| at the best-aligning global phase chi.
double phase_invariant_distance(const Eigen::Ref<const Eigen::MatrixXcd> &a,
                                const Eigen::Ref<const Eigen::MatrixXcd> &b);

/// Grid search plus pattern refinement for an ideal (splitting_error = 0) MZI
/// setting equal to target up to global phase.
MziSetting find_mzi_setting(const Matrix2 &target);

enum class CircuitName {
    // Phase-flip error generation.
    EgcB,
    EgcC,
    EgcD,
    EgcE,
    // Bit-flip error generation.
    EgcF,
    EgcG,
    EgcH,
    EgcI,
    HadamardBank,
    PurifyOn,
    MeasurePol,
    MeasureSpatial,
    Identity,
};

enum class Side { Alice, Bob, Both };

/// Case-insensitive; accepts e.g. "EGC_G", "purify_on", "Hadamard_Bank".
CircuitName parse_circuit_name(std::string_view name);
std::string to_string(CircuitName name);
Side parse_side(std::string_view side);
const char *to_string(Side side);

struct CircuitConfig {
    CircuitName name = CircuitName::Identity;
    Side side = Side::Both;
    /// Applied to every constituent MZI of the configuration.
    double splitting_error = 0;
};

/// A 4x4 single-photon unitary bound to one photon. Unitarity is checked on
/// construction (tolerance 1e-12).
class LocalUnitary {
   public:
    LocalUnitary(const Matrix4 &u4, Photon side);

    const Matrix4 &matrix() const { return u4_; }
    Photon side() const { return side_; }

   private:
    Matrix4 u4_;
    Photon side_;
};

/// Ideal action of a configuration on the mode basis.
Matrix4 ideal_unitary(CircuitName name);

/// The configuration's action including MZI splitting errors. Equals
/// ideal_unitary(name) exactly when splitting_error == 0.
Matrix4 circuit_unitary(CircuitName name, double splitting_error = 0);

/// One LocalUnitary per photon addressed by config.side.
std::vector<LocalUnitary> compile(const CircuitConfig &config);

/// rho -> (U_A x U_B) rho (U_A x U_B)^dagger, identity on the other photon.
HyperState apply(const HyperState &state, const LocalUnitary &lu);
HyperState apply(const HyperState &state, const std::vector<LocalUnitary> &lus);

/// Conjugates by a full two-photon operator. For channel implementations.
HyperState conjugate(const HyperState &state, const Matrix16 &op);

/// Pauli matrices and the Hadamard.
Matrix2 pauli_x();
Matrix2 pauli_y();
Matrix2 pauli_z();
Matrix2 hadamard();

}  // namespace purisim

#endif
