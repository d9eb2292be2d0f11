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

#ifndef PURISIM_HYPERSTATE_H
#define PURISIM_HYPERSTATE_H

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <set>
#include <vector>

#include <Eigen/Dense>

namespace purisim {

using Complex = std::complex<double>;
using Matrix2 = Eigen::Matrix<Complex, 2, 2>;
using Matrix4 = Eigen::Matrix<Complex, 4, 4>;
using Matrix16 = Eigen::Matrix<Complex, 16, 16>;
using Vector4 = Eigen::Matrix<Complex, 4, 1>;
using Vector16 = Eigen::Matrix<Complex, 16, 1>;

/// Tolerances shared by every state-valued operation.
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;
/// Post-selection probabilities below this are reported as "no coincidence".
inline constexpr double kNoCoincidence = 1e-15;

enum class Photon { Alice, Bob };
enum class Dof { Polarization, Spatial };

const char *to_string(Photon p);
const char *to_string(Dof d);

/// Waveguide mode <-> (spatial rail, polarization) labeling.
///
/// mode = 2*spatial + polarization, with H = 0 and V = 1. So mode 0 is |0H>,
/// 1 is |0V>, 2 is |1H> and 3 is |1V>.
struct ModeMap {
    int spatial;
    int polarization;

    static constexpr int kModes = 4;

    static ModeMap from_mode(int mode);
    int mode() const { return 2 * spatial + polarization; }
    bool operator==(const ModeMap &) const = default;
};

/// Index of |m_A>|m_B> in the 16-dimensional two-photon basis.
constexpr int pair_index(int mode_a, int mode_b) { return 4 * mode_a + mode_b; }

/// Two-qubit density matrix for one degree of freedom of both photons.
///
/// Basis ordering is |q_A q_B> -> 2*q_A + q_B. Construction validates
/// Hermiticity, unit trace and positivity, and throws std::domain_error on
/// violation.
class TwoQubitState {
   public:
    explicit TwoQubitState(const Matrix4 &rho);

    static TwoQubitState pure(const Vector4 &ket);
    static TwoQubitState maximally_mixed();
    /// v |Phi+><Phi+| + (1 - v) I/4.
    static TwoQubitState werner(double visibility);

    const Matrix4 &matrix() const { return rho_; }
    Complex operator()(int r, int c) const { return rho_(r, c); }
    double min_eigenvalue() const;

   private:
    Matrix4 rho_;
};

/// Two-photon state over four waveguide modes per photon.
///
/// Stored as a 16x16 density matrix; index = 4*m_A + m_B. Every instance is
/// Hermitian, unit-trace and PSD within the tolerances above.
class HyperState {
   public:
    explicit HyperState(const Matrix16 &rho);

    static HyperState pure(const Vector16 &ket);
    static HyperState maximally_mixed();

    const Matrix16 &matrix() const { return rho_; }
    Complex operator()(int r, int c) const { return rho_(r, c); }
    double min_eigenvalue() const;

   private:
    Matrix16 rho_;
};

/// Convex mixture sum_i w_i rho_i. Weights must be non-negative and sum to 1.
HyperState mix(const std::vector<std::pair<double, HyperState>> &terms);

/// The equal superposition (|00> + |11> + |22> + |33>)/2 produced by the source.
HyperState make_initial_state();

/// Partial trace over the other degree of freedom of both photons.
TwoQubitState reduced(const HyperState &state, Dof keep);

/// <target|rho|target>. Throws std::invalid_argument if target is not normalized.
double fidelity(const TwoQubitState &rho, const Vector4 &target);

double purity(const HyperState &state);
double purity(const TwoQubitState &state);

/// Half the trace norm of the difference.
double trace_distance(const TwoQubitState &a, const TwoQubitState &b);
double trace_distance(const HyperState &a, const HyperState &b);
/// Works on arbitrary Hermitian matrices, e.g. unphysical tomography estimates.
double trace_distance(const Matrix4 &a, const Matrix4 &b);

/// |Phi+> = (|00> + |11>)/sqrt2 in the two-qubit basis.
Vector4 phi_plus();

using ModeSet = std::set<int>;

struct PostSelection {
    /// Empty when success_probability < kNoCoincidence.
    std::optional<HyperState> state;
    double success_probability = 0;

    bool no_coincidence() const { return !state.has_value(); }
};

/// Projects both photons onto span(modes) and renormalizes.
PostSelection post_select(const HyperState &state, const ModeSet &modes);

/// Pools several coincidence windows: projects onto the direct sum of
/// span(modes_k) x span(modes_k) over k. The windows must be disjoint.
PostSelection post_select_pooled(const HyperState &state, const std::vector<ModeSet> &windows);

/// Embeds a single-photon 4x4 operator on one photon of the pair.
Matrix16 embed(const Matrix4 &op, Photon photon);
/// Lifts a single-qubit operator to the mode space of one photon, acting on one dof.
Matrix4 lift(const Matrix2 &op, Dof dof);

/// Kronecker product of two 4x4 operators; a acts on photon A.
Matrix16 kron(const Matrix4 &a, const Matrix4 &b);
Matrix4 kron(const Matrix2 &a, const Matrix2 &b);

}  // namespace purisim

#endif
