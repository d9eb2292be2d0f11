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

#ifndef PURISIM_TOMOGRAPHY_H
#define PURISIM_TOMOGRAPHY_H

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "purisim/hyperstate.h"

namespace purisim {

enum class Basis { Z, X, Y };

char to_char(Basis b);
Basis parse_basis(std::string_view s);
Dof parse_dof(std::string_view s);

struct MeasurementSetting {
    Basis basis_a = Basis::Z;
    Basis basis_b = Basis::Z;
    Dof dof = Dof::Polarization;

    /// 3 * basis_a + basis_b, in Z, X, Y order.
    int index() const;
    bool operator==(const MeasurementSetting &) const = default;
};

/// The nine Pauli-product settings for one dof, in index() order.
std::array<MeasurementSetting, 9> tomography_settings(Dof dof);

/// Outcome order everywhere: ++, +-, -+, --.
using Outcomes = std::array<double, 4>;
using Projectors = std::array<Matrix4, 4>;

/// Eigenprojectors of the outcome pairs. The basis rotation in front of the
/// Z-basis detectors is an MZI; splitting_error perturbs it.
Projectors projectors(const MeasurementSetting &setting, double splitting_error = 0);

/// Born rule; tiny negatives are clipped and the result renormalized.
Outcomes outcome_probs(const TwoQubitState &rho, const MeasurementSetting &setting,
                       double splitting_error = 0);
Outcomes outcome_probs(const TwoQubitState &rho, const Projectors &proj);

struct DetectionParams {
    /// Coincidence rate in Hz.
    double pair_rate = 40;
    /// Per-detector efficiency, used only when rate_is_generated.
    double efficiency = 0.25;
    bool rate_is_generated = false;
    double dark_coincidence_rate = 0;
    uint64_t seed = 0;

    /// Detected coincidence rate after detector efficiency.
    double detected_rate() const;
    void validate() const;
};

struct CountRecord {
    MeasurementSetting setting;
    std::array<uint64_t, 4> counts{};
    double integration_s = 0;

    uint64_t total() const;
};

/// Independent seed for sub-stream `stream` of a run seeded with `seed`.
uint64_t derive_seed(uint64_t seed, uint64_t stream);

/// Poisson counts with mean detected_rate * T * probs[k] + dark_rate * T / 4.
/// Deterministic in (params.seed, stream).
std::array<uint64_t, 4> sample_counts(const Outcomes &probs, const DetectionParams &params,
                                      double integration_s, uint64_t stream);

/// All nine settings for rho, using stream_base + setting.index() as the stream.
std::vector<CountRecord> simulate_tomography(const TwoQubitState &rho, Dof dof,
                                             const DetectionParams &params, double integration_s,
                                             uint64_t stream_base = 0, double splitting_error = 0);

/// Counts round(N * p_k) with no sampling noise.
std::vector<CountRecord> exact_records(const TwoQubitState &rho, Dof dof, uint64_t shots_per_setting);

enum class ReconstructionMethod { LinearInversion, MaximumLikelihood };
const char *to_string(ReconstructionMethod m);

struct TomographyResult {
    /// Hermitian and unit trace. PSD only for maximum likelihood.
    Matrix4 rho_hat;
    ReconstructionMethod method = ReconstructionMethod::LinearInversion;
    std::optional<double> log_likelihood;
    /// Log-likelihood after every accepted iteration, starting from I/4.
    std::vector<double> log_likelihood_trace;
    int iterations = 0;
    bool converged = true;

    double min_eigenvalue() const;
    bool physical() const { return min_eigenvalue() >= -kPsdTol; }
    /// Throws std::domain_error for unphysical estimates.
    TwoQubitState state() const;
};

/// Throws std::invalid_argument unless the nine settings of a single dof are
/// each present exactly once with a positive total.
TomographyResult linear_inversion(const std::vector<CountRecord> &records);

struct MleOptions {
    /// Stop once the per-count log-likelihood gain falls below tol.
    double tol = 1e-10;
    int max_iter = 10000;
};

/// Maximum-likelihood estimate by the R rho R fixed-point iteration, diluted
/// whenever a full step would lower the likelihood.
TomographyResult mle_reconstruct(const std::vector<CountRecord> &records, const MleOptions &opts = {});

double log_likelihood(const Matrix4 &rho, const std::vector<CountRecord> &records);

void write_counts_csv(std::ostream &out, const std::vector<CountRecord> &records);
/// Throws std::invalid_argument with the offending line number.
std::vector<CountRecord> read_counts_csv(std::istream &in);

}  // namespace purisim

#endif
