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

#ifndef PURISIM_BELL_H
#define PURISIM_BELL_H

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "purisim/hyperstate.h"
#include "purisim/tomography.h"

namespace purisim {

using BlochVector = Eigen::Vector3d;

/// Measurement directions for the CHSH combination
/// S = E(a,b) - E(a,b') + E(a',b) + E(a',b').
struct ChshSettings {
    BlochVector a;
    BlochVector a_prime;
    BlochVector b;
    BlochVector b_prime;

    /// a = z, a' = x, b = (z+x)/sqrt2, b' = (x-z)/sqrt2; S = 2 sqrt2 on |Phi+>.
    static ChshSettings canonical();
    /// Throws std::invalid_argument if any direction is not unit norm to 1e-12.
    void validate() const;
};

/// The four correlation terms, in the order they enter S.
enum class ChshTerm { AB, ABPrime, APrimeB, APrimeBPrime };
inline constexpr std::array<ChshTerm, 4> kChshTerms{ChshTerm::AB, ChshTerm::ABPrime, ChshTerm::APrimeB,
                                                    ChshTerm::APrimeBPrime};
const char *to_string(ChshTerm t);

struct ChshResult {
    double s = 0;
    /// E(a,b), E(a,b'), E(a',b), E(a',b').
    std::array<double, 4> correlations{};
    /// Present for counts-based estimates only.
    std::optional<double> standard_error;
};

/// n . sigma.
Matrix2 spin_operator(const BlochVector &n);

/// Tr[rho (n_a . sigma) x (n_b . sigma)].
double correlation(const TwoQubitState &rho, const BlochVector &dir_a, const BlochVector &dir_b);

ChshResult chsh_value(const TwoQubitState &rho, const ChshSettings &settings);

/// Counts for one correlation term, outcomes ordered ++, +-, -+, --.
struct ChshRecord {
    ChshTerm term = ChshTerm::AB;
    std::array<uint64_t, 4> counts{};
    double integration_s = 0;
};

/// E = (n_pp + n_mm - n_pm - n_mp) / n per term; standard error from the
/// binomial variance (1 - E^2)/n summed over terms. Needs each term once.
ChshResult chsh_from_counts(const std::vector<ChshRecord> &records);

/// Outcome probabilities for measuring along dir_a on A and dir_b on B.
Outcomes chsh_outcome_probs(const TwoQubitState &rho, const BlochVector &dir_a, const BlochVector &dir_b);

/// Poisson-sampled records for all four terms, stream_base + term index as streams.
std::vector<ChshRecord> simulate_chsh(const TwoQubitState &rho, const ChshSettings &settings,
                                      const DetectionParams &params, double integration_s,
                                      uint64_t stream_base = 0);

/// Records whose frequencies are exactly round(N p_k).
std::vector<ChshRecord> exact_chsh_records(const TwoQubitState &rho, const ChshSettings &settings,
                                           uint64_t shots_per_term);

struct OptimizedChsh {
    ChshSettings settings;
    ChshResult result;
};

/// Maximizes S over the four directions: a fixed polar grid, then a
/// deterministic pattern search on the best grid point.
OptimizedChsh optimize_chsh(const TwoQubitState &rho);

/// 2 sqrt(m1 + m2) from the two largest eigenvalues of T^T T, T_ij = Tr[rho s_i x s_j].
double max_chsh(const TwoQubitState &rho);

}  // namespace purisim

#endif
