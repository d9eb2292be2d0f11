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

#include "purisim/bell.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "purisim/circuit.h"

namespace purisim {

namespace {

constexpr double kPi = std::numbers::pi;

int term_index(ChshTerm t) {
    return static_cast<int>(t);
}

double combine(const std::array<double, 4> &e) {
    return e[0] - e[1] + e[2] + e[3];
}

BlochVector direction(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

Eigen::Matrix3d correlation_matrix(const TwoQubitState &rho) {
    const std::array<Matrix2, 3> s{pauli_x(), pauli_y(), pauli_z()};
    Eigen::Matrix3d t;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            t(i, j) = (rho.matrix() * kron(s[i], s[j])).trace().real();
        }
    }
    return t;
}

BlochVector unit_or(const BlochVector &v, const BlochVector &fallback) {
    const double n = v.norm();
    return n > 1e-14 ? BlochVector(v / n) : fallback;
}

// Best b, b' for fixed a, a' and the resulting settings.
ChshSettings complete(const Eigen::Matrix3d &t, const BlochVector &a, const BlochVector &a_prime) {
    const BlochVector z(0, 0, 1);
    const BlochVector x(1, 0, 0);
    return {a, a_prime, unit_or(t.transpose() * (a + a_prime), z), unit_or(t.transpose() * (a_prime - a), x)};
}

double s_of(const Eigen::Matrix3d &t, const ChshSettings &c) {
    return c.a.dot(t * c.b) - c.a.dot(t * c.b_prime) + c.a_prime.dot(t * c.b) + c.a_prime.dot(t * c.b_prime);
}

}  // namespace

ChshSettings ChshSettings::canonical() {
    const double r = 1 / std::sqrt(2.0);
    return {BlochVector(0, 0, 1), BlochVector(1, 0, 0), BlochVector(r, 0, r), BlochVector(r, 0, -r)};
}

void ChshSettings::validate() const {
    for (const BlochVector *v : {&a, &a_prime, &b, &b_prime}) {
        if (std::abs(v->norm() - 1) > 1e-12) {
            throw std::invalid_argument("ChshSettings: measurement direction is not a unit vector");
        }
    }
}

const char *to_string(ChshTerm t) {
    switch (t) {
        case ChshTerm::AB:
            return "ab";
        case ChshTerm::ABPrime:
            return "ab'";
        case ChshTerm::APrimeB:
            return "a'b";
        case ChshTerm::APrimeBPrime:
            return "a'b'";
    }
    return "?";
}

Matrix2 spin_operator(const BlochVector &n) {
    return n.x() * pauli_x() + n.y() * pauli_y() + n.z() * pauli_z();
}

double correlation(const TwoQubitState &rho, const BlochVector &dir_a, const BlochVector &dir_b) {
    if (std::abs(dir_a.norm() - 1) > 1e-12 || std::abs(dir_b.norm() - 1) > 1e-12) {
        throw std::invalid_argument("correlation: directions must be unit vectors");
    }
    const Matrix4 obs = kron(spin_operator(dir_a), spin_operator(dir_b));
    return std::clamp((rho.matrix() * obs).trace().real(), -1.0, 1.0);
}

ChshResult chsh_value(const TwoQubitState &rho, const ChshSettings &settings) {
    settings.validate();
    ChshResult out;
    out.correlations = {correlation(rho, settings.a, settings.b), correlation(rho, settings.a, settings.b_prime),
                        correlation(rho, settings.a_prime, settings.b),
                        correlation(rho, settings.a_prime, settings.b_prime)};
    out.s = combine(out.correlations);
    return out;
}

ChshResult chsh_from_counts(const std::vector<ChshRecord> &records) {
    if (records.size() != 4) {
        throw std::invalid_argument("chsh_from_counts: expected 4 records");
    }
    std::array<bool, 4> seen{};
    ChshResult out;
    double variance = 0;
    for (const auto &r : records) {
        const int i = term_index(r.term);
        if (seen[i]) {
            throw std::invalid_argument("chsh_from_counts: duplicate term");
        }
        seen[i] = true;
        const auto &c = r.counts;
        const double n = static_cast<double>(c[0] + c[1] + c[2] + c[3]);
        if (n <= 0) {
            throw std::invalid_argument("chsh_from_counts: record with zero total counts");
        }
        const double e = (static_cast<double>(c[0]) + static_cast<double>(c[3]) - static_cast<double>(c[1]) -
                          static_cast<double>(c[2])) /
                         n;
        out.correlations[i] = e;
        variance += (1 - e * e) / n;
    }
    out.s = combine(out.correlations);
    out.standard_error = std::sqrt(variance);
    return out;
}

Outcomes chsh_outcome_probs(const TwoQubitState &rho, const BlochVector &dir_a, const BlochVector &dir_b) {
    // Spectral projectors (I +/- n.sigma)/2 of each spin observable.
    auto proj = [](const BlochVector &n, int sign) {
        return Matrix2((Matrix2::Identity() + sign * spin_operator(n)) / 2.0);
    };
    Projectors p;
    p[0] = kron(proj(dir_a, 1), proj(dir_b, 1));
    p[1] = kron(proj(dir_a, 1), proj(dir_b, -1));
    p[2] = kron(proj(dir_a, -1), proj(dir_b, 1));
    p[3] = kron(proj(dir_a, -1), proj(dir_b, -1));
    return outcome_probs(rho, p);
}

namespace {

std::pair<BlochVector, BlochVector> term_directions(const ChshSettings &s, ChshTerm t) {
    switch (t) {
        case ChshTerm::AB:
            return {s.a, s.b};
        case ChshTerm::ABPrime:
            return {s.a, s.b_prime};
        case ChshTerm::APrimeB:
            return {s.a_prime, s.b};
        case ChshTerm::APrimeBPrime:
            return {s.a_prime, s.b_prime};
    }
    return {s.a, s.b};
}

}  // namespace

std::vector<ChshRecord> simulate_chsh(const TwoQubitState &rho, const ChshSettings &settings,
                                      const DetectionParams &params, double integration_s, uint64_t stream_base) {
    settings.validate();
    std::vector<ChshRecord> out;
    for (ChshTerm t : kChshTerms) {
        const auto [da, db] = term_directions(settings, t);
        const Outcomes p = chsh_outcome_probs(rho, da, db);
        out.push_back({t, sample_counts(p, params, integration_s, stream_base + term_index(t)), integration_s});
    }
    return out;
}

std::vector<ChshRecord> exact_chsh_records(const TwoQubitState &rho, const ChshSettings &settings,
                                           uint64_t shots_per_term) {
    settings.validate();
    std::vector<ChshRecord> out;
    for (ChshTerm t : kChshTerms) {
        const auto [da, db] = term_directions(settings, t);
        const Outcomes p = chsh_outcome_probs(rho, da, db);
        ChshRecord r{t, {}, 0};
        for (int k = 0; k < 4; ++k) {
            r.counts[k] = static_cast<uint64_t>(std::llround(p[k] * static_cast<double>(shots_per_term)));
        }
        out.push_back(r);
    }
    return out;
}

OptimizedChsh optimize_chsh(const TwoQubitState &rho) {
    const Eigen::Matrix3d t = correlation_matrix(rho);

    // Polar grid, poles included once each.
    std::vector<std::pair<double, double>> grid{{0, 0}};
    constexpr int kTheta = 6;
    constexpr int kPhi = 8;
    for (int i = 1; i < kTheta; ++i) {
        for (int j = 0; j < kPhi; ++j) {
            grid.emplace_back(kPi * i / kTheta, 2 * kPi * j / kPhi);
        }
    }
    grid.emplace_back(kPi, 0);

    std::array<double, 4> best_angles{};
    double best = -1;
    for (const auto &[ta, pa] : grid) {
        for (const auto &[tp, pp] : grid) {
            const double s = s_of(t, complete(t, direction(ta, pa), direction(tp, pp)));
            if (s > best + 1e-15) {
                best = s;
                best_angles = {ta, pa, tp, pp};
            }
        }
    }

    double step = kPi / kTheta / 2;
    while (step > 1e-12) {
        bool moved = false;
        for (int k = 0; k < 4; ++k) {
            for (double sign : {1.0, -1.0}) {
                auto trial = best_angles;
                trial[k] += sign * step;
                const double s =
                    s_of(t, complete(t, direction(trial[0], trial[1]), direction(trial[2], trial[3])));
                if (s > best + 1e-15) {
                    best = s;
                    best_angles = trial;
                    moved = true;
                }
            }
        }
        if (!moved) {
            step /= 2;
        }
    }

    OptimizedChsh out;
    out.settings = complete(t, direction(best_angles[0], best_angles[1]), direction(best_angles[2], best_angles[3]));
    out.result = chsh_value(rho, out.settings);
    return out;
}

double max_chsh(const TwoQubitState &rho) {
    const Eigen::Matrix3d t = correlation_matrix(rho);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(t.transpose() * t, Eigen::EigenvaluesOnly);
    const auto ev = solver.eigenvalues();
    return 2 * std::sqrt(std::max(0.0, ev(2) + ev(1)));
}

}  // namespace purisim
