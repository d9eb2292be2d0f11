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

#include "purisim/tomography.h"

#include <algorithm>
#include <sstream>

#include "gtest/gtest.h"
#include "purisim/circuit.h"
#include "test_util.h"

using namespace purisim;

namespace {

void expect_outcomes(const Outcomes &got, const Outcomes &want, double tol) {
    for (int k = 0; k < 4; ++k) {
        EXPECT_NEAR(got[k], want[k], tol) << k;
    }
}

// Born probabilities from explicitly built eigenvectors, independent of the
// library's basis rotations.
Outcomes born(const Matrix4 &rho, Basis a, Basis b) {
    auto eig = [](Basis basis, int sign) {
        Eigen::Matrix<Complex, 2, 1> v;
        const double r = 1 / std::sqrt(2.0);
        switch (basis) {
            case Basis::Z:
                v = sign > 0 ? Eigen::Matrix<Complex, 2, 1>(1, 0) : Eigen::Matrix<Complex, 2, 1>(0, 1);
                break;
            case Basis::X:
                v << r, sign * r;
                break;
            case Basis::Y:
                v << r, Complex(0, sign * r);
                break;
        }
        return v;
    };
    Outcomes out;
    int k = 0;
    for (int sa : {1, -1}) {
        for (int sb : {1, -1}) {
            Vector4 v;
            const auto va = eig(a, sa);
            const auto vb = eig(b, sb);
            v << va(0) * vb(0), va(0) * vb(1), va(1) * vb(0), va(1) * vb(1);
            out[k++] = (v.adjoint() * rho * v)(0, 0).real();
        }
    }
    return out;
}

std::vector<CountRecord> equal_records(Dof dof, uint64_t n) {
    std::vector<CountRecord> out;
    for (const auto &s : tomography_settings(dof)) {
        out.push_back({s, {n, n, n, n}, 1});
    }
    return out;
}

}  // namespace

TEST(Settings, nine_settings_in_index_order) {
    const auto settings = tomography_settings(Dof::Spatial);
    for (int i = 0; i < 9; ++i) {
        EXPECT_EQ(settings[i].index(), i);
        EXPECT_EQ(settings[i].dof, Dof::Spatial);
    }
    EXPECT_EQ(settings[0].basis_a, Basis::Z);
    EXPECT_EQ(settings[1].basis_b, Basis::X);
    EXPECT_EQ(settings[5].basis_a, Basis::X);
    EXPECT_EQ(settings[5].basis_b, Basis::Y);
}

TEST(Projectors, complete_orthogonal_rank_one) {
    for (const auto &s : tomography_settings(Dof::Polarization)) {
        const Projectors p = projectors(s);
        Matrix4 sum = Matrix4::Zero();
        for (int i = 0; i < 4; ++i) {
            sum += p[i];
            EXPECT_NEAR(p[i].trace().real(), 1.0, 1e-14);
            for (int j = 0; j < 4; ++j) {
                const Matrix4 expect = i == j ? p[i] : Matrix4::Zero();
                EXPECT_LT((p[i] * p[j] - expect).cwiseAbs().maxCoeff(), 1e-14);
            }
        }
        EXPECT_LT((sum - Matrix4::Identity()).cwiseAbs().maxCoeff(), 1e-14);
    }
}

TEST(Projectors, zz_is_computational_basis) {
    const Projectors p = projectors({Basis::Z, Basis::Z, Dof::Polarization});
    for (int k = 0; k < 4; ++k) {
        Matrix4 e = Matrix4::Zero();
        e(k, k) = 1;
        EXPECT_LT((p[k] - e).cwiseAbs().maxCoeff(), 1e-15);
    }
}

TEST(OutcomeProbs, examples) {
    const TwoQubitState bell = TwoQubitState::pure(phi_plus());
    expect_outcomes(outcome_probs(bell, {Basis::X, Basis::X, Dof::Polarization}), {0.5, 0, 0, 0.5}, 1e-15);
    expect_outcomes(outcome_probs(bell, {Basis::Z, Basis::Z, Dof::Polarization}), {0.5, 0, 0, 0.5}, 1e-15);
    // <Phi+| Y x Y |Phi+> = -1.
    expect_outcomes(outcome_probs(bell, {Basis::Y, Basis::Y, Dof::Polarization}), {0, 0.5, 0.5, 0}, 1e-15);
    for (const auto &s : tomography_settings(Dof::Polarization)) {
        expect_outcomes(outcome_probs(TwoQubitState::maximally_mixed(), s), {0.25, 0.25, 0.25, 0.25}, 1e-15);
    }
    const Outcomes w = outcome_probs(TwoQubitState::werner(0.8667), {Basis::Z, Basis::Z, Dof::Polarization});
    expect_outcomes(w, {0.4667, 0.0333, 0.0333, 0.4667}, 1e-4);
}

TEST(OutcomeProbs, agree_with_explicit_eigenvectors) {
    auto &g = fixtures::rng();
    for (int trial = 0; trial < 10; ++trial) {
        const TwoQubitState rho = fixtures::random_two_qubit(g);
        for (const auto &s : tomography_settings(Dof::Polarization)) {
            expect_outcomes(outcome_probs(rho, s), born(rho.matrix(), s.basis_a, s.basis_b), 1e-13);
        }
    }
}

TEST(Sampling, poisson_mean_zero_time_and_determinism) {
    DetectionParams params;
    params.pair_rate = 40;
    params.seed = 7;
    const auto counts = sample_counts({1, 0, 0, 0}, params, 10, 0);
    EXPECT_NEAR(static_cast<double>(counts[0]), 400, 100);
    EXPECT_EQ(counts[1] + counts[2] + counts[3], 0u);
    EXPECT_EQ(sample_counts({0.25, 0.25, 0.25, 0.25}, params, 0, 0), (std::array<uint64_t, 4>{}));
    EXPECT_EQ(sample_counts({0.3, 0.2, 0.1, 0.4}, params, 10, 3), sample_counts({0.3, 0.2, 0.1, 0.4}, params, 10, 3));
    EXPECT_NE(sample_counts({0.3, 0.2, 0.1, 0.4}, params, 100, 3), sample_counts({0.3, 0.2, 0.1, 0.4}, params, 100, 4));
    EXPECT_THROW(sample_counts({1, 0, 0, 0}, params, -1, 0), std::invalid_argument);
}

TEST(Sampling, efficiency_and_dark_counts) {
    DetectionParams params;
    params.pair_rate = 640;
    params.rate_is_generated = true;
    params.efficiency = 0.25;
    EXPECT_DOUBLE_EQ(params.detected_rate(), 40);
    params.rate_is_generated = false;
    EXPECT_DOUBLE_EQ(params.detected_rate(), 640);

    DetectionParams dark;
    dark.pair_rate = 0;
    dark.dark_coincidence_rate = 400;
    const auto c = sample_counts({1, 0, 0, 0}, dark, 100, 0);
    for (uint64_t n : c) {
        EXPECT_NEAR(static_cast<double>(n), 10000, 500);
    }
    dark.efficiency = 1.5;
    EXPECT_THROW(dark.validate(), std::invalid_argument);
}

TEST(Sampling, simulate_tomography_is_reproducible) {
    DetectionParams params;
    params.seed = 99;
    const TwoQubitState rho = TwoQubitState::werner(0.8);
    const auto a = simulate_tomography(rho, Dof::Spatial, params, 60, 16);
    const auto b = simulate_tomography(rho, Dof::Spatial, params, 60, 16);
    ASSERT_EQ(a.size(), 9u);
    for (size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].counts, b[i].counts);
        EXPECT_EQ(a[i].setting, b[i].setting);
        EXPECT_EQ(a[i].integration_s, 60);
    }
}

TEST(LinearInversion, exact_on_infinite_statistics) {
    auto &g = fixtures::rng();
    const uint64_t n = uint64_t{1} << 50;
    for (int trial = 0; trial < 50; ++trial) {
        const TwoQubitState rho = fixtures::random_two_qubit(g, 1 + trial % 4);
        const TomographyResult r = linear_inversion(exact_records(rho, Dof::Polarization, n));
        EXPECT_LT(trace_distance(r.rho_hat, rho.matrix()), 1e-10);
        EXPECT_EQ(r.method, ReconstructionMethod::LinearInversion);
    }
    const TomographyResult mixed = linear_inversion(equal_records(Dof::Polarization, 100));
    EXPECT_LT((mixed.rho_hat - Matrix4::Identity() / 4.0).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(LinearInversion, rejects_incomplete_records) {
    auto records = equal_records(Dof::Polarization, 10);
    auto short_set = records;
    short_set.pop_back();
    EXPECT_THROW(linear_inversion(short_set), std::invalid_argument);
    auto duplicated = records;
    duplicated[8] = duplicated[0];
    EXPECT_THROW(linear_inversion(duplicated), std::invalid_argument);
    auto mixed_dof = records;
    mixed_dof[3].setting.dof = Dof::Spatial;
    EXPECT_THROW(linear_inversion(mixed_dof), std::invalid_argument);
    auto empty = records;
    empty[2].counts = {0, 0, 0, 0};
    EXPECT_THROW(linear_inversion(empty), std::invalid_argument);
    EXPECT_THROW(mle_reconstruct(empty), std::invalid_argument);
}

TEST(Mle, bell_state_at_infinite_statistics) {
    const TwoQubitState bell = TwoQubitState::pure(phi_plus());
    const TomographyResult r = mle_reconstruct(exact_records(bell, Dof::Polarization, uint64_t{1} << 40));
    EXPECT_GT(fidelity(r.state(), phi_plus()), 1 - 1e-8);
}

TEST(Mle, equal_counts_give_maximally_mixed) {
    const TomographyResult r = mle_reconstruct(equal_records(Dof::Spatial, 250));
    EXPECT_LT((r.rho_hat - Matrix4::Identity() / 4.0).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Mle, werner_family_at_1e5_counts) {
    for (double v : {0.0, 0.3, 0.6, 0.8667, 1.0}) {
        DetectionParams params;
        params.pair_rate = 1e4;
        params.seed = 2025;
        const TwoQubitState truth = TwoQubitState::werner(v);
        const auto records = simulate_tomography(truth, Dof::Polarization, params, 10);
        const TomographyResult r = mle_reconstruct(records);
        EXPECT_LT(trace_distance(r.rho_hat, truth.matrix()), 0.02) << v;
        EXPECT_TRUE(r.converged);
    }
}

TEST(Mle, log_likelihood_never_decreases_and_output_is_physical) {
    auto &g = fixtures::rng();
    DetectionParams params;
    for (int trial = 0; trial < 10; ++trial) {
        params.seed = static_cast<uint64_t>(trial);
        const TwoQubitState truth = fixtures::random_two_qubit(g, 1 + trial % 4);
        const auto records = simulate_tomography(truth, Dof::Polarization, params, 60);
        const TomographyResult r = mle_reconstruct(records);
        ASSERT_FALSE(r.log_likelihood_trace.empty());
        for (size_t i = 1; i < r.log_likelihood_trace.size(); ++i) {
            EXPECT_GE(r.log_likelihood_trace[i], r.log_likelihood_trace[i - 1]) << i;
        }
        EXPECT_GE(r.min_eigenvalue(), -kPsdTol);
        EXPECT_NEAR(r.rho_hat.trace().real(), 1.0, 1e-12);
        EXPECT_LT((r.rho_hat - r.rho_hat.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
        ASSERT_TRUE(r.log_likelihood.has_value());
        EXPECT_NEAR(*r.log_likelihood, log_likelihood(r.rho_hat, records), 1e-6);
        EXPECT_GE(*r.log_likelihood, log_likelihood(Matrix4::Identity() / 4.0, records));
    }
}

TEST(Mle, record_order_does_not_matter) {
    DetectionParams params;
    params.seed = 5;
    auto records = simulate_tomography(TwoQubitState::werner(0.7), Dof::Spatial, params, 60);
    const TomographyResult a = mle_reconstruct(records);
    const Matrix4 lin = linear_inversion(records).rho_hat;
    std::reverse(records.begin(), records.end());
    const TomographyResult b = mle_reconstruct(records);
    EXPECT_LT((a.rho_hat - b.rho_hat).cwiseAbs().maxCoeff(), 1e-8);
    EXPECT_LT((linear_inversion(records).rho_hat - lin).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Mle, options_are_validated) {
    EXPECT_THROW(mle_reconstruct(equal_records(Dof::Polarization, 1), {0, 10}), std::invalid_argument);
    EXPECT_THROW(mle_reconstruct(equal_records(Dof::Polarization, 1), {1e-8, -1}), std::invalid_argument);
}

TEST(CountsCsv, round_trip) {
    DetectionParams params;
    params.seed = 3;
    const auto records = simulate_tomography(TwoQubitState::werner(0.5), Dof::Spatial, params, 12.5);
    std::stringstream ss;
    write_counts_csv(ss, records);
    EXPECT_EQ(ss.str().substr(0, ss.str().find('\n')), "setting_a,setting_b,dof,n_pp,n_pm,n_mp,n_mm,integration_s");
    const auto back = read_counts_csv(ss);
    ASSERT_EQ(back.size(), records.size());
    for (size_t i = 0; i < back.size(); ++i) {
        EXPECT_EQ(back[i].setting, records[i].setting);
        EXPECT_EQ(back[i].counts, records[i].counts);
        EXPECT_EQ(back[i].integration_s, records[i].integration_s);
    }
}

TEST(CountsCsv, malformed_input) {
    const std::string header = "setting_a,setting_b,dof,n_pp,n_pm,n_mp,n_mm,integration_s\n";
    for (const std::string body : {std::string("a,b,c\n"), header + "Z,Z,polarization,1,2,3\n",
                                   header + "Q,Z,polarization,1,2,3,4,1\n", header + "Z,Z,polarization,1,-2,3,4,1\n",
                                   header + "Z,Z,color,1,2,3,4,1\n", header + "Z,Z,polarization,1,2x,3,4,1\n"}) {
        std::stringstream ss(body);
        EXPECT_THROW(read_counts_csv(ss), std::invalid_argument) << body;
    }
}

TEST(Names, basis_and_dof_parsing) {
    EXPECT_EQ(parse_basis("x"), Basis::X);
    EXPECT_EQ(parse_basis("Y"), Basis::Y);
    EXPECT_EQ(to_char(Basis::Z), 'Z');
    EXPECT_EQ(parse_dof("pol"), Dof::Polarization);
    EXPECT_EQ(parse_dof("spatial"), Dof::Spatial);
    EXPECT_THROW(parse_basis("W"), std::invalid_argument);
}
