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

#include "gtest/gtest.h"
#include "oracle.h"
#include "test_util.h"

using namespace purisim;

namespace {

void expect_weights(const ErrorDistribution &d, std::array<double, 4> w) {
    for (int k = 0; k < 4; ++k) {
        EXPECT_NEAR(d.weights()[k], w[k], 1e-15) << k;
    }
}

double pol_fidelity(const HyperState &s) {
    return fidelity(reduced(s, Dof::Polarization), phi_plus());
}

HyperState both_sides(const HyperState &s, CircuitName n) {
    return purisim::apply(s, compile({n, Side::Both, 0}));
}

}  // namespace

TEST(IndependentRates, examples) {
    expect_weights(independent_rates(ErrorKind::BitFlip, 0.2, 0.2), {0.64, 0.16, 0.16, 0.04});
    expect_weights(independent_rates(ErrorKind::BitFlip, 0, 0), {1, 0, 0, 0});
    expect_weights(independent_rates(ErrorKind::PhaseFlip, 1, 0), {0, 1, 0, 0});
    expect_weights(independent_rates(ErrorKind::PhaseFlip, 0.1, 0.3), {0.63, 0.07, 0.27, 0.03});
}

TEST(IndependentRates, rejects_out_of_range) {
    EXPECT_THROW(independent_rates(ErrorKind::BitFlip, -0.1, 0), std::invalid_argument);
    EXPECT_THROW(independent_rates(ErrorKind::BitFlip, 0, 1.5), std::invalid_argument);
    EXPECT_THROW(independent_rates(ErrorKind::BitFlip, std::nan(""), 0), std::invalid_argument);
}

TEST(ErrorDistribution, validation_and_branches) {
    EXPECT_THROW((void)ErrorDistribution(ErrorKind::BitFlip, {0.5, 0.5, 0.1, 0}), std::invalid_argument);
    EXPECT_THROW((void)ErrorDistribution(ErrorKind::BitFlip, {1.2, -0.2, 0, 0}), std::invalid_argument);
    const ErrorDistribution bf(ErrorKind::BitFlip, {0.7, 0.1, 0.1, 0.1});
    EXPECT_EQ(bf.branches()[1], CircuitName::EgcG);
    EXPECT_EQ(bf.branches()[3], CircuitName::EgcI);
    const ErrorDistribution pf(ErrorKind::PhaseFlip, {0.7, 0.1, 0.1, 0.1});
    EXPECT_EQ(pf.branches()[0], CircuitName::EgcB);
    EXPECT_EQ(pf.branches()[2], CircuitName::EgcD);
}

TEST(ErrorMixture, bit_flip_example_matches_ket_ensemble) {
    const std::array<double, 4> w{0.64, 0.16, 0.16, 0.04};
    const HyperState s = apply_error_mixture(make_initial_state(), ErrorDistribution(ErrorKind::BitFlip, w));
    EXPECT_NEAR(pol_fidelity(s), 0.80, 1e-12);
    const oracle::Ensemble e = oracle::bit_flip_branches(w);
    EXPECT_LT((reduced(s, Dof::Polarization).matrix() - oracle::reduce(e, true)).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LT((reduced(s, Dof::Spatial).matrix() - oracle::reduce(e, false)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(ErrorMixture, phase_flip_example) {
    const HyperState s =
        apply_error_mixture(make_initial_state(), ErrorDistribution(ErrorKind::PhaseFlip, {0.8, 0.2, 0, 0}));
    EXPECT_NEAR(pol_fidelity(s), 0.80, 1e-12);
    // Z on Bob's polarization sends |Phi+> to |Phi->, which the oracle builds by signs.
    const oracle::Ket flipped = oracle::sign_b(oracle::psi0(), [](int m) { return oracle::pol(m) ? -1.0 : 1.0; });
    const oracle::M16 expected = 0.8 * oracle::density(oracle::psi0()) + 0.2 * oracle::density(flipped);
    EXPECT_LT((s.matrix() - expected).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(ErrorMixture, no_error_is_identity_channel) {
    auto &g = fixtures::rng();
    const HyperState s = fixtures::random_hyperstate(g);
    for (ErrorKind k : {ErrorKind::BitFlip, ErrorKind::PhaseFlip}) {
        EXPECT_LT(trace_distance(apply_error_mixture(s, ErrorDistribution(k, {1, 0, 0, 0})), s), 1e-12);
    }
}

TEST(ErrorMixture, polarization_fidelity_ignores_spatial_rate) {
    for (double p_pol : {0.0, 0.1, 0.2, 0.35}) {
        for (double p_spa : {0.0, 0.2, 0.5, 0.9}) {
            for (ErrorKind k : {ErrorKind::BitFlip, ErrorKind::PhaseFlip}) {
                const HyperState s = apply_error_mixture(make_initial_state(), independent_rates(k, p_pol, p_spa));
                EXPECT_NEAR(pol_fidelity(s), 1 - p_pol, 1e-12);
            }
        }
    }
}

TEST(ErrorMixture, alice_side_gives_same_reduced_statistics) {
    const auto dist = independent_rates(ErrorKind::BitFlip, 0.2, 0.3);
    const HyperState a = apply_error_mixture(make_initial_state(), dist, Photon::Alice);
    const HyperState b = apply_error_mixture(make_initial_state(), dist, Photon::Bob);
    EXPECT_NEAR(pol_fidelity(a), pol_fidelity(b), 1e-12);
}

TEST(ErrorMixture, splitting_error_zero_is_exact_and_small_error_is_close) {
    const auto dist = independent_rates(ErrorKind::BitFlip, 0.2, 0.2);
    const HyperState ideal = apply_error_mixture(make_initial_state(), dist);
    EXPECT_LT(trace_distance(apply_error_mixture(make_initial_state(), dist, Photon::Bob, 0), ideal), 1e-15);
    const double d = trace_distance(apply_error_mixture(make_initial_state(), dist, Photon::Bob, 0.01), ideal);
    EXPECT_GT(d, 0);
    EXPECT_LT(d, 0.1);
}

TEST(Channels, trace_preserving_and_positive) {
    auto &g = fixtures::rng();
    std::uniform_real_distribution<double> u(0, 1);
    for (int trial = 0; trial < 25; ++trial) {
        const HyperState s = fixtures::random_hyperstate(g, 1 + trial % 16);
        const auto k = trial % 2 ? ErrorKind::BitFlip : ErrorKind::PhaseFlip;
        const HyperState e = apply_error_mixture(s, independent_rates(k, u(g), u(g)), Photon::Bob, 0.04 * u(g));
        const HyperState b = apply_baseline(s, {u(g), u(g)});
        for (const HyperState *out : {&e, &b}) {
            EXPECT_NEAR(out->matrix().trace().real(), 1.0, 1e-12);
            EXPECT_GE(out->min_eigenvalue(), -kPsdTol);
            EXPECT_LE(purity(*out), purity(s) + 1e-12);
        }
    }
}

TEST(Baseline, examples) {
    const HyperState psi0 = make_initial_state();
    EXPECT_LT(trace_distance(apply_baseline(psi0, {1, 1}), psi0), 1e-15);
    const double v = 13.0 / 15.0;
    const HyperState s = apply_baseline(psi0, {v, v});
    EXPECT_NEAR(pol_fidelity(s), 0.90, 1e-12);
    EXPECT_NEAR(fidelity(reduced(s, Dof::Spatial), phi_plus()), 0.90, 1e-12);
    EXPECT_LT(trace_distance(reduced(s, Dof::Polarization), TwoQubitState::werner(v)), 1e-12);

    const HyperState zero = apply_baseline(psi0, {0, 0});
    EXPECT_LT(trace_distance(reduced(zero, Dof::Polarization), TwoQubitState::maximally_mixed()), 1e-12);
    EXPECT_NEAR(pol_fidelity(zero), 0.25, 1e-12);

    // Each visibility acts on its own degree of freedom only.
    const HyperState pol_only = apply_baseline(psi0, {0.5, 1});
    EXPECT_NEAR(fidelity(reduced(pol_only, Dof::Spatial), phi_plus()), 1.0, 1e-12);
    EXPECT_THROW(apply_baseline(psi0, {1.1, 1}), std::invalid_argument);
}

TEST(Baseline, calibration) {
    EXPECT_NEAR(calibrate_visibility(0.90), 0.8667, 1e-4);
    EXPECT_NEAR(calibrate_visibility(0.90), 13.0 / 15.0, 1e-15);
    EXPECT_EQ(calibrate_visibility(1.0), 1.0);
    EXPECT_EQ(calibrate_visibility(0.25), 0.0);
    EXPECT_THROW(calibrate_visibility(0.2), std::invalid_argument);
    EXPECT_THROW(calibrate_visibility(1.01), std::invalid_argument);
}

TEST(Conversion, hadamard_after_phase_flips_equals_bit_flips_after_hadamard) {
    auto &g = fixtures::rng();
    std::uniform_real_distribution<double> u(0, 1);
    for (int trial = 0; trial < 10; ++trial) {
        const HyperState s = trial == 0 ? make_initial_state() : fixtures::random_hyperstate(g);
        std::array<double, 4> w{u(g), u(g), u(g), u(g)};
        const double total = w[0] + w[1] + w[2] + w[3];
        for (double &x : w) {
            x /= total;
        }
        w[0] = 1 - w[1] - w[2] - w[3];
        const HyperState lhs =
            both_sides(apply_error_mixture(s, ErrorDistribution(ErrorKind::PhaseFlip, w)), CircuitName::HadamardBank);
        const HyperState rhs =
            apply_error_mixture(both_sides(s, CircuitName::HadamardBank), ErrorDistribution(ErrorKind::BitFlip, w));
        EXPECT_LT(trace_distance(lhs, rhs), 1e-12);
    }
}

TEST(Purification, ideal_law_matches_branch_enumeration) {
    for (int i = 1; i <= 9; ++i) {
        const double p = 0.05 * i;
        const auto dist = independent_rates(ErrorKind::BitFlip, p, p);
        const HyperState s = both_sides(apply_error_mixture(make_initial_state(), dist), CircuitName::PurifyOn);
        const PostSelection sel = post_select(s, {0, 1});
        ASSERT_FALSE(sel.no_coincidence());
        const double law = (1 - p) * (1 - p) / ((1 - p) * (1 - p) + p * p);
        EXPECT_NEAR(pol_fidelity(*sel.state), law, 1e-9) << p;

        const oracle::Purified o = oracle::purify_branches(oracle::bit_flip_branches(dist.weights()), {0, 1});
        EXPECT_NEAR(sel.success_probability, o.success, 1e-12);
        EXPECT_LT((reduced(*sel.state, Dof::Polarization).matrix() - o.rho_pol).cwiseAbs().maxCoeff(), 1e-12);
    }
}
