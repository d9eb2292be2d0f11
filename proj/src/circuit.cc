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

#include "purisim/circuit.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace purisim {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kUnitaryTol = 1e-12;

// A 2x2 element acting on modes (lo, hi) of one photon.
struct Stage {
    int lo;
    int hi;
    MziSetting setting;
    Matrix2 ideal;
};

const MziSetting kCross{0, 0, 0};
const MziSetting kHadamard{kPi / 2, 0, 0};

Matrix2 stage_matrix(const Stage &s, double splitting_error) {
    if (splitting_error == 0) {
        return s.ideal;
    }
    // The fabricated MZI deviates from its nominal transfer matrix by
    // U_nominal^dagger U_actual; that deviation rides on the ideal action.
    MziSetting actual = s.setting;
    actual.splitting_error = splitting_error;
    return s.ideal * mzi_unitary(s.setting).adjoint() * mzi_unitary(actual);
}

Matrix4 embed_stage(const Matrix2 &u, int lo, int hi) {
    Matrix4 out = Matrix4::Identity();
    out(lo, lo) = u(0, 0);
    out(lo, hi) = u(0, 1);
    out(hi, lo) = u(1, 0);
    out(hi, hi) = u(1, 1);
    return out;
}

// Stages listed in the order light traverses them.
std::vector<Stage> stages_for(CircuitName name) {
    const Matrix2 x = pauli_x();
    const Matrix2 h = hadamard();
    const std::vector<Stage> x_pol{{0, 1, kCross, x}, {2, 3, kCross, x}};
    const std::vector<Stage> x_spa{{0, 2, kCross, x}, {1, 3, kCross, x}};
    switch (name) {
        case CircuitName::EgcG:
            return x_pol;
        case CircuitName::EgcH:
            return x_spa;
        case CircuitName::EgcI: {
            auto both = x_spa;
            both.insert(both.end(), x_pol.begin(), x_pol.end());
            return both;
        }
        case CircuitName::HadamardBank:
            return {{0, 1, kHadamard, h}, {2, 3, kHadamard, h}, {0, 2, kHadamard, h}, {1, 3, kHadamard, h}};
        case CircuitName::PurifyOn:
            // 0 -> 1, 1 -> 3, 3 -> 0 as swap(1,3) followed by swap(0,1).
            return {{1, 3, kCross, x}, {0, 1, kCross, x}};
        default:
            return {};
    }
}

Matrix4 phase_screen(CircuitName name) {
    const Matrix2 z = pauli_z();
    switch (name) {
        case CircuitName::EgcC:
            return lift(z, Dof::Polarization);
        case CircuitName::EgcD:
            return lift(z, Dof::Spatial);
        case CircuitName::EgcE:
            return lift(z, Dof::Polarization) * lift(z, Dof::Spatial);
        default:
            return Matrix4::Identity();
    }
}

std::string normalize_token(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (c == '-' || c == ' ') {
            c = '_';
        }
        out.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    }
    return out;
}

struct NameEntry {
    CircuitName name;
    const char *token;
};

constexpr std::array<NameEntry, 13> kNames{{
    {CircuitName::EgcB, "EGC_B"},
    {CircuitName::EgcC, "EGC_C"},
    {CircuitName::EgcD, "EGC_D"},
    {CircuitName::EgcE, "EGC_E"},
    {CircuitName::EgcF, "EGC_F"},
    {CircuitName::EgcG, "EGC_G"},
    {CircuitName::EgcH, "EGC_H"},
    {CircuitName::EgcI, "EGC_I"},
    {CircuitName::HadamardBank, "HADAMARD_BANK"},
    {CircuitName::PurifyOn, "PURIFY_ON"},
    {CircuitName::MeasurePol, "MEASURE_POL"},
    {CircuitName::MeasureSpatial, "MEASURE_SPATIAL"},
    {CircuitName::Identity, "IDENTITY"},
}};

}  // namespace

Matrix2 pauli_x() {
    Matrix2 m;
    m << 0, 1, 1, 0;
    return m;
}

Matrix2 pauli_y() {
    Matrix2 m;
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return m;
}

Matrix2 pauli_z() {
    Matrix2 m;
    m << 1, 0, 0, -1;
    return m;
}

Matrix2 hadamard() {
    Matrix2 m;
    m << 1, 1, 1, -1;
    return m / std::sqrt(2.0);
}

Matrix2 directional_coupler(double splitting_error) {
    const double t = std::sqrt(0.5 + splitting_error);
    const double k = std::sqrt(0.5 - splitting_error);
    Matrix2 m;
    m << t, Complex(0, k), Complex(0, k), t;
    return m;
}

Matrix2 mzi_unitary(const MziSetting &s) {
    if (!(s.splitting_error > -0.5 && s.splitting_error < 0.5)) {
        throw std::invalid_argument("mzi_unitary: splitting_error must lie in (-0.5, 0.5)");
    }
    auto phase = [](double a) {
        Matrix2 p = Matrix2::Identity();
        p(0, 0) = std::polar(1.0, a);
        return p;
    };
    const Matrix2 dc = directional_coupler(s.splitting_error);
    return dc * phase(s.theta) * dc * phase(s.phi);
}

double phase_invariant_distance(const Eigen::Ref<const Eigen::MatrixXcd> &a,
                                const Eigen::Ref<const Eigen::MatrixXcd> &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("phase_invariant_distance: shape mismatch");
    }
    const Complex overlap = (b.adjoint() * a).trace();
    const Complex align = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : Complex(1, 0);
    return (a - align * b).cwiseAbs().maxCoeff();
}

MziSetting find_mzi_setting(const Matrix2 &target) {
    auto cost = [&](double theta, double phi) {
        return phase_invariant_distance(mzi_unitary({theta, phi, 0}), target);
    };
    constexpr int kGrid = 64;
    MziSetting best{};
    double best_cost = cost(0, 0);
    for (int i = 0; i < kGrid; ++i) {
        for (int j = 0; j < kGrid; ++j) {
            const double theta = 2 * kPi * i / kGrid;
            const double phi = 2 * kPi * j / kGrid;
            const double c = cost(theta, phi);
            if (c < best_cost) {
                best_cost = c;
                best = {theta, phi, 0};
            }
        }
    }
    double step = 2 * kPi / kGrid;
    while (step > 1e-14) {
        bool moved = false;
        for (auto [dt, dp] : std::array<std::pair<double, double>, 4>{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}}) {
            const double c = cost(best.theta + dt * step, best.phi + dp * step);
            if (c < best_cost) {
                best_cost = c;
                best.theta += dt * step;
                best.phi += dp * step;
                moved = true;
            }
        }
        if (!moved) {
            step /= 2;
        }
    }
    return best;
}

CircuitName parse_circuit_name(std::string_view name) {
    const std::string token = normalize_token(name);
    for (const auto &e : kNames) {
        if (token == e.token) {
            return e.name;
        }
    }
    throw std::invalid_argument("unknown circuit configuration '" + std::string(name) + "'");
}

std::string to_string(CircuitName name) {
    for (const auto &e : kNames) {
        if (e.name == name) {
            return e.token;
        }
    }
    throw std::invalid_argument("unknown circuit configuration");
}

Side parse_side(std::string_view side) {
    const std::string token = normalize_token(side);
    if (token == "ALICE") {
        return Side::Alice;
    }
    if (token == "BOB") {
        return Side::Bob;
    }
    if (token == "BOTH") {
        return Side::Both;
    }
    throw std::invalid_argument("unknown side '" + std::string(side) + "'");
}

const char *to_string(Side side) {
    switch (side) {
        case Side::Alice:
            return "alice";
        case Side::Bob:
            return "bob";
        case Side::Both:
            return "both";
    }
    return "?";
}

LocalUnitary::LocalUnitary(const Matrix4 &u4, Photon side) : u4_(u4), side_(side) {
    const double err = (u4 * u4.adjoint() - Matrix4::Identity()).cwiseAbs().maxCoeff();
    if (!(err <= kUnitaryTol)) {
        throw std::domain_error("LocalUnitary: matrix is not unitary");
    }
}

Matrix4 ideal_unitary(CircuitName name) {
    return circuit_unitary(name, 0);
}

Matrix4 circuit_unitary(CircuitName name, double splitting_error) {
    if (!(splitting_error > -0.5 && splitting_error < 0.5)) {
        throw std::invalid_argument("circuit_unitary: splitting_error must lie in (-0.5, 0.5)");
    }
    Matrix4 u = phase_screen(name);
    for (const Stage &s : stages_for(name)) {
        u = embed_stage(stage_matrix(s, splitting_error), s.lo, s.hi) * u;
    }
    return u;
}

std::vector<LocalUnitary> compile(const CircuitConfig &config) {
    const Matrix4 u = circuit_unitary(config.name, config.splitting_error);
    switch (config.side) {
        case Side::Alice:
            return {LocalUnitary(u, Photon::Alice)};
        case Side::Bob:
            return {LocalUnitary(u, Photon::Bob)};
        case Side::Both:
            return {LocalUnitary(u, Photon::Alice), LocalUnitary(u, Photon::Bob)};
    }
    throw std::invalid_argument("compile: bad side");
}

HyperState conjugate(const HyperState &state, const Matrix16 &op) {
    return HyperState(op * state.matrix() * op.adjoint());
}

HyperState apply(const HyperState &state, const LocalUnitary &lu) {
    return conjugate(state, embed(lu.matrix(), lu.side()));
}

HyperState apply(const HyperState &state, const std::vector<LocalUnitary> &lus) {
    Matrix16 op = Matrix16::Identity();
    for (const auto &lu : lus) {
        op = embed(lu.matrix(), lu.side()) * op;
    }
    return conjugate(state, op);
}

}  // namespace purisim
