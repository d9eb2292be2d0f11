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

#include "purisim/hyperstate.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace purisim {

namespace {

template <typename M>
void validate_density(const M &rho, const char *what) {
    for (Eigen::Index r = 0; r < rho.rows(); ++r) {
        for (Eigen::Index c = 0; c < rho.cols(); ++c) {
            const Complex z = rho(r, c);
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                throw std::domain_error(std::string(what) + ": non-finite entry");
            }
            if (std::abs(z - std::conj(rho(c, r))) > kHermitianTol) {
                std::ostringstream ss;
                ss << what << ": not Hermitian at (" << r << "," << c << ")";
                throw std::domain_error(ss.str());
            }
        }
    }
    const Complex tr = rho.trace();
    if (std::abs(tr - Complex(1, 0)) > kTraceTol) {
        std::ostringstream ss;
        ss << what << ": trace " << tr.real() << "+" << tr.imag() << "i is not 1";
        throw std::domain_error(ss.str());
    }
}

template <typename M>
double smallest_eigenvalue(const M &rho) {
    Eigen::SelfAdjointEigenSolver<M> solver(rho, Eigen::EigenvaluesOnly);
    return solver.eigenvalues()(0);
}

template <typename M>
M hermitian_part(const M &rho) {
    return (rho + rho.adjoint()) * 0.5;
}

template <typename M>
double trace_norm_half(const M &diff) {
    Eigen::SelfAdjointEigenSolver<M> solver(hermitian_part(diff), Eigen::EigenvaluesOnly);
    return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

Matrix16 projector_on(const std::vector<ModeSet> &windows) {
    Matrix16 proj = Matrix16::Zero();
    for (const auto &modes : windows) {
        for (int a : modes) {
            for (int b : modes) {
                proj(pair_index(a, b), pair_index(a, b)) = 1;
            }
        }
    }
    return proj;
}

void check_modes(const ModeSet &modes) {
    if (modes.empty()) {
        throw std::invalid_argument("post_select: empty mode set");
    }
    for (int m : modes) {
        if (m < 0 || m >= ModeMap::kModes) {
            throw std::invalid_argument("post_select: mode out of range");
        }
    }
}

}  // namespace

const char *to_string(Photon p) {
    return p == Photon::Alice ? "alice" : "bob";
}

const char *to_string(Dof d) {
    return d == Dof::Polarization ? "polarization" : "spatial";
}

ModeMap ModeMap::from_mode(int mode) {
    if (mode < 0 || mode >= kModes) {
        throw std::invalid_argument("ModeMap: mode out of range");
    }
    return ModeMap{mode / 2, mode % 2};
}

TwoQubitState::TwoQubitState(const Matrix4 &rho) {
    validate_density(rho, "TwoQubitState");
    rho_ = hermitian_part(rho);
    if (min_eigenvalue() < -kPsdTol) {
        throw std::domain_error("TwoQubitState: not positive semidefinite");
    }
}

TwoQubitState TwoQubitState::pure(const Vector4 &ket) {
    return TwoQubitState(ket * ket.adjoint() / ket.squaredNorm());
}

TwoQubitState TwoQubitState::maximally_mixed() {
    return TwoQubitState(Matrix4::Identity() / 4.0);
}

TwoQubitState TwoQubitState::werner(double visibility) {
    if (!(visibility >= 0 && visibility <= 1)) {
        throw std::invalid_argument("werner: visibility outside [0,1]");
    }
    const Vector4 bell = phi_plus();
    return TwoQubitState(visibility * (bell * bell.adjoint()) +
                         (1 - visibility) * Matrix4::Identity() / 4.0);
}

double TwoQubitState::min_eigenvalue() const {
    return smallest_eigenvalue(rho_);
}

HyperState::HyperState(const Matrix16 &rho) {
    validate_density(rho, "HyperState");
    rho_ = hermitian_part(rho);
    if (min_eigenvalue() < -kPsdTol) {
        throw std::domain_error("HyperState: not positive semidefinite");
    }
}

HyperState HyperState::pure(const Vector16 &ket) {
    return HyperState(ket * ket.adjoint() / ket.squaredNorm());
}

HyperState HyperState::maximally_mixed() {
    return HyperState(Matrix16::Identity() / 16.0);
}

double HyperState::min_eigenvalue() const {
    return smallest_eigenvalue(rho_);
}

HyperState mix(const std::vector<std::pair<double, HyperState>> &terms) {
    Matrix16 acc = Matrix16::Zero();
    double total = 0;
    for (const auto &[w, s] : terms) {
        if (w < 0) {
            throw std::invalid_argument("mix: negative weight");
        }
        total += w;
        acc += w * s.matrix();
    }
    if (std::abs(total - 1) > kTraceTol) {
        throw std::invalid_argument("mix: weights do not sum to 1");
    }
    return HyperState(acc);
}

HyperState make_initial_state() {
    Vector16 ket = Vector16::Zero();
    for (int m = 0; m < ModeMap::kModes; ++m) {
        ket(pair_index(m, m)) = 0.5;
    }
    return HyperState(ket * ket.adjoint());
}

TwoQubitState reduced(const HyperState &state, Dof keep) {
    // For the kept dof, q is the kept bit and t the traced bit of each photon.
    auto mode_of = [keep](int kept, int traced) {
        return keep == Dof::Polarization ? ModeMap{traced, kept}.mode() : ModeMap{kept, traced}.mode();
    };
    Matrix4 out = Matrix4::Zero();
    for (int qa = 0; qa < 2; ++qa) {
        for (int qb = 0; qb < 2; ++qb) {
            for (int qa2 = 0; qa2 < 2; ++qa2) {
                for (int qb2 = 0; qb2 < 2; ++qb2) {
                    Complex sum = 0;
                    for (int ta = 0; ta < 2; ++ta) {
                        for (int tb = 0; tb < 2; ++tb) {
                            sum += state(pair_index(mode_of(qa, ta), mode_of(qb, tb)),
                                         pair_index(mode_of(qa2, ta), mode_of(qb2, tb)));
                        }
                    }
                    out(2 * qa + qb, 2 * qa2 + qb2) = sum;
                }
            }
        }
    }
    return TwoQubitState(out);
}

double fidelity(const TwoQubitState &rho, const Vector4 &target) {
    if (std::abs(target.squaredNorm() - 1) > 1e-12) {
        throw std::invalid_argument("fidelity: target state is not normalized");
    }
    const Complex f = (target.adjoint() * rho.matrix() * target)(0, 0);
    if (std::abs(f.imag()) > 1e-10) {
        throw std::domain_error("fidelity: complex overlap");
    }
    return std::clamp(f.real(), 0.0, 1.0);
}

double purity(const HyperState &state) {
    return (state.matrix() * state.matrix()).trace().real();
}

double purity(const TwoQubitState &state) {
    return (state.matrix() * state.matrix()).trace().real();
}

double trace_distance(const TwoQubitState &a, const TwoQubitState &b) {
    return trace_norm_half<Matrix4>(a.matrix() - b.matrix());
}

double trace_distance(const Matrix4 &a, const Matrix4 &b) {
    return trace_norm_half<Matrix4>(a - b);
}

double trace_distance(const HyperState &a, const HyperState &b) {
    return trace_norm_half<Matrix16>(a.matrix() - b.matrix());
}

Vector4 phi_plus() {
    Vector4 v = Vector4::Zero();
    v(0) = v(3) = 1 / std::sqrt(2.0);
    return v;
}

PostSelection post_select(const HyperState &state, const ModeSet &modes) {
    return post_select_pooled(state, {modes});
}

PostSelection post_select_pooled(const HyperState &state, const std::vector<ModeSet> &windows) {
    if (windows.empty()) {
        throw std::invalid_argument("post_select: no coincidence window");
    }
    ModeSet seen;
    for (const auto &w : windows) {
        check_modes(w);
        for (int m : w) {
            if (!seen.insert(m).second) {
                throw std::invalid_argument("post_select: overlapping windows");
            }
        }
    }
    const Matrix16 proj = projector_on(windows);
    const Matrix16 kept = proj * state.matrix() * proj;
    PostSelection out;
    out.success_probability = kept.trace().real();
    if (out.success_probability < kNoCoincidence) {
        out.success_probability = 0;
        return out;
    }
    out.state.emplace(kept / out.success_probability);
    return out;
}

Matrix4 kron(const Matrix2 &a, const Matrix2 &b) {
    Matrix4 out;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
        }
    }
    return out;
}

Matrix16 kron(const Matrix4 &a, const Matrix4 &b) {
    Matrix16 out;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            out.block<4, 4>(4 * i, 4 * j) = a(i, j) * b;
        }
    }
    return out;
}

Matrix16 embed(const Matrix4 &op, Photon photon) {
    return photon == Photon::Alice ? kron(op, Matrix4::Identity()) : kron(Matrix4::Identity(), op);
}

Matrix4 lift(const Matrix2 &op, Dof dof) {
    // mode = 2*spatial + polarization: spatial is the high factor.
    return dof == Dof::Polarization ? kron(Matrix2::Identity(), op) : kron(op, Matrix2::Identity());
}

}  // namespace purisim
