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
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

#include "purisim/circuit.h"

namespace purisim {

namespace {

constexpr std::array<Basis, 3> kBases{Basis::Z, Basis::X, Basis::Y};

int basis_index(Basis b) {
    switch (b) {
        case Basis::Z:
            return 0;
        case Basis::X:
            return 1;
        case Basis::Y:
            return 2;
    }
    return 0;
}

Matrix2 pauli(Basis b) {
    switch (b) {
        case Basis::X:
            return pauli_x();
        case Basis::Y:
            return pauli_y();
        case Basis::Z:
            return pauli_z();
    }
    return Matrix2::Identity();
}

// Rotation taking the +/- eigenstates of the basis to |0>/|1>.
Matrix2 basis_rotation(Basis b, double splitting_error) {
    Matrix2 ideal = Matrix2::Identity();
    MziSetting nominal{std::numbers::pi, 0, 0};
    if (b == Basis::X) {
        ideal = hadamard();
        nominal = {std::numbers::pi / 2, 0, 0};
    } else if (b == Basis::Y) {
        Matrix2 s_dag = Matrix2::Identity();
        s_dag(1, 1) = Complex(0, -1);
        ideal = hadamard() * s_dag;
        nominal = {std::numbers::pi / 2, 0, 0};
    }
    if (splitting_error == 0) {
        return ideal;
    }
    MziSetting actual = nominal;
    actual.splitting_error = splitting_error;
    return ideal * mzi_unitary(nominal).adjoint() * mzi_unitary(actual);
}

uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

struct Term {
    Matrix4 projector;
    double count;
};

std::vector<Term> terms_of(const std::vector<CountRecord> &records) {
    std::vector<Term> terms;
    for (const auto &r : records) {
        const Projectors proj = projectors(r.setting);
        for (int k = 0; k < 4; ++k) {
            if (r.counts[k] > 0) {
                terms.push_back({proj[k], static_cast<double>(r.counts[k])});
            }
        }
    }
    return terms;
}

double log_likelihood_of(const Matrix4 &rho, const std::vector<Term> &terms) {
    double ll = 0;
    for (const auto &t : terms) {
        const double p = (rho * t.projector).trace().real();
        if (p <= 0) {
            return -std::numeric_limits<double>::infinity();
        }
        ll += t.count * std::log(p);
    }
    return ll;
}

void check_complete(const std::vector<CountRecord> &records) {
    if (records.size() != 9) {
        throw std::invalid_argument("tomography: expected 9 count records, got " + std::to_string(records.size()));
    }
    std::array<bool, 9> seen{};
    const Dof dof = records.front().setting.dof;
    for (const auto &r : records) {
        if (r.setting.dof != dof) {
            throw std::invalid_argument("tomography: records mix degrees of freedom");
        }
        if (seen[r.setting.index()]) {
            throw std::invalid_argument("tomography: duplicate measurement setting");
        }
        seen[r.setting.index()] = true;
        if (r.total() == 0) {
            throw std::invalid_argument("tomography: setting with zero total counts");
        }
    }
}

Matrix4 normalized(const Matrix4 &m) {
    const Matrix4 h = (m + m.adjoint()) * 0.5;
    return h / h.trace().real();
}

std::string trim(const std::string &s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return "";
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

char to_char(Basis b) {
    switch (b) {
        case Basis::Z:
            return 'Z';
        case Basis::X:
            return 'X';
        case Basis::Y:
            return 'Y';
    }
    return '?';
}

Basis parse_basis(std::string_view s) {
    if (s == "Z" || s == "z") {
        return Basis::Z;
    }
    if (s == "X" || s == "x") {
        return Basis::X;
    }
    if (s == "Y" || s == "y") {
        return Basis::Y;
    }
    throw std::invalid_argument("unknown measurement basis '" + std::string(s) + "'");
}

Dof parse_dof(std::string_view s) {
    if (s == "polarization" || s == "pol") {
        return Dof::Polarization;
    }
    if (s == "spatial" || s == "spa") {
        return Dof::Spatial;
    }
    throw std::invalid_argument("unknown degree of freedom '" + std::string(s) + "'");
}

int MeasurementSetting::index() const {
    return 3 * basis_index(basis_a) + basis_index(basis_b);
}

std::array<MeasurementSetting, 9> tomography_settings(Dof dof) {
    std::array<MeasurementSetting, 9> out;
    for (Basis a : kBases) {
        for (Basis b : kBases) {
            MeasurementSetting s{a, b, dof};
            out[s.index()] = s;
        }
    }
    return out;
}

Projectors projectors(const MeasurementSetting &setting, double splitting_error) {
    const Matrix4 rot = kron(basis_rotation(setting.basis_a, splitting_error),
                             basis_rotation(setting.basis_b, splitting_error));
    Projectors out;
    for (int k = 0; k < 4; ++k) {
        out[k] = rot.adjoint().col(k) * rot.row(k);
    }
    return out;
}

Outcomes outcome_probs(const TwoQubitState &rho, const Projectors &proj) {
    Outcomes p;
    double total = 0;
    for (int k = 0; k < 4; ++k) {
        p[k] = std::max(0.0, (rho.matrix() * proj[k]).trace().real());
        total += p[k];
    }
    for (double &x : p) {
        x /= total;
    }
    return p;
}

Outcomes outcome_probs(const TwoQubitState &rho, const MeasurementSetting &setting, double splitting_error) {
    return outcome_probs(rho, projectors(setting, splitting_error));
}

double DetectionParams::detected_rate() const {
    return rate_is_generated ? pair_rate * efficiency * efficiency : pair_rate;
}

void DetectionParams::validate() const {
    if (!(pair_rate >= 0) || !(dark_coincidence_rate >= 0)) {
        throw std::invalid_argument("DetectionParams: rates must be non-negative");
    }
    if (!(efficiency >= 0 && efficiency <= 1)) {
        throw std::invalid_argument("DetectionParams: efficiency must lie in [0,1]");
    }
}

uint64_t CountRecord::total() const {
    return counts[0] + counts[1] + counts[2] + counts[3];
}

uint64_t derive_seed(uint64_t seed, uint64_t stream) {
    return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0xD1B54A32D192ED03ULL));
}

std::array<uint64_t, 4> sample_counts(const Outcomes &probs, const DetectionParams &params,
                                      double integration_s, uint64_t stream) {
    params.validate();
    if (!(integration_s >= 0)) {
        throw std::invalid_argument("sample_counts: negative integration time");
    }
    std::mt19937_64 rng(derive_seed(params.seed, stream));
    std::array<uint64_t, 4> out{};
    for (int k = 0; k < 4; ++k) {
        const double mean = params.detected_rate() * integration_s * probs[k] +
                            params.dark_coincidence_rate * integration_s / 4;
        if (mean > 0) {
            std::poisson_distribution<long long> dist(mean);
            out[k] = static_cast<uint64_t>(dist(rng));
        }
    }
    return out;
}

std::vector<CountRecord> simulate_tomography(const TwoQubitState &rho, Dof dof, const DetectionParams &params,
                                             double integration_s, uint64_t stream_base, double splitting_error) {
    std::vector<CountRecord> out;
    for (const auto &s : tomography_settings(dof)) {
        const Outcomes p = outcome_probs(rho, s, splitting_error);
        out.push_back({s, sample_counts(p, params, integration_s, stream_base + s.index()), integration_s});
    }
    return out;
}

std::vector<CountRecord> exact_records(const TwoQubitState &rho, Dof dof, uint64_t shots_per_setting) {
    std::vector<CountRecord> out;
    const double n = static_cast<double>(shots_per_setting);
    for (const auto &s : tomography_settings(dof)) {
        const Outcomes p = outcome_probs(rho, s);
        CountRecord r{s, {}, 0};
        for (int k = 0; k < 4; ++k) {
            r.counts[k] = static_cast<uint64_t>(std::llround(p[k] * n));
        }
        out.push_back(r);
    }
    return out;
}

const char *to_string(ReconstructionMethod m) {
    return m == ReconstructionMethod::LinearInversion ? "linear_inversion" : "mle";
}

double TomographyResult::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Matrix4> solver(rho_hat, Eigen::EigenvaluesOnly);
    return solver.eigenvalues()(0);
}

TwoQubitState TomographyResult::state() const {
    return TwoQubitState(rho_hat);
}

TomographyResult linear_inversion(const std::vector<CountRecord> &records) {
    check_complete(records);
    // Sums of signed counts: corr(a,b) for sigma_a x sigma_b, and marginals.
    std::array<std::array<double, 3>, 3> corr{};
    std::array<double, 3> marg_a{}, marg_b{}, tot_a{}, tot_b{};
    for (const auto &r : records) {
        const double n = static_cast<double>(r.total());
        const auto c = r.counts;
        const int ia = basis_index(r.setting.basis_a);
        const int ib = basis_index(r.setting.basis_b);
        const double pp = static_cast<double>(c[0]), pm = static_cast<double>(c[1]);
        const double mp = static_cast<double>(c[2]), mm = static_cast<double>(c[3]);
        corr[ia][ib] = (pp - pm - mp + mm) / n;
        marg_a[ia] += pp + pm - mp - mm;
        tot_a[ia] += n;
        marg_b[ib] += pp - pm + mp - mm;
        tot_b[ib] += n;
    }
    Matrix4 rho = Matrix4::Identity();
    for (int i = 0; i < 3; ++i) {
        rho += marg_a[i] / tot_a[i] * kron(pauli(kBases[i]), Matrix2::Identity());
        rho += marg_b[i] / tot_b[i] * kron(Matrix2::Identity(), pauli(kBases[i]));
        for (int j = 0; j < 3; ++j) {
            rho += corr[i][j] * kron(pauli(kBases[i]), pauli(kBases[j]));
        }
    }
    TomographyResult out;
    out.rho_hat = normalized(rho / 4.0);
    out.method = ReconstructionMethod::LinearInversion;
    return out;
}

double log_likelihood(const Matrix4 &rho, const std::vector<CountRecord> &records) {
    return log_likelihood_of(rho, terms_of(records));
}

TomographyResult mle_reconstruct(const std::vector<CountRecord> &records, const MleOptions &opts) {
    check_complete(records);
    if (!(opts.tol > 0) || opts.max_iter < 0) {
        throw std::invalid_argument("mle_reconstruct: tol must be positive and max_iter non-negative");
    }
    const std::vector<Term> terms = terms_of(records);
    double n_total = 0;
    for (const auto &t : terms) {
        n_total += t.count;
    }

    TomographyResult out;
    out.method = ReconstructionMethod::MaximumLikelihood;
    out.converged = false;
    Matrix4 rho = Matrix4::Identity() / 4.0;
    double ll = log_likelihood_of(rho, terms);
    out.log_likelihood_trace.push_back(ll);

    for (int it = 0; it < opts.max_iter; ++it) {
        Matrix4 r = Matrix4::Zero();
        for (const auto &t : terms) {
            r += t.count / (rho * t.projector).trace().real() * t.projector;
        }
        r /= n_total;

        // Full R rho R first; fall back to (I + eps R) rho (I + eps R) with
        // shrinking eps, which increases the likelihood for small enough eps.
        Matrix4 next = normalized(r * rho * r);
        double next_ll = log_likelihood_of(next, terms);
        double eps = 1.0;
        while (!(next_ll >= ll) && eps > 1e-12) {
            const Matrix4 step = Matrix4::Identity() + eps * r;
            next = normalized(step * rho * step.adjoint());
            next_ll = log_likelihood_of(next, terms);
            eps /= 2;
        }
        if (!(next_ll >= ll)) {
            out.converged = true;
            break;
        }
        const double gain = (next_ll - ll) / n_total;
        rho = next;
        ll = next_ll;
        out.iterations = it + 1;
        out.log_likelihood_trace.push_back(ll);
        if (gain < opts.tol) {
            out.converged = true;
            break;
        }
    }
    out.rho_hat = rho;
    out.log_likelihood = ll;
    return out;
}

void write_counts_csv(std::ostream &out, const std::vector<CountRecord> &records) {
    out << "setting_a,setting_b,dof,n_pp,n_pm,n_mp,n_mm,integration_s\n";
    for (const auto &r : records) {
        char time[64];
        std::snprintf(time, sizeof(time), "%.17g", r.integration_s);
        out << to_char(r.setting.basis_a) << ',' << to_char(r.setting.basis_b) << ',' << to_string(r.setting.dof)
            << ',' << r.counts[0] << ',' << r.counts[1] << ',' << r.counts[2] << ',' << r.counts[3] << ','
            << time << '\n';
    }
}

std::vector<CountRecord> read_counts_csv(std::istream &in) {
    std::vector<CountRecord> out;
    std::string line;
    int line_no = 0;
    bool header = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) {
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            cells.push_back(trim(cell));
        }
        const std::string where = "counts csv line " + std::to_string(line_no) + ": ";
        if (header) {
            header = false;
            if (cells.size() != 8 || cells[0] != "setting_a" || cells[7] != "integration_s") {
                throw std::invalid_argument(where + "unexpected header");
            }
            continue;
        }
        if (cells.size() != 8) {
            throw std::invalid_argument(where + "expected 8 columns");
        }
        try {
            CountRecord r;
            r.setting = {parse_basis(cells[0]), parse_basis(cells[1]), parse_dof(cells[2])};
            for (int k = 0; k < 4; ++k) {
                if (cells[3 + k].empty() || cells[3 + k][0] == '-') {
                    throw std::invalid_argument("negative count");
                }
                size_t used = 0;
                r.counts[k] = std::stoull(cells[3 + k], &used);
                if (used != cells[3 + k].size()) {
                    throw std::invalid_argument("malformed count");
                }
            }
            r.integration_s = std::stod(cells[7]);
            out.push_back(r);
        } catch (const std::exception &e) {
            throw std::invalid_argument(where + e.what());
        }
    }
    return out;
}

}  // namespace purisim
