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

#include "purisim/matrix_io.h"

#include <stdexcept>

namespace purisim {

nlohmann::json matrix_to_json(const ComplexMatrix &m, double zero_tol) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("matrix_to_json: matrix is not square");
    }
    nlohmann::json entries = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            const Complex z = m(r, c);
            if (std::abs(z) > zero_tol) {
                entries.push_back({r, c, z.real(), z.imag()});
            }
        }
    }
    return {{"dim", m.rows()}, {"entries", entries}};
}

ComplexMatrix matrix_from_json(const nlohmann::json &j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("entries")) {
        throw std::invalid_argument("matrix json: expected {dim, entries}");
    }
    const auto dim = j.at("dim").get<Eigen::Index>();
    if (dim <= 0) {
        throw std::invalid_argument("matrix json: dim must be positive");
    }
    ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
    for (const auto &e : j.at("entries")) {
        if (!e.is_array() || e.size() != 4) {
            throw std::invalid_argument("matrix json: entry must be [row, col, re, im]");
        }
        const auto r = e[0].get<Eigen::Index>();
        const auto c = e[1].get<Eigen::Index>();
        if (r < 0 || c < 0 || r >= dim || c >= dim) {
            throw std::invalid_argument("matrix json: entry index out of range");
        }
        m(r, c) = Complex(e[2].get<double>(), e[3].get<double>());
    }
    return m;
}

nlohmann::json to_json(const HyperState &s) {
    return matrix_to_json(s.matrix());
}

nlohmann::json to_json(const TwoQubitState &s) {
    return matrix_to_json(s.matrix());
}

HyperState hyperstate_from_json(const nlohmann::json &j) {
    const ComplexMatrix m = matrix_from_json(j);
    if (m.rows() != 16) {
        throw std::invalid_argument("matrix json: HyperState needs dim 16");
    }
    return HyperState(Matrix16(m));
}

TwoQubitState two_qubit_state_from_json(const nlohmann::json &j) {
    const ComplexMatrix m = matrix_from_json(j);
    if (m.rows() != 4) {
        throw std::invalid_argument("matrix json: TwoQubitState needs dim 4");
    }
    return TwoQubitState(Matrix4(m));
}

}  // namespace purisim
