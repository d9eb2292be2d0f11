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

#ifndef PURISIM_MATRIX_IO_H
#define PURISIM_MATRIX_IO_H

#include <json.hpp>

#include "purisim/hyperstate.h"

namespace purisim {

using ComplexMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;

/// Sparse JSON form {"dim": n, "entries": [[row, col, re, im], ...]}.
///
/// Only entries with |z| > zero_tol are listed, in row-major order.
nlohmann::json matrix_to_json(const ComplexMatrix &m, double zero_tol = 0.0);
/// Throws std::invalid_argument on a malformed document.
ComplexMatrix matrix_from_json(const nlohmann::json &j);

nlohmann::json to_json(const HyperState &s);
nlohmann::json to_json(const TwoQubitState &s);
HyperState hyperstate_from_json(const nlohmann::json &j);
TwoQubitState two_qubit_state_from_json(const nlohmann::json &j);

}  // namespace purisim

#endif
