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

#ifndef PURISIM_PLOTS_H
#define PURISIM_PLOTS_H

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "purisim/hyperstate.h"

namespace purisim {

/// Rows "row,col,re,im" for all 16 entries, full precision.
std::string bar_heights_csv(const Matrix4 &rho);

/// Oblique-projection bar chart of Re and Im side by side.
std::string render_density_svg(const Matrix4 &rho, const std::string &title);

/// Writes <stem>.svg and <stem>.csv for every density matrix found in the
/// report document ("exact" and "sampled" sections) into out_dir.
std::vector<std::filesystem::path> emit_plots(const nlohmann::json &report, const std::filesystem::path &out_dir);

/// Writes text to path, creating parent directories. Throws std::runtime_error
/// mentioning the path on failure.
void write_text_file(const std::filesystem::path &path, const std::string &text);

}  // namespace purisim

#endif
