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

#ifndef PURISIM_EXPERIMENT_H
#define PURISIM_EXPERIMENT_H

#include <array>
#include <filesystem>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "purisim/bell.h"
#include "purisim/circuit.h"
#include "purisim/hyperstate.h"
#include "purisim/noise.h"
#include "purisim/tomography.h"

namespace purisim {

/// Malformed or inconsistent scenario configuration.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ScenarioError { None, BitFlip, PhaseFlip };
enum class Collection { Modes01, Modes23, Both };
enum class Analysis { TomographyPol, TomographySpa, Chsh };

const char *to_string(ScenarioError e);
const char *to_string(Collection c);
const char *to_string(Analysis a);

/// Chip and detector constants. They only feed detected_pair_rate().
struct HardwareConstants {
    double generated_pair_rate_hz = 0;
    double grating_coupler_db = -5.4;
    double waveguide_loss_db_per_cm = 4.5;
    double waveguide_length_cm = 0;
    double detector_efficiency = 0.25;
    double pump_power_dbm = 19.2;
    double repetition_rate_hz = 9.95e9;
};

/// Coincidence rate at the detectors: each photon crosses one grating coupler,
/// waveguide_length_cm of waveguide and one detector.
double detected_pair_rate(const HardwareConstants &hw);

struct Scenario {
    std::string name = "scenario";
    ScenarioError error_kind = ScenarioError::None;
    /// (none, pol, spa, both) branch weights of the error mixture.
    std::array<double, 4> weights{1, 0, 0, 0};
    /// Set when the weights came from independent marginals.
    std::optional<std::array<double, 2>> marginals;
    Photon error_side = Photon::Bob;
    bool purify = false;
    Collection collection = Collection::Modes01;
    BaselineNoise baseline;
    DetectionParams detection;
    std::optional<HardwareConstants> hardware;
    double integration_s = 60;
    std::set<Analysis> analyses{Analysis::TomographyPol, Analysis::TomographySpa, Analysis::Chsh};
    /// Baseline imperfection before the channel errors (true) or after.
    bool baseline_first = true;
    double splitting_error = 0;
    /// Applied right after the error mixture.
    std::vector<CircuitConfig> extra_circuits;
    MleOptions mle;

    /// Throws ConfigError.
    void validate() const;
};

/// Parses the JSON scenario schema. Unknown keys are rejected with ConfigError.
Scenario parse_scenario(const nlohmann::json &j);
nlohmann::json to_json(const Scenario &s);

struct ExactResults {
    TwoQubitState rho_pol;
    TwoQubitState rho_spa;
    double fidelity_pol = 0;
    double fidelity_spa = 0;
    ChshResult chsh_canonical;
    OptimizedChsh chsh_optimal;
};

struct SampledTomography {
    Dof dof = Dof::Polarization;
    std::vector<CountRecord> records;
    TomographyResult linear;
    TomographyResult mle;
    double fidelity_linear = 0;
    double fidelity_mle = 0;
};

struct SampledChsh {
    std::vector<ChshRecord> records;
    ChshResult result;
};

struct RunReport {
    Scenario scenario;
    uint64_t seed = 0;
    double success_probability = 1;
    bool no_coincidence = false;
    /// State after post-selection; empty on no coincidence.
    std::optional<HyperState> final_state;
    std::optional<ExactResults> exact;
    std::optional<SampledTomography> tomography_pol;
    std::optional<SampledTomography> tomography_spa;
    std::optional<SampledChsh> chsh;
};

/// The state just before analysis, following the fixed pipeline order.
PostSelection prepare_state(const Scenario &scenario);

/// Runs the pipeline and all requested analyses.
RunReport run(const Scenario &scenario);

/// Deterministic given the scenario and seed. Wall-clock data is kept out.
nlohmann::json report_to_json(const RunReport &report);

/// Writes report.json, counts/*.csv, rho/*.json and plots/ under dir and
/// returns the written paths. Throws std::runtime_error naming the path on
/// I/O failure.
std::vector<std::filesystem::path> write_outputs(const RunReport &report, const std::filesystem::path &dir);

struct ComparisonRow {
    std::string quantity;
    std::string scenario;
    double reported_value = 0;
    double simulated_exact = 0;
    std::optional<double> simulated_sampled;
};

struct PaperSuite {
    std::vector<RunReport> reports;
    std::vector<ComparisonRow> rows;
};

/// The eight calibrated scenarios mirroring the chip experiment.
std::vector<Scenario> paper_scenarios(uint64_t seed = 2025);
PaperSuite run_paper_suite(uint64_t seed = 2025);
std::string format_comparison(const std::vector<ComparisonRow> &rows);
nlohmann::json comparison_to_json(const std::vector<ComparisonRow> &rows);

}  // namespace purisim

#endif
