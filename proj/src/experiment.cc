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

#include "purisim/experiment.h"

#include <cmath>
#include <cstdio>
#include <future>
#include <initializer_list>
#include <sstream>

#include "purisim/matrix_io.h"
#include "purisim/plots.h"

namespace purisim {

using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// Config parsing helpers.

void reject_unknown(const json &j, std::initializer_list<const char *> allowed, const std::string &where) {
    if (!j.is_object()) {
        throw ConfigError(where + ": expected an object");
    }
    for (const auto &[key, value] : j.items()) {
        bool known = false;
        for (const char *a : allowed) {
            known = known || key == a;
        }
        if (!known) {
            throw ConfigError(where + ": unknown key '" + key + "'");
        }
    }
}

template <typename T>
T get_as(const json &j, const char *key, const std::string &where) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception &) {
        throw ConfigError(where + ": bad value for '" + key + "'");
    }
}

template <typename T>
void read_opt(const json &j, const char *key, const std::string &where, T &out) {
    if (j.contains(key)) {
        out = get_as<T>(j, key, where);
    }
}

ScenarioError parse_error_kind(const std::string &s) {
    if (s == "none") {
        return ScenarioError::None;
    }
    if (s == "bit_flip") {
        return ScenarioError::BitFlip;
    }
    if (s == "phase_flip") {
        return ScenarioError::PhaseFlip;
    }
    throw ConfigError("error_kind: expected none, bit_flip or phase_flip, got '" + s + "'");
}

Collection parse_collection(const std::string &s) {
    if (s == "modes01") {
        return Collection::Modes01;
    }
    if (s == "modes23") {
        return Collection::Modes23;
    }
    if (s == "both") {
        return Collection::Both;
    }
    throw ConfigError("collection: expected modes01, modes23 or both, got '" + s + "'");
}

Analysis parse_analysis(const std::string &s) {
    if (s == "tomography_pol") {
        return Analysis::TomographyPol;
    }
    if (s == "tomography_spa") {
        return Analysis::TomographySpa;
    }
    if (s == "chsh") {
        return Analysis::Chsh;
    }
    throw ConfigError("analyses: unknown analysis '" + s + "'");
}

Photon parse_photon(const std::string &s) {
    try {
        const Side side = parse_side(s);
        if (side == Side::Both) {
            throw ConfigError("error_side must be alice or bob");
        }
        return side == Side::Alice ? Photon::Alice : Photon::Bob;
    } catch (const std::invalid_argument &e) {
        throw ConfigError(std::string("error_side: ") + e.what());
    }
}

BaselineNoise parse_baseline(const json &j) {
    const std::string where = "baseline";
    reject_unknown(j, {"visibility_pol", "visibility_spa", "target_fidelity_pol", "target_fidelity_spa"}, where);
    BaselineNoise b;
    auto pick = [&](const char *vis_key, const char *fid_key, double &out) {
        if (j.contains(vis_key) && j.contains(fid_key)) {
            throw ConfigError(where + ": give either " + vis_key + " or " + fid_key);
        }
        read_opt(j, vis_key, where, out);
        if (j.contains(fid_key)) {
            try {
                out = calibrate_visibility(get_as<double>(j, fid_key, where));
            } catch (const std::invalid_argument &e) {
                throw ConfigError(where + ": " + e.what());
            }
        }
    };
    pick("visibility_pol", "target_fidelity_pol", b.visibility_pol);
    pick("visibility_spa", "target_fidelity_spa", b.visibility_spa);
    return b;
}

DetectionParams parse_detection(const json &j) {
    const std::string where = "detection";
    reject_unknown(j, {"pair_rate", "efficiency", "rate_is_generated", "dark_coincidence_rate", "seed"}, where);
    DetectionParams d;
    read_opt(j, "pair_rate", where, d.pair_rate);
    read_opt(j, "efficiency", where, d.efficiency);
    read_opt(j, "rate_is_generated", where, d.rate_is_generated);
    read_opt(j, "dark_coincidence_rate", where, d.dark_coincidence_rate);
    read_opt(j, "seed", where, d.seed);
    return d;
}

HardwareConstants parse_hardware(const json &j) {
    const std::string where = "hardware";
    reject_unknown(j,
                   {"generated_pair_rate_hz", "grating_coupler_db", "waveguide_loss_db_per_cm",
                    "waveguide_length_cm", "detector_efficiency", "pump_power_dbm", "repetition_rate_hz"},
                   where);
    HardwareConstants h;
    read_opt(j, "generated_pair_rate_hz", where, h.generated_pair_rate_hz);
    read_opt(j, "grating_coupler_db", where, h.grating_coupler_db);
    read_opt(j, "waveguide_loss_db_per_cm", where, h.waveguide_loss_db_per_cm);
    read_opt(j, "waveguide_length_cm", where, h.waveguide_length_cm);
    read_opt(j, "detector_efficiency", where, h.detector_efficiency);
    read_opt(j, "pump_power_dbm", where, h.pump_power_dbm);
    read_opt(j, "repetition_rate_hz", where, h.repetition_rate_hz);
    return h;
}

// ---------------------------------------------------------------------------
// Report serialization helpers.

json chsh_to_json(const ChshResult &r) {
    json j{{"S", r.s}, {"correlations", r.correlations}};
    if (r.standard_error) {
        j["standard_error"] = *r.standard_error;
    }
    return j;
}

json vec_to_json(const BlochVector &v) {
    return json::array({v.x(), v.y(), v.z()});
}

json settings_to_json(const ChshSettings &s) {
    return {{"a", vec_to_json(s.a)},
            {"a_prime", vec_to_json(s.a_prime)},
            {"b", vec_to_json(s.b)},
            {"b_prime", vec_to_json(s.b_prime)}};
}

json tomography_to_json(const SampledTomography &t) {
    uint64_t total = 0;
    for (const auto &r : t.records) {
        total += r.total();
    }
    return {
        {"dof", to_string(t.dof)},
        {"total_counts", total},
        {"fidelity_mle", t.fidelity_mle},
        {"fidelity_linear", t.fidelity_linear},
        {"mle",
         {{"rho_hat", matrix_to_json(t.mle.rho_hat)},
          {"log_likelihood", t.mle.log_likelihood.value_or(0.0)},
          {"iterations", t.mle.iterations},
          {"converged", t.mle.converged}}},
        {"linear_inversion",
         {{"rho_hat", matrix_to_json(t.linear.rho_hat)},
          {"min_eigenvalue", t.linear.min_eigenvalue()},
          {"physical", t.linear.physical()}}},
    };
}

std::string chsh_csv(const std::vector<ChshRecord> &records) {
    std::ostringstream out;
    out << "term,n_pp,n_pm,n_mp,n_mm,integration_s\n";
    for (const auto &r : records) {
        char time[64];
        std::snprintf(time, sizeof(time), "%.17g", r.integration_s);
        out << to_string(r.term) << ',' << r.counts[0] << ',' << r.counts[1] << ',' << r.counts[2] << ','
            << r.counts[3] << ',' << time << '\n';
    }
    return out.str();
}

double raw_fidelity(const Matrix4 &rho, const Vector4 &target) {
    return (target.adjoint() * rho * target)(0, 0).real();
}

SampledTomography sample_tomography(const TwoQubitState &rho, Dof dof, const DetectionParams &params,
                                    const Scenario &s, uint64_t stream_base) {
    SampledTomography t;
    t.dof = dof;
    t.records = simulate_tomography(rho, dof, params, s.integration_s, stream_base, s.splitting_error);
    t.linear = linear_inversion(t.records);
    t.mle = mle_reconstruct(t.records, s.mle);
    t.fidelity_linear = raw_fidelity(t.linear.rho_hat, phi_plus());
    t.fidelity_mle = raw_fidelity(t.mle.rho_hat, phi_plus());
    return t;
}

constexpr uint64_t kStreamPol = 0;
constexpr uint64_t kStreamSpa = 16;
constexpr uint64_t kStreamChsh = 32;

}  // namespace

const char *to_string(ScenarioError e) {
    switch (e) {
        case ScenarioError::None:
            return "none";
        case ScenarioError::BitFlip:
            return "bit_flip";
        case ScenarioError::PhaseFlip:
            return "phase_flip";
    }
    return "?";
}

const char *to_string(Collection c) {
    switch (c) {
        case Collection::Modes01:
            return "modes01";
        case Collection::Modes23:
            return "modes23";
        case Collection::Both:
            return "both";
    }
    return "?";
}

const char *to_string(Analysis a) {
    switch (a) {
        case Analysis::TomographyPol:
            return "tomography_pol";
        case Analysis::TomographySpa:
            return "tomography_spa";
        case Analysis::Chsh:
            return "chsh";
    }
    return "?";
}

double detected_pair_rate(const HardwareConstants &hw) {
    const double per_photon = hw.detector_efficiency * std::pow(10.0, hw.grating_coupler_db / 10) *
                              std::pow(10.0, -hw.waveguide_loss_db_per_cm * hw.waveguide_length_cm / 10);
    return hw.generated_pair_rate_hz * per_photon * per_photon;
}

void Scenario::validate() const {
    try {
        if (error_kind != ScenarioError::None) {
            (void)ErrorDistribution(ErrorKind::BitFlip, weights);
        }
        detection.validate();
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
    if (error_kind == ScenarioError::None && weights != std::array<double, 4>{1, 0, 0, 0}) {
        throw ConfigError("error rates given with error_kind none");
    }
    if (collection == Collection::Both && !purify) {
        throw ConfigError("collection 'both' requires purify");
    }
    for (double v : {baseline.visibility_pol, baseline.visibility_spa}) {
        if (!(v >= 0 && v <= 1)) {
            throw ConfigError("baseline visibility outside [0,1]");
        }
    }
    if (!(integration_s >= 0)) {
        throw ConfigError("integration_s must be non-negative");
    }
    if (!analyses.empty() && !(integration_s > 0)) {
        throw ConfigError("sampled analyses need integration_s > 0");
    }
    if (!(splitting_error > -0.5 && splitting_error < 0.5)) {
        throw ConfigError("splitting_error must lie in (-0.5, 0.5)");
    }
    if (!(mle.tol > 0) || mle.max_iter < 0) {
        throw ConfigError("mle: tol must be positive and max_iter non-negative");
    }
}

Scenario parse_scenario(const json &j) {
    reject_unknown(j,
                   {"name", "error_kind", "p_pol", "p_spa", "weights", "error_side", "purify", "collection",
                    "baseline", "detection", "hardware", "integration_s", "analyses", "baseline_first",
                    "splitting_error", "extra_circuits", "mle"},
                   "config");
    const std::string where = "config";
    Scenario s;
    read_opt(j, "name", where, s.name);
    if (j.contains("error_kind")) {
        s.error_kind = parse_error_kind(get_as<std::string>(j, "error_kind", where));
    }
    const bool has_p = j.contains("p_pol") || j.contains("p_spa");
    if (has_p && j.contains("weights")) {
        throw ConfigError("config: give either p_pol/p_spa or weights, not both");
    }
    if (has_p) {
        double p_pol = 0, p_spa = 0;
        read_opt(j, "p_pol", where, p_pol);
        read_opt(j, "p_spa", where, p_spa);
        try {
            s.weights = independent_rates(ErrorKind::BitFlip, p_pol, p_spa).weights();
        } catch (const std::invalid_argument &e) {
            throw ConfigError(std::string("config: ") + e.what());
        }
        s.marginals = std::array<double, 2>{p_pol, p_spa};
    }
    if (j.contains("weights")) {
        const json &w = j.at("weights");
        reject_unknown(w, {"w_none", "w_pol", "w_spa", "w_both"}, "weights");
        s.weights = {0, 0, 0, 0};
        read_opt(w, "w_none", "weights", s.weights[0]);
        read_opt(w, "w_pol", "weights", s.weights[1]);
        read_opt(w, "w_spa", "weights", s.weights[2]);
        read_opt(w, "w_both", "weights", s.weights[3]);
    }
    if (j.contains("error_side")) {
        s.error_side = parse_photon(get_as<std::string>(j, "error_side", where));
    }
    read_opt(j, "purify", where, s.purify);
    if (j.contains("collection")) {
        s.collection = parse_collection(get_as<std::string>(j, "collection", where));
    }
    if (j.contains("baseline")) {
        s.baseline = parse_baseline(j.at("baseline"));
    }
    if (j.contains("detection")) {
        s.detection = parse_detection(j.at("detection"));
    }
    if (j.contains("hardware")) {
        s.hardware = parse_hardware(j.at("hardware"));
        s.detection.pair_rate = detected_pair_rate(*s.hardware);
        s.detection.rate_is_generated = false;
    }
    read_opt(j, "integration_s", where, s.integration_s);
    if (j.contains("analyses")) {
        const json &a = j.at("analyses");
        if (!a.is_array()) {
            throw ConfigError("analyses: expected an array");
        }
        s.analyses.clear();
        for (const auto &item : a) {
            if (!item.is_string()) {
                throw ConfigError("analyses: expected strings");
            }
            s.analyses.insert(parse_analysis(item.get<std::string>()));
        }
    }
    read_opt(j, "baseline_first", where, s.baseline_first);
    read_opt(j, "splitting_error", where, s.splitting_error);
    if (j.contains("extra_circuits")) {
        const json &list = j.at("extra_circuits");
        if (!list.is_array()) {
            throw ConfigError("extra_circuits: expected an array");
        }
        for (const auto &item : list) {
            reject_unknown(item, {"name", "side"}, "extra_circuits");
            try {
                CircuitConfig c;
                c.name = parse_circuit_name(get_as<std::string>(item, "name", "extra_circuits"));
                if (item.contains("side")) {
                    c.side = parse_side(get_as<std::string>(item, "side", "extra_circuits"));
                }
                s.extra_circuits.push_back(c);
            } catch (const std::invalid_argument &e) {
                throw ConfigError(std::string("extra_circuits: ") + e.what());
            }
        }
    }
    if (j.contains("mle")) {
        const json &m = j.at("mle");
        reject_unknown(m, {"tol", "max_iter"}, "mle");
        read_opt(m, "tol", "mle", s.mle.tol);
        read_opt(m, "max_iter", "mle", s.mle.max_iter);
    }
    s.validate();
    return s;
}

json to_json(const Scenario &s) {
    json analyses = json::array();
    for (Analysis a : s.analyses) {
        analyses.push_back(to_string(a));
    }
    json extra = json::array();
    for (const auto &c : s.extra_circuits) {
        extra.push_back({{"name", to_string(c.name)}, {"side", to_string(c.side)}});
    }
    json j{
        {"name", s.name},
        {"error_kind", to_string(s.error_kind)},
        {"weights", {{"w_none", s.weights[0]}, {"w_pol", s.weights[1]}, {"w_spa", s.weights[2]}, {"w_both", s.weights[3]}}},
        {"error_side", to_string(s.error_side)},
        {"purify", s.purify},
        {"collection", to_string(s.collection)},
        {"baseline", {{"visibility_pol", s.baseline.visibility_pol}, {"visibility_spa", s.baseline.visibility_spa}}},
        {"detection",
         {{"pair_rate", s.detection.pair_rate},
          {"efficiency", s.detection.efficiency},
          {"rate_is_generated", s.detection.rate_is_generated},
          {"dark_coincidence_rate", s.detection.dark_coincidence_rate},
          {"seed", s.detection.seed}}},
        {"integration_s", s.integration_s},
        {"analyses", analyses},
        {"baseline_first", s.baseline_first},
        {"splitting_error", s.splitting_error},
        {"extra_circuits", extra},
        {"mle", {{"tol", s.mle.tol}, {"max_iter", s.mle.max_iter}}},
    };
    if (s.marginals) {
        j["marginals"] = {{"p_pol", (*s.marginals)[0]}, {"p_spa", (*s.marginals)[1]}};
    }
    if (s.hardware) {
        const auto &h = *s.hardware;
        j["hardware"] = {{"generated_pair_rate_hz", h.generated_pair_rate_hz},
                         {"grating_coupler_db", h.grating_coupler_db},
                         {"waveguide_loss_db_per_cm", h.waveguide_loss_db_per_cm},
                         {"waveguide_length_cm", h.waveguide_length_cm},
                         {"detector_efficiency", h.detector_efficiency},
                         {"pump_power_dbm", h.pump_power_dbm},
                         {"repetition_rate_hz", h.repetition_rate_hz}};
    }
    return j;
}

PostSelection prepare_state(const Scenario &s) {
    s.validate();
    HyperState state = make_initial_state();
    auto add_errors = [&](const HyperState &in) {
        if (s.error_kind == ScenarioError::None) {
            return in;
        }
        const ErrorKind kind = s.error_kind == ScenarioError::BitFlip ? ErrorKind::BitFlip : ErrorKind::PhaseFlip;
        return apply_error_mixture(in, ErrorDistribution(kind, s.weights), s.error_side, s.splitting_error);
    };
    if (s.baseline_first) {
        state = add_errors(apply_baseline(state, s.baseline));
    } else {
        state = apply_baseline(add_errors(state), s.baseline);
    }
    for (CircuitConfig c : s.extra_circuits) {
        c.splitting_error = s.splitting_error;
        state = purisim::apply(state, compile(c));
    }
    if (!s.purify) {
        return PostSelection{state, 1.0};
    }
    if (s.error_kind == ScenarioError::PhaseFlip) {
        state = purisim::apply(state, compile({CircuitName::HadamardBank, Side::Both, s.splitting_error}));
    }
    state = purisim::apply(state, compile({CircuitName::PurifyOn, Side::Both, s.splitting_error}));
    switch (s.collection) {
        case Collection::Modes01:
            return post_select(state, {0, 1});
        case Collection::Modes23:
            return post_select(state, {2, 3});
        case Collection::Both:
            return post_select_pooled(state, {{0, 1}, {2, 3}});
    }
    throw ConfigError("bad collection");
}

RunReport run(const Scenario &scenario) {
    RunReport report;
    report.scenario = scenario;
    report.seed = scenario.detection.seed;
    const PostSelection selected = prepare_state(scenario);
    report.success_probability = selected.success_probability;
    if (selected.no_coincidence()) {
        report.no_coincidence = true;
        return report;
    }
    report.final_state = selected.state;
    const HyperState &state = *selected.state;

    const TwoQubitState pol = reduced(state, Dof::Polarization);
    const TwoQubitState spa = reduced(state, Dof::Spatial);
    report.exact = ExactResults{pol,
                                spa,
                                fidelity(pol, phi_plus()),
                                fidelity(spa, phi_plus()),
                                chsh_value(pol, ChshSettings::canonical()),
                                optimize_chsh(pol)};

    // Coincidences only arrive in the selected windows.
    DetectionParams params = scenario.detection;
    params.pair_rate *= report.success_probability;
    if (scenario.analyses.count(Analysis::TomographyPol)) {
        report.tomography_pol = sample_tomography(pol, Dof::Polarization, params, scenario, kStreamPol);
    }
    if (scenario.analyses.count(Analysis::TomographySpa)) {
        report.tomography_spa = sample_tomography(spa, Dof::Spatial, params, scenario, kStreamSpa);
    }
    if (scenario.analyses.count(Analysis::Chsh)) {
        SampledChsh c;
        c.records = simulate_chsh(pol, ChshSettings::canonical(), params, scenario.integration_s, kStreamChsh);
        c.result = chsh_from_counts(c.records);
        report.chsh = c;
    }
    return report;
}

json report_to_json(const RunReport &r) {
    json j{{"scenario", to_json(r.scenario)},
           {"seed", r.seed},
           {"success_probability", r.success_probability},
           {"no_coincidence", r.no_coincidence}};
    if (r.exact) {
        const auto &e = *r.exact;
        json optimal = chsh_to_json(e.chsh_optimal.result);
        optimal["settings"] = settings_to_json(e.chsh_optimal.settings);
        j["exact"] = {{"fidelity_pol", e.fidelity_pol},
                      {"fidelity_spa", e.fidelity_spa},
                      {"chsh_canonical", chsh_to_json(e.chsh_canonical)},
                      {"chsh_optimal", optimal},
                      {"rho_pol", to_json(e.rho_pol)},
                      {"rho_spa", to_json(e.rho_spa)}};
    }
    json sampled = json::object();
    if (r.tomography_pol) {
        sampled["tomography_pol"] = tomography_to_json(*r.tomography_pol);
    }
    if (r.tomography_spa) {
        sampled["tomography_spa"] = tomography_to_json(*r.tomography_spa);
    }
    if (r.chsh) {
        uint64_t total = 0;
        for (const auto &rec : r.chsh->records) {
            total += rec.counts[0] + rec.counts[1] + rec.counts[2] + rec.counts[3];
        }
        json c = chsh_to_json(r.chsh->result);
        c["total_counts"] = total;
        c["settings"] = "canonical";
        sampled["chsh"] = c;
    }
    if (!r.no_coincidence) {
        j["sampled"] = sampled;
    }
    return j;
}

std::vector<std::filesystem::path> write_outputs(const RunReport &report, const std::filesystem::path &dir) {
    std::vector<std::filesystem::path> written;
    auto put = [&](const std::filesystem::path &p, const std::string &text) {
        write_text_file(p, text);
        written.push_back(p);
    };
    const json doc = report_to_json(report);
    put(dir / "report.json", doc.dump(2) + "\n");
    auto counts_csv = [](const std::vector<CountRecord> &records) {
        std::ostringstream out;
        write_counts_csv(out, records);
        return out.str();
    };
    if (report.tomography_pol) {
        put(dir / "counts" / "tomography_pol.csv", counts_csv(report.tomography_pol->records));
        put(dir / "rho" / "mle_pol.json", matrix_to_json(report.tomography_pol->mle.rho_hat).dump(2) + "\n");
        put(dir / "rho" / "linear_pol.json", matrix_to_json(report.tomography_pol->linear.rho_hat).dump(2) + "\n");
    }
    if (report.tomography_spa) {
        put(dir / "counts" / "tomography_spa.csv", counts_csv(report.tomography_spa->records));
        put(dir / "rho" / "mle_spa.json", matrix_to_json(report.tomography_spa->mle.rho_hat).dump(2) + "\n");
        put(dir / "rho" / "linear_spa.json", matrix_to_json(report.tomography_spa->linear.rho_hat).dump(2) + "\n");
    }
    if (report.chsh) {
        put(dir / "counts" / "chsh.csv", chsh_csv(report.chsh->records));
    }
    if (report.exact) {
        put(dir / "rho" / "exact_pol.json", to_json(report.exact->rho_pol).dump(2) + "\n");
        put(dir / "rho" / "exact_spa.json", to_json(report.exact->rho_spa).dump(2) + "\n");
    }
    if (report.final_state) {
        put(dir / "rho" / "hyperstate.json", to_json(*report.final_state).dump(2) + "\n");
    }
    for (const auto &p : emit_plots(doc, dir / "plots")) {
        written.push_back(p);
    }
    return written;
}

std::vector<Scenario> paper_scenarios(uint64_t seed) {
    const double v = calibrate_visibility(0.90);
    Scenario base;
    base.baseline = {v, v};
    base.detection = DetectionParams{};
    base.integration_s = 60;

    auto make = [&](const std::string &name, ScenarioError kind, bool purify, Collection c) {
        Scenario s = base;
        s.name = name;
        s.error_kind = kind;
        if (kind != ScenarioError::None) {
            s.weights = independent_rates(ErrorKind::BitFlip, 0.2, 0.2).weights();
            s.marginals = std::array<double, 2>{0.2, 0.2};
        }
        s.purify = purify;
        s.collection = c;
        return s;
    };
    std::vector<Scenario> out{
        make("baseline", ScenarioError::None, false, Collection::Modes01),
        make("bf_before", ScenarioError::BitFlip, false, Collection::Modes01),
        make("bf_after", ScenarioError::BitFlip, true, Collection::Modes01),
        make("bf_after_modes23", ScenarioError::BitFlip, true, Collection::Modes23),
        make("bf_after_pooled", ScenarioError::BitFlip, true, Collection::Both),
        make("pf_before", ScenarioError::PhaseFlip, false, Collection::Modes01),
        make("pf_after", ScenarioError::PhaseFlip, true, Collection::Modes01),
        make("pf_after_modes23", ScenarioError::PhaseFlip, true, Collection::Modes23),
    };
    for (size_t i = 0; i < out.size(); ++i) {
        out[i].detection.seed = derive_seed(seed, i);
    }
    return out;
}

PaperSuite run_paper_suite(uint64_t seed) {
    const auto scenarios = paper_scenarios(seed);
    std::vector<std::future<RunReport>> jobs;
    for (const auto &s : scenarios) {
        jobs.push_back(std::async(std::launch::async, [s] { return run(s); }));
    }
    PaperSuite suite;
    for (auto &job : jobs) {
        suite.reports.push_back(job.get());
    }

    auto find = [&](const std::string &name) -> const RunReport & {
        for (const auto &r : suite.reports) {
            if (r.scenario.name == name) {
                return r;
            }
        }
        throw std::logic_error("scenario suite: missing scenario " + name);
    };
    auto fid = [&](const std::string &quantity, const std::string &name, Dof dof, double reported) {
        const RunReport &r = find(name);
        ComparisonRow row{quantity, name, reported, 0, std::nullopt};
        const bool pol = dof == Dof::Polarization;
        row.simulated_exact = pol ? r.exact->fidelity_pol : r.exact->fidelity_spa;
        const auto &t = pol ? r.tomography_pol : r.tomography_spa;
        if (t) {
            row.simulated_sampled = t->fidelity_mle;
        }
        suite.rows.push_back(row);
    };
    auto chsh = [&](const std::string &quantity, const std::string &name, double reported) {
        const RunReport &r = find(name);
        ComparisonRow row{quantity, name, reported, r.exact->chsh_canonical.s, std::nullopt};
        if (r.chsh) {
            row.simulated_sampled = r.chsh->result.s;
        }
        suite.rows.push_back(row);
    };
    fid("fidelity_pol", "baseline", Dof::Polarization, 0.90);
    fid("fidelity_spa", "baseline", Dof::Spatial, 0.90);
    fid("fidelity_pol", "bf_before", Dof::Polarization, 0.71);
    fid("fidelity_spa", "bf_before", Dof::Spatial, 0.72);
    fid("fidelity_pol", "bf_after", Dof::Polarization, 0.82);
    chsh("chsh", "bf_before", 1.87);
    chsh("chsh", "bf_after", 2.17);
    fid("fidelity_pol", "pf_before", Dof::Polarization, 0.72);
    fid("fidelity_spa", "pf_before", Dof::Spatial, 0.74);
    fid("fidelity_pol", "pf_after", Dof::Polarization, 0.83);
    chsh("chsh", "pf_before", 1.94);
    chsh("chsh", "pf_after", 2.19);
    return suite;
}

std::string format_comparison(const std::vector<ComparisonRow> &rows) {
    std::ostringstream out;
    char line[160];
    std::snprintf(line, sizeof(line), "%-14s %-18s %8s %10s %10s\n", "quantity", "scenario", "reported", "exact",
                  "sampled");
    out << line;
    for (const auto &r : rows) {
        char sampled[32] = "-";
        if (r.simulated_sampled) {
            std::snprintf(sampled, sizeof(sampled), "%.4f", *r.simulated_sampled);
        }
        std::snprintf(line, sizeof(line), "%-14s %-18s %8.2f %10.4f %10s\n", r.quantity.c_str(), r.scenario.c_str(),
                      r.reported_value, r.simulated_exact, sampled);
        out << line;
    }
    return out.str();
}

json comparison_to_json(const std::vector<ComparisonRow> &rows) {
    json out = json::array();
    for (const auto &r : rows) {
        json row{{"quantity", r.quantity},
                 {"scenario", r.scenario},
                 {"reported_value", r.reported_value},
                 {"simulated_exact", r.simulated_exact}};
        row["simulated_sampled"] = r.simulated_sampled ? json(*r.simulated_sampled) : json(nullptr);
        out.push_back(row);
    }
    return out;
}

}  // namespace purisim
