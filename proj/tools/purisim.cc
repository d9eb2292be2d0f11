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

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "purisim/experiment.h"
#include "purisim/plots.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNoCoincidence = 3;

using nlohmann::json;
namespace fs = std::filesystem;

std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

json read_json_file(const fs::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw purisim::ConfigError("cannot open config " + path.string());
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw purisim::ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
    }
}

void print_summary(const purisim::RunReport &r) {
    std::printf("scenario %s: success probability %.6f\n", r.scenario.name.c_str(), r.success_probability);
    if (r.no_coincidence) {
        std::printf("  no coincidence in the selected output modes\n");
        return;
    }
    std::printf("  exact   F_pol %.6f  F_spa %.6f  S(canonical) %.6f  S(optimal) %.6f\n", r.exact->fidelity_pol,
                r.exact->fidelity_spa, r.exact->chsh_canonical.s, r.exact->chsh_optimal.result.s);
    if (r.tomography_pol) {
        std::printf("  sampled F_pol (mle) %.4f\n", r.tomography_pol->fidelity_mle);
    }
    if (r.tomography_spa) {
        std::printf("  sampled F_spa (mle) %.4f\n", r.tomography_spa->fidelity_mle);
    }
    if (r.chsh) {
        std::printf("  sampled S %.4f +/- %.4f\n", r.chsh->result.s, r.chsh->result.standard_error.value_or(0));
    }
}

int cmd_run(const fs::path &config, std::optional<uint64_t> seed, const fs::path &out) {
    purisim::Scenario scenario;
    try {
        scenario = purisim::parse_scenario(read_json_file(config));
        if (seed) {
            scenario.detection.seed = *seed;
        }
    } catch (const purisim::ConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    const std::string started = utc_now();
    const auto t0 = std::chrono::steady_clock::now();
    const purisim::RunReport report = purisim::run(scenario);
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    purisim::write_outputs(report, out);
    // Wall-clock data lives beside report.json so the report stays reproducible.
    const json meta{{"started_at", started}, {"finished_at", utc_now()}, {"elapsed_s", elapsed}};
    purisim::write_text_file(out / "run_meta.json", meta.dump(2) + "\n");
    print_summary(report);
    std::printf("wrote %s\n", (out / "report.json").string().c_str());
    return report.no_coincidence ? kExitNoCoincidence : kExitOk;
}

int cmd_paper_suite(const fs::path &out, uint64_t seed) {
    const purisim::PaperSuite suite = purisim::run_paper_suite(seed);
    for (const auto &r : suite.reports) {
        purisim::write_outputs(r, out / r.scenario.name);
    }
    purisim::write_text_file(out / "comparison.json", purisim::comparison_to_json(suite.rows).dump(2) + "\n");
    std::ostringstream csv;
    csv << "quantity,scenario,reported_value,simulated_exact,simulated_sampled\n";
    for (const auto &row : suite.rows) {
        char line[256];
        std::snprintf(line, sizeof(line), "%s,%s,%.2f,%.17g,", row.quantity.c_str(), row.scenario.c_str(),
                      row.reported_value, row.simulated_exact);
        csv << line;
        if (row.simulated_sampled) {
            std::snprintf(line, sizeof(line), "%.17g", *row.simulated_sampled);
            csv << line;
        }
        csv << "\n";
    }
    purisim::write_text_file(out / "comparison.csv", csv.str());
    std::cout << purisim::format_comparison(suite.rows);
    std::printf("wrote %zu scenario reports under %s\n", suite.reports.size(), out.string().c_str());
    return kExitOk;
}

int cmd_plot(const fs::path &report_path, std::optional<fs::path> out) {
    json report;
    try {
        report = read_json_file(report_path);
    } catch (const purisim::ConfigError &e) {
        std::cerr << e.what() << "\n";
        return kExitConfig;
    }
    const fs::path dir = out ? *out : report_path.parent_path() / "plots";
    const auto written = purisim::emit_plots(report, dir);
    for (const auto &p : written) {
        std::printf("wrote %s\n", p.string().c_str());
    }
    if (written.empty()) {
        std::cerr << "no density matrices in " << report_path.string() << "\n";
        return kExitFailure;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Hyperentanglement purification simulator"};
    app.require_subcommand(1);

    fs::path config;
    fs::path run_out = "purisim_out";
    std::optional<uint64_t> seed;
    auto *run = app.add_subcommand("run", "Run one scenario from a JSON config");
    run->add_option("--config", config, "Scenario config (JSON)")->required();
    run->add_option("--seed", seed, "Override detection.seed");
    run->add_option("--out", run_out, "Output directory");

    fs::path suite_out = "paper_suite";
    uint64_t suite_seed = 2025;
    auto *suite = app.add_subcommand("paper-suite", "Run the calibrated chip-experiment scenarios");
    suite->add_option("--out", suite_out, "Output directory");
    suite->add_option("--seed", suite_seed, "Base seed");

    fs::path report;
    std::optional<fs::path> plot_out;
    auto *plot = app.add_subcommand("plot", "Render density-matrix bar charts from a report");
    plot->add_option("report", report, "report.json")->required();
    plot->add_option("--out", plot_out, "Output directory (default: plots/ next to the report)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*run) {
            return cmd_run(config, seed, run_out);
        }
        if (*suite) {
            return cmd_paper_suite(suite_out, suite_seed);
        }
        if (*plot) {
            return cmd_plot(report, plot_out);
        }
    } catch (const purisim::ConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitFailure;
}
