/*
* Copyright (C) 2026 epicontrol contributors
*
* Licensed under the Apache License, Version 2.0 (the "License");
* you may not use this file except in compliance with the License.
* You may obtain a copy of the License at
*
*     http://www.apache.org/licenses/LICENSE-2.0
*
* Unless required by applicable law or agreed to in writing, software
* distributed under the License is distributed on an "AS IS" BASIS,
* WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
* See the License for the specific language governing permissions and
* limitations under the License.
*/
#ifndef EPICONTROL_RUNNER_HPP
#define EPICONTROL_RUNNER_HPP

#include "epicontrol/fbs.hpp"
#include "epicontrol/models.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace epicontrol
{

/// Environment variable naming the default output directory.
inline constexpr const char* output_dir_env = "EPICONTROL_OUTPUT_DIR";

/// Every objective weight a scenario may reference. Only the active strategy's entries matter.
struct WeightTable {
    double B  = 1;
    double C1 = 1, C2 = 5, C3 = 5;
    double D  = 5;
    double K1 = 1, K2 = 5, K3 = 5;
    double D1 = 1, D2 = 5, D3 = 5;

    bool operator==(const WeightTable&) const = default;
};

struct InitialProportions {
    double s = 0, e = 0, i = 0, r = 0;

    bool operator==(const InitialProportions&) const = default;
};

/**
 * One experiment: strategy, model rates, initial proportions, objective
 * weights, solver settings and output options.
 *
 * Text form is one `key = value` per line with dotted sections, `#` starts
 * a comment. Recognized keys:
 *
 *     preset            base values (sir-fig2, seir-fig5), applied first
 *     strategy          e.g. sir-vaccination
 *     model.nu  model.rho  model.delta
 *     initial.s  initial.e  initial.i  initial.r
 *     weights.B  weights.C1..C3  weights.D  weights.K1..K3  weights.D1..D3
 *     solver.tolerance  solver.max_iterations  solver.relaxation
 *     solver.tf  solver.n_steps
 *     output.dir  output.plots
 */
struct Scenario {
    StrategyTag strategy = StrategyTag::SirVaccination;
    double nu            = 0.2;
    double rho           = 0.1887;
    double delta         = 0.1;
    InitialProportions initial{0.95, 0.0, 0.05, 0.0};
    WeightTable weights;
    FbsSettings settings;
    std::string output_dir; ///< empty: resolved at run time
    bool emit_plots = true;

    ModelFamily family() const
    {
        return family_of(strategy);
    }
    Strategy to_strategy() const;
    Vec initial_state() const;
    /// Throws ValidationError naming the first offending key.
    void validate() const;

    bool operator==(const Scenario&) const = default;
};

std::vector<std::string_view> preset_names();
/// Built-in preset, nullopt if the name is unknown.
std::optional<Scenario> preset(std::string_view name);

Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);
/// Canonical text form; parse_scenario(format_scenario(s)) == s.
std::string format_scenario(const Scenario& scenario);

/**
 * Resolves a scenario argument: an existing file, a preset name, or
 * `<preset>:<strategy>` selecting a strategy on top of a preset.
 */
Scenario resolve_scenario(std::string_view spec);

struct RunSummary {
    StrategyTag strategy = StrategyTag::SirUncontrolled;
    double objective          = 0;
    std::size_t iterations    = 0;
    bool converged            = true;
    double peak_infected      = 0;
    double peak_time          = 0;
    double final_recovered    = 0;
};

/// In-memory result of one scenario.
struct Outcome {
    Scenario scenario;
    Trajectory state;
    Trajectory baseline;
    std::optional<SolveReport> report; ///< absent for uncontrolled strategies
    RunSummary summary;
};

Outcome execute(const Scenario& scenario);

struct RunArtifacts {
    std::filesystem::path directory;
    std::filesystem::path state_csv;
    std::filesystem::path baseline_csv;
    std::optional<std::filesystem::path> controls_csv;
    std::optional<std::filesystem::path> adjoint_csv;
    std::filesystem::path summary_file;
    std::filesystem::path scenario_echo;
    std::optional<std::filesystem::path> plot_script;
    RunSummary summary;
};

/// Executes the scenario and writes its CSVs, summary, scenario echo and optional plot script.
RunArtifacts run(const Scenario& scenario);

/// Output directory actually used: scenario.output_dir, else $EPICONTROL_OUTPUT_DIR, else "epicontrol-out".
std::filesystem::path resolve_output_dir(const Scenario& scenario);

struct ComparisonRow {
    StrategyTag strategy;
    double objective;
    double peak_infected;
    double peak_time;
    double final_recovered;
    std::size_t iterations;
    bool converged;
};

/// Executes every scenario (concurrently) and tabulates their summaries in input order.
std::vector<ComparisonRow> compare(const std::vector<Scenario>& scenarios);

std::string format_comparison(const std::vector<ComparisonRow>& rows);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

} // namespace epicontrol

#endif // EPICONTROL_RUNNER_HPP
