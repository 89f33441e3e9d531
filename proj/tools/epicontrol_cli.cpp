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

// Command line front end:
//   epicontrol run <scenario-file|preset[:strategy]> [--out DIR] [--no-plots] [--strategy TAG]
//   epicontrol compare <scenario...>
//   epicontrol presets
// Exit codes: 0 success, 1 validation error, 2 unconverged solve.

#include "epicontrol/errors.hpp"
#include "epicontrol/runner.hpp"

#include "CLI11.hpp"

#include <iostream>

namespace
{

constexpr int exit_ok          = 0;
constexpr int exit_validation  = 1;
constexpr int exit_unconverged = 2;

int cmd_run(const std::string& spec, const std::string& out_dir, bool no_plots, const std::string& strategy)
{
    auto scenario = epicontrol::resolve_scenario(spec);
    if (!strategy.empty()) {
        auto tag = epicontrol::parse_strategy_tag(strategy);
        if (!tag) {
            throw epicontrol::ValidationError("strategy", "unknown strategy '" + strategy + "'");
        }
        if (epicontrol::family_of(*tag) != scenario.family()) {
            throw epicontrol::ValidationError("strategy", "strategy does not match the scenario's model");
        }
        scenario.strategy = *tag;
    }
    if (!out_dir.empty()) {
        scenario.output_dir = out_dir;
    }
    if (no_plots) {
        scenario.emit_plots = false;
    }

    const auto art = epicontrol::run(scenario);
    const auto& s  = art.summary;
    std::cout << "strategy        " << epicontrol::to_string(s.strategy) << '\n'
              << "objective       " << epicontrol::format_double(s.objective) << '\n'
              << "iterations      " << s.iterations << '\n'
              << "converged       " << (s.converged ? "true" : "false") << '\n'
              << "peak_infected   " << epicontrol::format_double(s.peak_infected) << '\n'
              << "peak_time       " << epicontrol::format_double(s.peak_time) << '\n'
              << "final_recovered " << epicontrol::format_double(s.final_recovered) << '\n'
              << "output          " << art.directory.string() << '\n';
    return s.converged ? exit_ok : exit_unconverged;
}

int cmd_compare(const std::vector<std::string>& specs)
{
    std::vector<epicontrol::Scenario> scenarios;
    for (const auto& spec : specs) {
        scenarios.push_back(epicontrol::resolve_scenario(spec));
    }
    const auto rows = epicontrol::compare(scenarios);
    std::cout << epicontrol::format_comparison(rows);
    for (const auto& r : rows) {
        if (!r.converged) {
            return exit_unconverged;
        }
    }
    return exit_ok;
}

int cmd_presets()
{
    for (auto name : epicontrol::preset_names()) {
        const auto s = *epicontrol::preset(name);
        std::cout << name << "  (default strategy " << epicontrol::to_string(s.strategy) << ")\n";
    }
    std::cout << "\nstrategies:\n";
    for (auto tag : epicontrol::all_strategy_tags) {
        std::cout << "  " << epicontrol::to_string(tag) << '\n';
    }
    return exit_ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Optimal vaccination, treatment and education controls for SIR/SEIR epidemic models"};
    app.require_subcommand(1);

    std::string run_spec, run_out, run_strategy;
    bool run_no_plots = false;
    auto* run         = app.add_subcommand("run", "Solve one scenario and write CSV artifacts");
    run->add_option("scenario", run_spec, "Scenario file, preset name, or preset:strategy")->required();
    run->add_option("--out", run_out, "Output directory (default: $EPICONTROL_OUTPUT_DIR or ./epicontrol-out)");
    run->add_flag("--no-plots", run_no_plots, "Do not emit plot.py");
    run->add_option("--strategy", run_strategy, "Override the scenario's strategy");

    std::vector<std::string> compare_specs;
    auto* compare = app.add_subcommand("compare", "Tabulate several scenarios side by side");
    compare->add_option("scenarios", compare_specs, "Scenario files or presets")->required();

    auto* presets = app.add_subcommand("presets", "List built-in presets and strategies");

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_validation;
    }

    try {
        if (run->parsed()) {
            return cmd_run(run_spec, run_out, run_no_plots, run_strategy);
        }
        if (compare->parsed()) {
            return cmd_compare(compare_specs);
        }
        if (presets->parsed()) {
            return cmd_presets();
        }
    }
    catch (const epicontrol::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return exit_validation;
    }
    catch (const epicontrol::ComparisonIncompatible& e) {
        std::cerr << "cannot compare: " << e.what() << '\n';
        return exit_validation;
    }
    catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_validation;
    }
    return exit_ok;
}
