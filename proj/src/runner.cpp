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
#include "epicontrol/runner.hpp"
#include "epicontrol/errors.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <future>
#include <iomanip>
#include <map>
#include <sstream>

namespace epicontrol
{

namespace fs = std::filesystem;

namespace
{

constexpr double simplex_tolerance = 1e-9;

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_number(std::string_view key, std::string_view text)
{
    double v       = 0;
    const auto end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
        throw ValidationError(std::string(key), "expected a finite number, got '" + std::string(text) + "'");
    }
    return v;
}

std::size_t parse_count(std::string_view key, std::string_view text)
{
    std::size_t v  = 0;
    const auto end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end) {
        throw ValidationError(std::string(key), "expected a nonnegative integer, got '" + std::string(text) + "'");
    }
    return v;
}

bool parse_bool(std::string_view key, std::string_view text)
{
    if (text == "true" || text == "1" || text == "yes") {
        return true;
    }
    if (text == "false" || text == "0" || text == "no") {
        return false;
    }
    throw ValidationError(std::string(key), "expected true or false");
}

// Keys that map onto plain doubles of the scenario.
using DoubleSlot = std::function<double&(Scenario&)>;

const std::map<std::string, DoubleSlot, std::less<>>& double_slots()
{
    static const std::map<std::string, DoubleSlot, std::less<>> slots = {
        {"model.nu", [](Scenario& s) -> double& { return s.nu; }},
        {"model.rho", [](Scenario& s) -> double& { return s.rho; }},
        {"model.delta", [](Scenario& s) -> double& { return s.delta; }},
        {"initial.s", [](Scenario& s) -> double& { return s.initial.s; }},
        {"initial.e", [](Scenario& s) -> double& { return s.initial.e; }},
        {"initial.i", [](Scenario& s) -> double& { return s.initial.i; }},
        {"initial.r", [](Scenario& s) -> double& { return s.initial.r; }},
        {"weights.B", [](Scenario& s) -> double& { return s.weights.B; }},
        {"weights.C1", [](Scenario& s) -> double& { return s.weights.C1; }},
        {"weights.C2", [](Scenario& s) -> double& { return s.weights.C2; }},
        {"weights.C3", [](Scenario& s) -> double& { return s.weights.C3; }},
        {"weights.D", [](Scenario& s) -> double& { return s.weights.D; }},
        {"weights.K1", [](Scenario& s) -> double& { return s.weights.K1; }},
        {"weights.K2", [](Scenario& s) -> double& { return s.weights.K2; }},
        {"weights.K3", [](Scenario& s) -> double& { return s.weights.K3; }},
        {"weights.D1", [](Scenario& s) -> double& { return s.weights.D1; }},
        {"weights.D2", [](Scenario& s) -> double& { return s.weights.D2; }},
        {"weights.D3", [](Scenario& s) -> double& { return s.weights.D3; }},
        {"solver.tolerance", [](Scenario& s) -> double& { return s.settings.tolerance; }},
        {"solver.relaxation", [](Scenario& s) -> double& { return s.settings.relaxation; }},
    };
    return slots;
}

// Order of keys in the canonical text form.
constexpr std::array<std::string_view, 20> double_key_order = {
    "model.nu",   "model.rho",  "model.delta", "initial.s",  "initial.e",  "initial.i",        "initial.r",
    "weights.B",  "weights.C1", "weights.C2",  "weights.C3", "weights.D",  "weights.K1",       "weights.K2",
    "weights.K3", "weights.D1", "weights.D2",  "weights.D3", "solver.tolerance", "solver.relaxation",
};

Scenario sir_fig2()
{
    Scenario s;
    s.strategy = StrategyTag::SirVaccination;
    s.nu       = 0.2;
    s.delta    = 0.1;
    s.initial  = {0.95, 0.0, 0.05, 0.0};
    return s;
}

Scenario seir_fig5()
{
    Scenario s;
    s.strategy = StrategyTag::SeirVaccination;
    s.nu       = 0.2;
    s.rho      = 0.1887;
    s.delta    = 0.1;
    s.initial  = {0.88, 0.07, 0.05, 0.0};
    return s;
}

void write_text(const fs::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error("cannot open " + path.string() + " for writing");
    }
    out << text;
    out.close();
    if (!out) {
        throw Error("failed writing " + path.string());
    }
}

std::vector<std::string> state_columns(ModelFamily family)
{
    if (family == ModelFamily::Sir) {
        return {"s", "i", "r"};
    }
    return {"s", "e", "i", "r"};
}

std::vector<std::string> control_columns(std::size_t n)
{
    if (n == 1) {
        return {"eta"};
    }
    return {"eta1", "eta2"};
}

std::string trajectory_csv(const Trajectory& traj, const std::vector<std::string>& columns)
{
    std::string out = "t";
    for (const auto& c : columns) {
        out += ',';
        out += c;
    }
    out += '\n';
    for (std::size_t k = 0; k < traj.size(); ++k) {
        out += format_double(traj.grid().node(k));
        for (double v : traj[k]) {
            out += ',';
            out += format_double(v);
        }
        out += '\n';
    }
    return out;
}

std::string summary_text(const RunSummary& s)
{
    std::string out;
    out += "strategy = " + std::string(to_string(s.strategy)) + "\n";
    out += "objective = " + format_double(s.objective) + "\n";
    out += "iterations = " + std::to_string(s.iterations) + "\n";
    out += "converged = " + std::string(s.converged ? "true" : "false") + "\n";
    out += "peak_infected = " + format_double(s.peak_infected) + "\n";
    out += "peak_time = " + format_double(s.peak_time) + "\n";
    out += "final_recovered = " + format_double(s.final_recovered) + "\n";
    return out;
}

std::string plot_script(const Scenario& scenario)
{
    const auto columns = state_columns(scenario.family());
    const bool controlled = control_count(scenario.strategy) > 0;
    std::ostringstream py;
    py << "#!/usr/bin/env python3\n"
       << "# Overlays the controlled and uncontrolled compartments of this run.\n"
       << "import csv\n"
       << "import os\n"
       << "import matplotlib\n"
       << "matplotlib.use('Agg')\n"
       << "import matplotlib.pyplot as plt\n\n"
       << "here = os.path.dirname(os.path.abspath(__file__))\n\n"
       << "def load(name):\n"
       << "    with open(os.path.join(here, name)) as f:\n"
       << "        rows = list(csv.DictReader(f))\n"
       << "    return {k: [float(r[k]) for r in rows] for k in rows[0]}\n\n"
       << "state = load('state.csv')\n"
       << "baseline = load('baseline.csv')\n"
       << "label = '" << to_string(scenario.strategy) << "'\n\n"
       << "for name in [";
    for (std::size_t j = 0; j < columns.size(); ++j) {
        py << (j ? ", " : "") << "'" << columns[j] << "'";
    }
    py << "]:\n"
       << "    plt.figure()\n"
       << "    plt.plot(baseline['t'], baseline[name], 'k--', label='without control')\n"
       << "    plt.plot(state['t'], state[name], label=label)\n"
       << "    plt.xlabel('time (days)')\n"
       << "    plt.ylabel(name + '(t)')\n"
       << "    plt.legend()\n"
       << "    plt.savefig(os.path.join(here, name + '.png'), dpi=150)\n"
       << "    plt.close()\n";
    if (controlled) {
        py << "\ncontrols = load('controls.csv')\n"
           << "plt.figure()\n"
           << "for name in [k for k in controls if k != 't']:\n"
           << "    plt.plot(controls['t'], controls[name], label=name)\n"
           << "plt.xlabel('time (days)')\n"
           << "plt.ylim(-0.05, 1.05)\n"
           << "plt.legend()\n"
           << "plt.savefig(os.path.join(here, 'controls.png'), dpi=150)\n"
           << "plt.close()\n";
    }
    return py.str();
}

} // namespace

std::string format_double(double v)
{
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc()) {
        throw Error("cannot format number");
    }
    return std::string(buf.data(), ptr);
}

Strategy Scenario::to_strategy() const
{
    const auto& w = weights;
    if (family() == ModelFamily::Sir) {
        const SirParams p{nu, delta};
        switch (strategy) {
        case StrategyTag::SirVaccination:
            return Strategy::sir_vaccination(p, {w.B});
        case StrategyTag::SirTreatmentEducation:
            return Strategy::sir_treatment_education(p, {w.C1, w.C2, w.C3});
        default:
            return Strategy::sir_uncontrolled(p);
        }
    }
    const SeirParams p{nu, rho, delta};
    switch (strategy) {
    case StrategyTag::SeirVaccination:
        return Strategy::seir_vaccination(p, {w.D});
    case StrategyTag::SeirVaccinationExposedWeighted:
        return Strategy::seir_vaccination_exposed_weighted(p, {w.K1, w.K2, w.K3});
    case StrategyTag::SeirTreatmentEducation:
        return Strategy::seir_treatment_education(p, {w.D1, w.D2, w.D3});
    default:
        return Strategy::seir_uncontrolled(p);
    }
}

Vec Scenario::initial_state() const
{
    if (family() == ModelFamily::Sir) {
        return {initial.s, initial.i, initial.r};
    }
    return {initial.s, initial.e, initial.i, initial.r};
}

void Scenario::validate() const
{
    Scenario copy = *this;
    for (auto key : double_key_order) {
        const double v = double_slots().find(key)->second(copy);
        if (!std::isfinite(v)) {
            throw ValidationError(std::string(key), "must be finite");
        }
        if (key.starts_with("model.") || key.starts_with("initial.")) {
            if (v < 0.0) {
                throw ValidationError(std::string(key), "must be nonnegative");
            }
        }
        else if (key.starts_with("weights.") || key == "solver.tolerance") {
            if (!(v > 0.0)) {
                throw ValidationError(std::string(key), "must be strictly positive");
            }
        }
    }
    if (!(settings.relaxation > 0.0) || settings.relaxation > 1.0) {
        throw ValidationError("solver.relaxation", "must lie in (0,1]");
    }
    if (settings.max_iterations == 0) {
        throw ValidationError("solver.max_iterations", "must be positive");
    }
    if (settings.grid.t0() != 0.0) {
        throw ValidationError("solver.tf", "grids start at t = 0");
    }
    if (family() == ModelFamily::Sir && initial.e != 0.0) {
        throw ValidationError("initial.e", "the SIR model has no exposed class");
    }
    const double sum = initial.s + initial.e + initial.i + initial.r;
    if (std::abs(sum - 1.0) > simplex_tolerance) {
        throw ValidationError("initial", "proportions sum to " + format_double(sum) + ", expected 1");
    }
}

std::vector<std::string_view> preset_names()
{
    return {"sir-fig2", "seir-fig5"};
}

std::optional<Scenario> preset(std::string_view name)
{
    if (name == "sir-fig2") {
        return sir_fig2();
    }
    if (name == "seir-fig5") {
        return seir_fig5();
    }
    return std::nullopt;
}

Scenario parse_scenario(std::string_view text)
{
    std::vector<std::pair<std::string, std::string>> entries;
    std::map<std::string, int, std::less<>> seen;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl        = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text                  = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ValidationError("line " + std::to_string(line_no), "expected key = value");
        }
        std::string key(trim(line.substr(0, eq)));
        std::string value(trim(line.substr(eq + 1)));
        if (seen[key]++ > 0) {
            throw ValidationError(key, "duplicate key");
        }
        entries.emplace_back(std::move(key), std::move(value));
    }

    Scenario scenario;
    for (const auto& [key, value] : entries) {
        if (key == "preset") {
            auto base = preset(value);
            if (!base) {
                throw ValidationError("preset", "unknown preset '" + value + "'");
            }
            scenario = *base;
        }
    }

    double tf           = scenario.settings.grid.tf();
    std::size_t n_steps = scenario.settings.grid.n_steps();
    for (const auto& [key, value] : entries) {
        if (key == "preset") {
            continue;
        }
        if (auto slot = double_slots().find(key); slot != double_slots().end()) {
            slot->second(scenario) = parse_number(key, value);
        }
        else if (key == "strategy") {
            auto tag = parse_strategy_tag(value);
            if (!tag) {
                throw ValidationError("strategy", "unknown strategy '" + value + "'");
            }
            scenario.strategy = *tag;
        }
        else if (key == "solver.max_iterations") {
            scenario.settings.max_iterations = parse_count(key, value);
        }
        else if (key == "solver.tf") {
            tf = parse_number(key, value);
        }
        else if (key == "solver.n_steps") {
            n_steps = parse_count(key, value);
        }
        else if (key == "output.dir") {
            scenario.output_dir = value;
        }
        else if (key == "output.plots") {
            scenario.emit_plots = parse_bool(key, value);
        }
        else {
            throw ValidationError(key, "unknown key");
        }
    }
    if (!(tf > 0.0)) {
        throw ValidationError("solver.tf", "must be positive");
    }
    if (n_steps == 0) {
        throw ValidationError("solver.n_steps", "must be positive");
    }
    scenario.settings.grid = TimeGrid(0.0, tf, n_steps);
    scenario.validate();
    return scenario;
}

Scenario load_scenario(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError(path.string(), "cannot open scenario file");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

std::string format_scenario(const Scenario& scenario)
{
    Scenario copy = scenario;
    std::string out;
    out += "strategy = " + std::string(to_string(scenario.strategy)) + "\n";
    for (auto key : double_key_order) {
        out += std::string(key) + " = " + format_double(double_slots().find(key)->second(copy)) + "\n";
    }
    out += "solver.max_iterations = " + std::to_string(scenario.settings.max_iterations) + "\n";
    out += "solver.tf = " + format_double(scenario.settings.grid.tf()) + "\n";
    out += "solver.n_steps = " + std::to_string(scenario.settings.grid.n_steps()) + "\n";
    out += "output.dir = " + scenario.output_dir + "\n";
    out += "output.plots = " + std::string(scenario.emit_plots ? "true" : "false") + "\n";
    return out;
}

Scenario resolve_scenario(std::string_view spec)
{
    const fs::path as_path{std::string(spec)};
    std::error_code ec;
    if (fs::is_regular_file(as_path, ec)) {
        return load_scenario(as_path);
    }
    const auto colon      = spec.find(':');
    const auto preset_name = spec.substr(0, colon);
    auto scenario         = preset(preset_name);
    if (!scenario) {
        throw ValidationError("scenario", "'" + std::string(spec) + "' is neither a file nor a preset");
    }
    if (colon != std::string_view::npos) {
        const auto tag = parse_strategy_tag(spec.substr(colon + 1));
        if (!tag) {
            throw ValidationError("strategy", "unknown strategy '" + std::string(spec.substr(colon + 1)) + "'");
        }
        if (family_of(*tag) != scenario->family()) {
            throw ValidationError("strategy", "strategy does not belong to the preset's model");
        }
        scenario->strategy = *tag;
    }
    return *scenario;
}

Outcome execute(const Scenario& scenario)
{
    scenario.validate();
    const Strategy strategy = scenario.to_strategy();
    const Vec x0            = scenario.initial_state();
    const TimeGrid& grid    = scenario.settings.grid;

    Trajectory baseline = solve_uncontrolled(strategy, x0, grid);
    std::optional<SolveReport> report;
    RunSummary summary;
    summary.strategy = strategy.tag();
    if (strategy.is_controlled()) {
        report             = solve(strategy, x0, scenario.settings);
        summary.objective  = report->objective;
        summary.iterations = report->iterations;
        summary.converged  = report->converged;
    }
    else {
        summary.objective = evaluate_objective(strategy, baseline, ControlTrajectory(grid, 0));
    }
    const Trajectory& state = report ? report->state : baseline;

    const std::size_t ii = infected_index(strategy.family());
    std::size_t peak_k   = 0;
    for (std::size_t k = 1; k < state.size(); ++k) {
        if (state[k][ii] > state[peak_k][ii]) {
            peak_k = k;
        }
    }
    summary.peak_infected   = state[peak_k][ii];
    summary.peak_time       = grid.node(peak_k);
    summary.final_recovered = state[state.size() - 1][recovered_index(strategy.family())];

    Trajectory state_copy = state;
    return Outcome{scenario, std::move(state_copy), std::move(baseline), std::move(report), summary};
}

fs::path resolve_output_dir(const Scenario& scenario)
{
    if (!scenario.output_dir.empty()) {
        return scenario.output_dir;
    }
    if (const char* env = std::getenv(output_dir_env); env != nullptr && *env != '\0') {
        return env;
    }
    return "epicontrol-out";
}

RunArtifacts run(const Scenario& scenario)
{
    const Outcome outcome = execute(scenario);

    RunArtifacts art;
    art.directory = resolve_output_dir(scenario);
    std::error_code ec;
    fs::create_directories(art.directory, ec);
    if (ec) {
        throw Error("cannot create output directory " + art.directory.string() + ": " + ec.message());
    }

    const auto columns = state_columns(scenario.family());
    art.state_csv      = art.directory / "state.csv";
    write_text(art.state_csv, trajectory_csv(outcome.state, columns));
    art.baseline_csv = art.directory / "baseline.csv";
    write_text(art.baseline_csv, trajectory_csv(outcome.baseline, columns));

    if (outcome.report) {
        art.controls_csv = art.directory / "controls.csv";
        write_text(*art.controls_csv,
                   trajectory_csv(outcome.report->controls, control_columns(outcome.report->controls.dimension())));
        std::vector<std::string> phi_columns;
        for (const auto& c : columns) {
            phi_columns.push_back("phi_" + c);
        }
        art.adjoint_csv = art.directory / "adjoint.csv";
        write_text(*art.adjoint_csv, trajectory_csv(outcome.report->adjoint, phi_columns));
    }

    art.summary_file = art.directory / "summary.txt";
    write_text(art.summary_file, summary_text(outcome.summary));
    art.scenario_echo = art.directory / "scenario.cfg";
    write_text(art.scenario_echo, format_scenario(scenario));
    if (scenario.emit_plots) {
        art.plot_script = art.directory / "plot.py";
        write_text(*art.plot_script, plot_script(scenario));
    }
    art.summary = outcome.summary;
    return art;
}

std::vector<ComparisonRow> compare(const std::vector<Scenario>& scenarios)
{
    for (const auto& s : scenarios) {
        const auto& first = scenarios.front();
        if (s.family() != first.family()) {
            throw ComparisonIncompatible("scenarios mix SIR and SEIR models");
        }
        if (!(s.initial == first.initial)) {
            throw ComparisonIncompatible("scenarios start from different initial states");
        }
        if (!(s.settings.grid == first.settings.grid)) {
            throw ComparisonIncompatible("scenarios use different time grids");
        }
    }

    std::vector<std::future<Outcome>> pending;
    pending.reserve(scenarios.size());
    for (const auto& s : scenarios) {
        pending.push_back(std::async(std::launch::async, [&s] { return execute(s); }));
    }
    std::vector<ComparisonRow> rows;
    rows.reserve(scenarios.size());
    for (auto& f : pending) {
        const RunSummary m = f.get().summary;
        rows.push_back({m.strategy, m.objective, m.peak_infected, m.peak_time, m.final_recovered, m.iterations,
                        m.converged});
    }
    return rows;
}

std::string format_comparison(const std::vector<ComparisonRow>& rows)
{
    std::ostringstream out;
    out << std::left << std::setw(36) << "strategy" << std::right << std::setw(14) << "objective" << std::setw(14)
        << "peak_i" << std::setw(11) << "peak_t" << std::setw(14) << "final_r" << std::setw(12) << "iterations"
        << std::setw(11) << "converged" << '\n';
    out << std::fixed;
    for (const auto& r : rows) {
        out << std::left << std::setw(36) << to_string(r.strategy) << std::right << std::setprecision(6)
            << std::setw(14) << r.objective << std::setw(14) << r.peak_infected << std::setprecision(2)
            << std::setw(11) << r.peak_time << std::setprecision(6) << std::setw(14) << r.final_recovered
            << std::setw(12) << r.iterations << std::setw(11) << (r.converged ? "yes" : "no") << '\n';
    }
    return out.str();
}

} // namespace epicontrol
