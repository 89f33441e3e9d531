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
#include "epicontrol/fbs.hpp"
#include "epicontrol/errors.hpp"
#include "epicontrol/pmp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace epicontrol
{

namespace
{

constexpr double simplex_tolerance = 1e-9;

// Max over components of |new_j - old_j|_1 - tol*|new_j|_1.
double convergence_margin(const Trajectory& next, const Trajectory& prev, double tol)
{
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < next.dimension(); ++j) {
        double change = 0.0, norm = 0.0;
        for (std::size_t k = 0; k < next.size(); ++k) {
            change += std::abs(next[k][j] - prev[k][j]);
            norm += std::abs(next[k][j]);
        }
        worst = std::max(worst, change - tol * norm);
    }
    return worst;
}

} // namespace

void FbsSettings::validate() const
{
    if (!(tolerance > 0.0) || !std::isfinite(tolerance)) {
        throw std::invalid_argument("tolerance must be positive");
    }
    if (!(relaxation > 0.0) || relaxation > 1.0) {
        throw std::invalid_argument("relaxation must lie in (0,1]");
    }
    if (max_iterations == 0) {
        throw std::invalid_argument("max_iterations must be positive");
    }
}

void validate_initial_state(const Strategy& strategy, const Vec& x0)
{
    if (x0.size() != strategy.state_dimension()) {
        throw std::invalid_argument("initial state dimension does not match the model");
    }
    double sum = 0.0;
    for (double v : x0) {
        if (!std::isfinite(v) || v < 0.0) {
            throw std::invalid_argument("initial state components must be finite and nonnegative");
        }
        sum += v;
    }
    if (std::abs(sum - 1.0) > simplex_tolerance) {
        throw std::invalid_argument("initial state must sum to 1");
    }
}

double evaluate_objective(const Strategy& strategy, const Trajectory& state, const ControlTrajectory& controls)
{
    if (!(state.grid() == controls.grid())) {
        throw GridMismatch("state and controls live on different grids");
    }
    const std::size_t n = state.grid().n_steps();
    double sum          = 0.0;
    for (std::size_t k = 0; k <= n; ++k) {
        const double c = running_cost(strategy, state[k], controls[k]);
        sum += (k == 0 || k == n) ? 0.5 * c : c;
    }
    return sum * state.grid().h();
}

Trajectory simulate(const Strategy& strategy, const Vec& x0, const ControlTrajectory& controls)
{
    const StateField f = [&strategy](double, const Vec& x, const Vec& u) {
        return model_field(strategy, x, u);
    };
    return integrate_forward(f, x0, controls.grid(), controls);
}

Trajectory solve_adjoint(const Strategy& strategy, const Trajectory& state, const ControlTrajectory& controls)
{
    const AdjointField g = [&strategy](double t, const Vec& phi, const Vec& x, const Vec& u) {
        return adjoint_field(strategy, t, phi, x, u);
    };
    return integrate_backward(g, Vec(strategy.state_dimension(), 0.0), state.grid(), state, controls);
}

Trajectory solve_uncontrolled(const Strategy& strategy, const Vec& x0, const TimeGrid& grid)
{
    const Strategy baseline = strategy.uncontrolled();
    validate_initial_state(baseline, x0);
    return simulate(baseline, x0, ControlTrajectory(grid, 0));
}

SolveReport solve(const Strategy& strategy, const Vec& x0, const FbsSettings& settings)
{
    settings.validate();
    validate_initial_state(strategy, x0);
    if (!strategy.is_controlled()) {
        throw NoAdjointDefined("forward-backward sweep needs a controlled strategy");
    }

    const TimeGrid& grid = settings.grid;
    const std::size_t m  = strategy.control_count();
    const double theta   = settings.relaxation;

    ControlTrajectory controls(grid, m);
    Trajectory prev_state(grid, strategy.state_dimension());
    Trajectory prev_adjoint(grid, strategy.state_dimension());

    std::vector<double> history;
    bool converged         = false;
    std::size_t iterations = 0;

    while (iterations < settings.max_iterations) {
        ++iterations;
        Trajectory state   = simulate(strategy, x0, controls);
        Trajectory adjoint = solve_adjoint(strategy, state, controls);

        std::vector<Vec> blended(grid.n_nodes());
        for (std::size_t k = 0; k < grid.n_nodes(); ++k) {
            const Vec target = characterize_control(strategy, state[k], adjoint[k]);
            blended[k].resize(m);
            for (std::size_t c = 0; c < m; ++c) {
                blended[k][c] = clamp_unit(theta * target[c] + (1.0 - theta) * controls[k][c]);
            }
        }
        ControlTrajectory next(grid, std::move(blended));

        const double tol    = settings.tolerance;
        const double margin = std::max({convergence_margin(next, controls, tol),
                                        convergence_margin(state, prev_state, tol),
                                        convergence_margin(adjoint, prev_adjoint, tol)});
        history.push_back(margin);

        controls     = std::move(next);
        prev_state   = std::move(state);
        prev_adjoint = std::move(adjoint);
        if (margin <= 0.0) {
            converged = true;
            break;
        }
    }

    Trajectory state   = simulate(strategy, x0, controls);
    Trajectory adjoint = solve_adjoint(strategy, state, controls);
    const double j     = evaluate_objective(strategy, state, controls);
    return SolveReport{std::move(state), std::move(adjoint), std::move(controls), j, iterations, converged,
                       std::move(history)};
}

} // namespace epicontrol
