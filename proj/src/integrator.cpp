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
#include "epicontrol/integrator.hpp"
#include "epicontrol/errors.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace epicontrol
{

namespace
{

bool all_finite(const Vec& v)
{
    for (double x : v) {
        if (!std::isfinite(x)) {
            return false;
        }
    }
    return true;
}

// x + a*k, checked
Vec axpy(const Vec& x, double a, const Vec& k, std::size_t node)
{
    if (k.size() != x.size()) {
        throw std::invalid_argument("vector field returned dimension " + std::to_string(k.size()) +
                                    ", expected " + std::to_string(x.size()));
    }
    Vec out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        out[j] = x[j] + a * k[j];
    }
    if (!all_finite(out)) {
        throw IntegrationDiverged(node);
    }
    return out;
}

Vec mean(const Vec& a, const Vec& b)
{
    Vec out(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) {
        out[j] = 0.5 * (a[j] + b[j]);
    }
    return out;
}

// Answers the three RK4 queries of one step from precomputed samples.
SampleAccessor step_sampler(double t, double h, const FrozenSample& start, const FrozenSample& mid,
                            const FrozenSample& end)
{
    return [=](double tq) -> FrozenSample {
        const double d0 = std::abs(tq - t);
        const double d1 = std::abs(tq - (t + 0.5 * h));
        const double d2 = std::abs(tq - (t + h));
        if (d0 <= d1 && d0 <= d2) {
            return start;
        }
        return d1 <= d2 ? mid : end;
    };
}

} // namespace

TimeGrid::TimeGrid(double t0, double tf, std::size_t n_steps)
    : m_t0(t0)
    , m_tf(tf)
    , m_n_steps(n_steps)
{
    if (!std::isfinite(t0) || !std::isfinite(tf) || !(tf > t0)) {
        throw std::invalid_argument("time grid requires finite t0 < tf");
    }
    if (n_steps == 0) {
        throw std::invalid_argument("time grid requires n_steps > 0");
    }
}

double TimeGrid::node(std::size_t k) const noexcept
{
    if (k >= m_n_steps) {
        return m_tf;
    }
    return m_t0 + static_cast<double>(k) * h();
}

Trajectory::Trajectory(TimeGrid grid, std::size_t dimension)
    : m_grid(grid)
    , m_dimension(dimension)
    , m_values(grid.n_nodes(), Vec(dimension, 0.0))
{
}

Trajectory::Trajectory(TimeGrid grid, std::vector<Vec> values)
    : m_grid(grid)
    , m_dimension(values.empty() ? 0 : values.front().size())
    , m_values(std::move(values))
{
    if (m_values.size() != m_grid.n_nodes()) {
        throw std::invalid_argument("trajectory has " + std::to_string(m_values.size()) + " nodes, grid has " +
                                    std::to_string(m_grid.n_nodes()));
    }
    for (std::size_t k = 0; k < m_values.size(); ++k) {
        if (m_values[k].size() != m_dimension) {
            throw std::invalid_argument("trajectory node " + std::to_string(k) + " has wrong dimension");
        }
        if (!all_finite(m_values[k])) {
            throw std::invalid_argument("trajectory node " + std::to_string(k) + " is not finite");
        }
    }
}

Vec Trajectory::component(std::size_t j) const
{
    Vec out;
    out.reserve(m_values.size());
    for (const auto& v : m_values) {
        out.push_back(v.at(j));
    }
    return out;
}

Vec Trajectory::midpoint(std::size_t k) const
{
    return mean(m_values.at(k), m_values.at(k + 1));
}

ControlTrajectory::ControlTrajectory(TimeGrid grid, std::vector<Vec> values)
    : Trajectory(std::move(grid), std::move(values))
{
    for (std::size_t k = 0; k < size(); ++k) {
        for (double u : (*this)[k]) {
            if (u < 0.0 || u > 1.0) {
                throw std::invalid_argument("control value outside [0,1] at node " + std::to_string(k));
            }
        }
    }
}

ControlTrajectory ControlTrajectory::constant(const TimeGrid& grid, std::size_t n_controls, double value)
{
    return ControlTrajectory(grid, std::vector<Vec>(grid.n_nodes(), Vec(n_controls, value)));
}

Vec rk4_step(const VectorField& f, double t, const Vec& x, const SampleAccessor& aux_at, double h,
             std::size_t node)
{
    if (h == 0.0) {
        throw std::invalid_argument("rk4_step requires a nonzero step");
    }
    const double half = 0.5 * h;
    const Vec k1      = f(t, x, aux_at(t));
    const Vec k2      = f(t + half, axpy(x, half, k1, node), aux_at(t + half));
    const Vec k3      = f(t + half, axpy(x, half, k2, node), aux_at(t + half));
    const Vec k4      = f(t + h, axpy(x, h, k3, node), aux_at(t + h));

    Vec out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        out[j] = x[j] + (h / 6.0) * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    }
    if (!all_finite(out)) {
        throw IntegrationDiverged(node);
    }
    return out;
}

Trajectory integrate_forward(const StateField& f, const Vec& x0, const TimeGrid& grid,
                             const ControlTrajectory& controls)
{
    if (!(controls.grid() == grid)) {
        throw GridMismatch("controls are not sampled on the integration grid");
    }
    const VectorField field = [&f](double t, const Vec& x, const FrozenSample& aux) {
        return f(t, x, aux.controls);
    };

    std::vector<Vec> values;
    values.reserve(grid.n_nodes());
    values.push_back(x0);
    const double h = grid.h();
    for (std::size_t k = 0; k < grid.n_steps(); ++k) {
        const double t = grid.node(k);
        const auto aux = step_sampler(t, h, {{}, controls[k]}, {{}, controls.midpoint(k)}, {{}, controls[k + 1]});
        values.push_back(rk4_step(field, t, values.back(), aux, h, k + 1));
    }
    return Trajectory(grid, std::move(values));
}

Trajectory integrate_backward(const AdjointField& g, const Vec& phi_f, const TimeGrid& grid,
                              const Trajectory& state, const ControlTrajectory& controls)
{
    if (!(state.grid() == grid) || !(controls.grid() == grid)) {
        throw GridMismatch("state or controls are not sampled on the integration grid");
    }
    const VectorField field = [&g](double t, const Vec& phi, const FrozenSample& aux) {
        return g(t, phi, aux.state, aux.controls);
    };

    const std::size_t n = grid.n_steps();
    std::vector<Vec> values(grid.n_nodes());
    values[n]      = phi_f;
    const double h = -grid.h();
    for (std::size_t k = n; k > 0; --k) {
        const double t = grid.node(k);
        const auto aux = step_sampler(t, h, {state[k], controls[k]}, {state.midpoint(k - 1), controls.midpoint(k - 1)},
                                      {state[k - 1], controls[k - 1]});
        values[k - 1] = rk4_step(field, t, values[k], aux, h, k - 1);
    }
    return Trajectory(grid, std::move(values));
}

} // namespace epicontrol
