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
#ifndef EPICONTROL_INTEGRATOR_HPP
#define EPICONTROL_INTEGRATOR_HPP

#include <cstddef>
#include <functional>
#include <vector>

namespace epicontrol
{

using Vec = std::vector<double>;

/**
 * Uniform time grid with n_steps intervals on [t0, tf].
 * Node k sits at t0 + k*h, the last node is exactly tf.
 */
class TimeGrid
{
public:
    TimeGrid(double t0, double tf, std::size_t n_steps);

    double t0() const noexcept
    {
        return m_t0;
    }
    double tf() const noexcept
    {
        return m_tf;
    }
    std::size_t n_steps() const noexcept
    {
        return m_n_steps;
    }
    std::size_t n_nodes() const noexcept
    {
        return m_n_steps + 1;
    }
    double h() const noexcept
    {
        return (m_tf - m_t0) / static_cast<double>(m_n_steps);
    }
    double node(std::size_t k) const noexcept;

    bool operator==(const TimeGrid&) const = default;

private:
    double m_t0;
    double m_tf;
    std::size_t m_n_steps;
};

/**
 * Values of a d-dimensional signal at every node of a TimeGrid.
 * Used for states, adjoints and controls alike.
 */
class Trajectory
{
public:
    /// All-zero trajectory of the given dimension.
    Trajectory(TimeGrid grid, std::size_t dimension);
    /// Takes ownership of per-node values; throws if the shape or any value is invalid.
    Trajectory(TimeGrid grid, std::vector<Vec> values);

    const TimeGrid& grid() const noexcept
    {
        return m_grid;
    }
    std::size_t dimension() const noexcept
    {
        return m_dimension;
    }
    std::size_t size() const noexcept
    {
        return m_values.size();
    }
    const Vec& operator[](std::size_t k) const
    {
        return m_values[k];
    }
    Vec& operator[](std::size_t k)
    {
        return m_values[k];
    }
    const std::vector<Vec>& values() const noexcept
    {
        return m_values;
    }

    /// Series of one component over all nodes.
    Vec component(std::size_t j) const;

    /// Arithmetic mean of nodes k and k+1.
    Vec midpoint(std::size_t k) const;

    bool operator==(const Trajectory&) const = default;

private:
    TimeGrid m_grid;
    std::size_t m_dimension;
    std::vector<Vec> m_values;
};

/// Control signals sampled on the grid; every value lies in [0,1].
class ControlTrajectory : public Trajectory
{
public:
    ControlTrajectory(TimeGrid grid, std::size_t n_controls)
        : Trajectory(std::move(grid), n_controls)
    {
    }
    ControlTrajectory(TimeGrid grid, std::vector<Vec> values);

    static ControlTrajectory constant(const TimeGrid& grid, std::size_t n_controls, double value);
};

/// Frozen signals seen by a vector field at one instant.
struct FrozenSample {
    Vec state;
    Vec controls;
};

/// f(t, x, aux) -> dx/dt
using VectorField = std::function<Vec(double t, const Vec& x, const FrozenSample& aux)>;
/// aux_at(t)
using SampleAccessor = std::function<FrozenSample(double t)>;
/// g(t, phi, x(t), u(t)) -> dphi/dt
using AdjointField = std::function<Vec(double t, const Vec& phi, const Vec& x, const Vec& u)>;
/// f(t, x, u(t)) -> dx/dt
using StateField = std::function<Vec(double t, const Vec& x, const Vec& u)>;

/**
 * One classical RK4 step of signed size h starting at (t, x).
 * aux_at is queried at t, t+h/2 and t+h. `node` is only used to label a
 * divergence error.
 */
Vec rk4_step(const VectorField& f, double t, const Vec& x, const SampleAccessor& aux_at, double h,
             std::size_t node = 0);

/// Forward sweep from x0 at grid.t0(); controls at half steps are node averages.
Trajectory integrate_forward(const StateField& f, const Vec& x0, const TimeGrid& grid,
                             const ControlTrajectory& controls);

/// Backward sweep anchored at phi_f on the last node, with frozen state and controls.
Trajectory integrate_backward(const AdjointField& g, const Vec& phi_f, const TimeGrid& grid,
                              const Trajectory& state, const ControlTrajectory& controls);

} // namespace epicontrol

#endif // EPICONTROL_INTEGRATOR_HPP
