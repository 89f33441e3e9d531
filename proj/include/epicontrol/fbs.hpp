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
#ifndef EPICONTROL_FBS_HPP
#define EPICONTROL_FBS_HPP

#include "epicontrol/integrator.hpp"
#include "epicontrol/models.hpp"

#include <cstddef>
#include <vector>

namespace epicontrol
{

struct FbsSettings {
    double tolerance           = 1e-3; ///< relative L1 change accepted per signal
    std::size_t max_iterations = 200;
    double relaxation          = 0.3; ///< weight of the new characterization in the control update
    TimeGrid grid{0.0, 100.0, 1000};

    /// Throws std::invalid_argument on tolerance <= 0 or relaxation outside (0,1].
    void validate() const;

    bool operator==(const FbsSettings&) const = default;
};

struct SolveReport {
    Trajectory state;
    Trajectory adjoint;
    ControlTrajectory controls;
    double objective = 0;
    std::size_t iterations = 0;
    bool converged         = false;
    /**
     * One entry per sweep: max over signals of |new - old|_1 - tolerance*|new|_1.
     * A sweep passes the convergence test when its entry is <= 0.
     */
    std::vector<double> residual_history;
};

/// Trapezoidal quadrature of the strategy's running cost over the grid.
double evaluate_objective(const Strategy& strategy, const Trajectory& state, const ControlTrajectory& controls);

/// Forward integration of the strategy's dynamics under the given controls.
Trajectory simulate(const Strategy& strategy, const Vec& x0, const ControlTrajectory& controls);

/// Backward integration of the costates from phi(tf) = 0 along a frozen state.
Trajectory solve_adjoint(const Strategy& strategy, const Trajectory& state, const ControlTrajectory& controls);

/// Zero-control baseline of the strategy's model family.
Trajectory solve_uncontrolled(const Strategy& strategy, const Vec& x0, const TimeGrid& grid);

/**
 * Forward-backward sweep on the strategy's optimality system.
 *
 * Starts from zero controls. Each sweep integrates the state forward,
 * the costates backward from zero, characterizes the controls nodewise and
 * blends them into the previous iterate with weight settings.relaxation.
 * The sweep stops when every control, state and costate component changed
 * by at most tolerance times its own L1 norm. Hitting max_iterations yields
 * converged == false. The returned state, costates and objective are
 * recomputed for the returned controls.
 */
SolveReport solve(const Strategy& strategy, const Vec& x0, const FbsSettings& settings = {});

/// Checks that x0 has the family's dimension, nonnegative entries and unit sum.
void validate_initial_state(const Strategy& strategy, const Vec& x0);

} // namespace epicontrol

#endif // EPICONTROL_FBS_HPP
