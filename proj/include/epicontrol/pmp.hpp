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
#ifndef EPICONTROL_PMP_HPP
#define EPICONTROL_PMP_HPP

#include "epicontrol/models.hpp"

#include <span>

// Optimality system of the controlled epidemic models: costate dynamics,
// closed-form control characterization and the Hamiltonian they derive from.
//
// Costates are ordered like the state: (phi_s, phi_i, phi_r) for SIR and
// (phi_s, phi_e, phi_i, phi_r) for SEIR. Controls of the two-control
// strategies are ordered (treatment, educational campaign).

namespace epicontrol
{

/// dphi/dt = -dH/dx along the frozen state x and controls u.
Vec adjoint_field(const Strategy& strategy, double t, std::span<const double> phi, std::span<const double> x,
                  std::span<const double> u);

/// Minimizer of H over the control box [0,1]^m, i.e. the clamped root of dH/du.
Vec characterize_control(const Strategy& strategy, std::span<const double> x, std::span<const double> phi);

/// Same as characterize_control, before clamping.
Vec unclamped_control(const Strategy& strategy, std::span<const double> x, std::span<const double> phi);

/// H = running_cost(x, u) + phi . f(x, u)
double hamiltonian(const Strategy& strategy, std::span<const double> x, std::span<const double> u,
                   std::span<const double> phi);

inline double clamp_unit(double v)
{
    return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
}

} // namespace epicontrol

#endif // EPICONTROL_PMP_HPP
