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
#include "epicontrol/pmp.hpp"
#include "epicontrol/errors.hpp"

#include <stdexcept>
#include <string>

namespace epicontrol
{

namespace
{

void check_shapes(const Strategy& strategy, std::span<const double> phi, std::span<const double> x,
                  std::span<const double> u)
{
    if (!strategy.is_controlled()) {
        throw NoAdjointDefined(std::string("no optimality system for ") + std::string(to_string(strategy.tag())));
    }
    const std::size_t n = strategy.state_dimension();
    if (phi.size() != n || x.size() != n) {
        throw std::invalid_argument("costate/state dimension does not match strategy");
    }
    if (u.size() != strategy.control_count()) {
        throw StrategyArityError("control count does not match strategy");
    }
}

// Coefficient of the infection burden in the running cost.
double infection_weight(const Strategy& strategy)
{
    const auto& w = strategy.weights();
    switch (strategy.tag()) {
    case StrategyTag::SirTreatmentEducation:
        return std::get<SirTreatmentEducationWeights>(w).C1;
    case StrategyTag::SeirVaccinationExposedWeighted:
        return std::get<SeirExposedWeightedWeights>(w).K2;
    case StrategyTag::SeirTreatmentEducation:
        return std::get<SeirTreatmentEducationWeights>(w).D1;
    default:
        return 1.0;
    }
}

Vec sir_adjoint(const Strategy& strategy, std::span<const double> phi, std::span<const double> x,
                std::span<const double> u)
{
    const auto& p = strategy.sir_params();
    const double s = x[0], i = x[1];
    const double a = infection_weight(strategy);

    Vec d(3, 0.0);
    if (strategy.tag() == StrategyTag::SirVaccination) {
        const double eta = u[0];
        d[0]             = p.nu * i * (phi[0] - phi[1]) + eta * (phi[0] - phi[2]);
        d[1]             = -a + p.nu * s * (phi[0] - phi[1]) + p.delta * (phi[1] - phi[2]);
    }
    else {
        const double treat = u[0], educ = u[1];
        d[0]               = p.nu * i * (phi[0] - phi[1]) + educ * (phi[0] - phi[2]);
        d[1] = -a + p.nu * s * (phi[0] - phi[1]) + p.delta * (phi[1] - phi[2]) + treat * (phi[1] - phi[2]);
    }
    // r does not enter H
    d[2] = 0.0;
    return d;
}

Vec seir_adjoint(const Strategy& strategy, std::span<const double> phi, std::span<const double> x,
                 std::span<const double> u)
{
    const auto& p = strategy.seir_params();
    const double s = x[0], i = x[2];
    const double a = infection_weight(strategy);
    const double exposed_weight =
        strategy.tag() == StrategyTag::SeirVaccinationExposedWeighted
            ? std::get<SeirExposedWeightedWeights>(strategy.weights()).K1
            : 0.0;

    const bool two_controls = strategy.control_count() == 2;
    const double treat      = two_controls ? u[0] : 0.0;
    const double to_removed = two_controls ? u[1] : u[0];

    Vec d(4, 0.0);
    d[0] = p.nu * i * (phi[0] - phi[1]) + to_removed * (phi[0] - phi[3]);
    d[1] = -exposed_weight + p.rho * (phi[1] - phi[2]);
    d[2] = -a + p.nu * s * (phi[0] - phi[1]) + p.delta * (phi[2] - phi[3]) + treat * (phi[2] - phi[3]);
    d[3] = 0.0;
    return d;
}

} // namespace

Vec adjoint_field(const Strategy& strategy, double /*t*/, std::span<const double> phi, std::span<const double> x,
                  std::span<const double> u)
{
    check_shapes(strategy, phi, x, u);
    if (strategy.family() == ModelFamily::Sir) {
        return sir_adjoint(strategy, phi, x, u);
    }
    return seir_adjoint(strategy, phi, x, u);
}

Vec unclamped_control(const Strategy& strategy, std::span<const double> x, std::span<const double> phi)
{
    const Vec no_controls(strategy.control_count(), 0.0);
    check_shapes(strategy, phi, x, no_controls);

    const auto& w = strategy.weights();
    switch (strategy.tag()) {
    case StrategyTag::SirVaccination:
        return {x[0] / std::get<SirVaccinationWeights>(w).B * (phi[0] - phi[2])};
    case StrategyTag::SirTreatmentEducation: {
        const auto& c = std::get<SirTreatmentEducationWeights>(w);
        return {x[1] / c.C2 * (phi[1] - phi[2]), x[0] / c.C3 * (phi[0] - phi[2])};
    }
    case StrategyTag::SeirVaccination:
        return {x[0] / std::get<SeirVaccinationWeights>(w).D * (phi[0] - phi[3])};
    case StrategyTag::SeirVaccinationExposedWeighted:
        return {x[0] / std::get<SeirExposedWeightedWeights>(w).K3 * (phi[0] - phi[3])};
    case StrategyTag::SeirTreatmentEducation: {
        const auto& d = std::get<SeirTreatmentEducationWeights>(w);
        return {x[2] / d.D2 * (phi[2] - phi[3]), x[0] / d.D3 * (phi[0] - phi[3])};
    }
    default:
        break;
    }
    throw NoAdjointDefined("uncontrolled strategy has no control characterization");
}

Vec characterize_control(const Strategy& strategy, std::span<const double> x, std::span<const double> phi)
{
    Vec u = unclamped_control(strategy, x, phi);
    for (double& v : u) {
        v = clamp_unit(v);
    }
    return u;
}

double hamiltonian(const Strategy& strategy, std::span<const double> x, std::span<const double> u,
                   std::span<const double> phi)
{
    if (phi.size() != strategy.state_dimension()) {
        throw std::invalid_argument("costate dimension does not match strategy");
    }
    double h       = running_cost(strategy, x, u);
    const Vec f    = model_field(strategy, x, u);
    for (std::size_t j = 0; j < f.size(); ++j) {
        h += phi[j] * f[j];
    }
    return h;
}

} // namespace epicontrol
