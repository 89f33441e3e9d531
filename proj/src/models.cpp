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
#include "epicontrol/models.hpp"
#include "epicontrol/errors.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace epicontrol
{

namespace
{

struct TagInfo {
    StrategyTag tag;
    std::string_view name;
    ModelFamily family;
    std::size_t n_controls;
};

constexpr std::array<TagInfo, 7> tag_table = {{
    {StrategyTag::SirUncontrolled, "sir-uncontrolled", ModelFamily::Sir, 0},
    {StrategyTag::SirVaccination, "sir-vaccination", ModelFamily::Sir, 1},
    {StrategyTag::SirTreatmentEducation, "sir-treatment-education", ModelFamily::Sir, 2},
    {StrategyTag::SeirUncontrolled, "seir-uncontrolled", ModelFamily::Seir, 0},
    {StrategyTag::SeirVaccination, "seir-vaccination", ModelFamily::Seir, 1},
    {StrategyTag::SeirVaccinationExposedWeighted, "seir-vaccination-exposed-weighted", ModelFamily::Seir, 1},
    {StrategyTag::SeirTreatmentEducation, "seir-treatment-education", ModelFamily::Seir, 2},
}};

const TagInfo& info(StrategyTag tag)
{
    for (const auto& row : tag_table) {
        if (row.tag == tag) {
            return row;
        }
    }
    throw std::logic_error("unknown strategy tag");
}

void check_arity(const Strategy& strategy, std::span<const double> controls)
{
    if (controls.size() != strategy.control_count()) {
        throw StrategyArityError(std::string(to_string(strategy.tag())) + " expects " +
                                 std::to_string(strategy.control_count()) + " control value(s), got " +
                                 std::to_string(controls.size()));
    }
}

void check_rate(double v, const char* name)
{
    if (!std::isfinite(v) || v < 0.0) {
        throw std::invalid_argument(std::string("model parameter ") + name + " must be finite and nonnegative");
    }
}

void check_weight(double v, const char* name)
{
    if (!std::isfinite(v) || !(v > 0.0)) {
        throw std::invalid_argument(std::string("cost weight ") + name + " must be strictly positive");
    }
}

// Vaccination / educational campaign flux s -> r, and treatment flux i -> r.
struct Fluxes {
    double vaccination = 0;
    double treatment   = 0;
};

Fluxes control_fluxes(StrategyTag tag, double s, double i, std::span<const double> u)
{
    switch (tag) {
    case StrategyTag::SirVaccination:
    case StrategyTag::SeirVaccination:
    case StrategyTag::SeirVaccinationExposedWeighted:
        return {u[0] * s, 0.0};
    case StrategyTag::SirTreatmentEducation:
    case StrategyTag::SeirTreatmentEducation:
        return {u[1] * s, u[0] * i};
    default:
        return {};
    }
}

} // namespace

std::string_view to_string(StrategyTag tag)
{
    return info(tag).name;
}

std::optional<StrategyTag> parse_strategy_tag(std::string_view name)
{
    for (const auto& row : tag_table) {
        if (row.name == name) {
            return row.tag;
        }
    }
    return std::nullopt;
}

ModelFamily family_of(StrategyTag tag)
{
    return info(tag).family;
}

std::size_t state_dimension(ModelFamily family)
{
    return family == ModelFamily::Sir ? 3 : 4;
}

std::size_t control_count(StrategyTag tag)
{
    return info(tag).n_controls;
}

StrategyTag uncontrolled_tag(ModelFamily family)
{
    return family == ModelFamily::Sir ? StrategyTag::SirUncontrolled : StrategyTag::SeirUncontrolled;
}

std::size_t infected_index(ModelFamily family)
{
    return family == ModelFamily::Sir ? 1 : 2;
}

std::size_t recovered_index(ModelFamily family)
{
    return family == ModelFamily::Sir ? 2 : 3;
}

SirState SirState::from_vector(std::span<const double> x)
{
    if (x.size() != 3) {
        throw std::invalid_argument("SIR state needs 3 components");
    }
    return {x[0], x[1], x[2]};
}

SeirState SeirState::from_vector(std::span<const double> x)
{
    if (x.size() != 4) {
        throw std::invalid_argument("SEIR state needs 4 components");
    }
    return {x[0], x[1], x[2], x[3]};
}

Strategy::Strategy(StrategyTag tag, ModelParams params, CostWeights weights)
    : m_tag(tag)
    , m_params(std::move(params))
    , m_weights(std::move(weights))
{
    if (family_of(tag) == ModelFamily::Sir) {
        const auto* p = std::get_if<SirParams>(&m_params);
        if (p == nullptr) {
            throw std::invalid_argument("SIR strategy needs SIR parameters");
        }
        check_rate(p->nu, "nu");
        check_rate(p->delta, "delta");
    }
    else {
        const auto* p = std::get_if<SeirParams>(&m_params);
        if (p == nullptr) {
            throw std::invalid_argument("SEIR strategy needs SEIR parameters");
        }
        check_rate(p->nu, "nu");
        check_rate(p->rho, "rho");
        check_rate(p->delta, "delta");
    }

    const auto weights_match = [&]() -> bool {
        switch (tag) {
        case StrategyTag::SirUncontrolled:
        case StrategyTag::SeirUncontrolled:
            return std::holds_alternative<NoWeights>(m_weights);
        case StrategyTag::SirVaccination:
            return std::holds_alternative<SirVaccinationWeights>(m_weights);
        case StrategyTag::SirTreatmentEducation:
            return std::holds_alternative<SirTreatmentEducationWeights>(m_weights);
        case StrategyTag::SeirVaccination:
            return std::holds_alternative<SeirVaccinationWeights>(m_weights);
        case StrategyTag::SeirVaccinationExposedWeighted:
            return std::holds_alternative<SeirExposedWeightedWeights>(m_weights);
        case StrategyTag::SeirTreatmentEducation:
            return std::holds_alternative<SeirTreatmentEducationWeights>(m_weights);
        }
        return false;
    };
    if (!weights_match()) {
        throw std::invalid_argument(std::string("cost weights do not match strategy ") + std::string(to_string(tag)));
    }

    std::visit(
        [](const auto& w) {
            using W = std::decay_t<decltype(w)>;
            if constexpr (std::is_same_v<W, SirVaccinationWeights>) {
                check_weight(w.B, "B");
            }
            else if constexpr (std::is_same_v<W, SirTreatmentEducationWeights>) {
                check_weight(w.C1, "C1");
                check_weight(w.C2, "C2");
                check_weight(w.C3, "C3");
            }
            else if constexpr (std::is_same_v<W, SeirVaccinationWeights>) {
                check_weight(w.D, "D");
            }
            else if constexpr (std::is_same_v<W, SeirExposedWeightedWeights>) {
                check_weight(w.K1, "K1");
                check_weight(w.K2, "K2");
                check_weight(w.K3, "K3");
            }
            else if constexpr (std::is_same_v<W, SeirTreatmentEducationWeights>) {
                check_weight(w.D1, "D1");
                check_weight(w.D2, "D2");
                check_weight(w.D3, "D3");
            }
        },
        m_weights);
}

Strategy Strategy::sir_uncontrolled(SirParams p)
{
    return {StrategyTag::SirUncontrolled, p, NoWeights{}};
}
Strategy Strategy::sir_vaccination(SirParams p, SirVaccinationWeights w)
{
    return {StrategyTag::SirVaccination, p, w};
}
Strategy Strategy::sir_treatment_education(SirParams p, SirTreatmentEducationWeights w)
{
    return {StrategyTag::SirTreatmentEducation, p, w};
}
Strategy Strategy::seir_uncontrolled(SeirParams p)
{
    return {StrategyTag::SeirUncontrolled, p, NoWeights{}};
}
Strategy Strategy::seir_vaccination(SeirParams p, SeirVaccinationWeights w)
{
    return {StrategyTag::SeirVaccination, p, w};
}
Strategy Strategy::seir_vaccination_exposed_weighted(SeirParams p, SeirExposedWeightedWeights w)
{
    return {StrategyTag::SeirVaccinationExposedWeighted, p, w};
}
Strategy Strategy::seir_treatment_education(SeirParams p, SeirTreatmentEducationWeights w)
{
    return {StrategyTag::SeirTreatmentEducation, p, w};
}

Strategy Strategy::uncontrolled() const
{
    return {uncontrolled_tag(family()), m_params, NoWeights{}};
}

Vec scale_population(std::span<const double> counts, double total)
{
    if (!(total > 0.0) || !std::isfinite(total)) {
        throw InconsistentPopulation("total population must be positive");
    }
    if (counts.size() != 3 && counts.size() != 4) {
        throw std::invalid_argument("expected (S,I,R) or (S,E,I,R) counts");
    }
    for (double c : counts) {
        if (!(c >= 0.0) || !std::isfinite(c)) {
            throw InconsistentPopulation("compartment counts must be finite and nonnegative");
        }
    }
    const double sum = std::accumulate(counts.begin(), counts.end(), 0.0);
    if (std::abs(sum - total) > 1e-9 * total) {
        throw InconsistentPopulation("compartment counts sum to " + std::to_string(sum) + ", not " +
                                     std::to_string(total));
    }
    Vec out(counts.size());
    for (std::size_t j = 0; j < counts.size(); ++j) {
        out[j] = counts[j] / total;
    }
    return out;
}

SirState sir_field(const SirState& x, std::span<const double> controls, const Strategy& strategy)
{
    if (strategy.family() != ModelFamily::Sir) {
        throw std::invalid_argument("sir_field called with an SEIR strategy");
    }
    check_arity(strategy, controls);
    const auto& p         = strategy.sir_params();
    const double infection = p.nu * x.s * x.i;
    const double recovery  = p.delta * x.i;
    const Fluxes c         = control_fluxes(strategy.tag(), x.s, x.i, controls);
    SirState dx{-infection - c.vaccination, infection - recovery - c.treatment, 0.0};
    // recovery + treatment + vaccination, written so that the components cancel exactly
    dx.r = -(dx.s + dx.i);
    return dx;
}

SeirState seir_field(const SeirState& x, std::span<const double> controls, const Strategy& strategy)
{
    if (strategy.family() != ModelFamily::Seir) {
        throw std::invalid_argument("seir_field called with an SIR strategy");
    }
    check_arity(strategy, controls);
    const auto& p          = strategy.seir_params();
    const double infection = p.nu * x.s * x.i;
    const double onset     = p.rho * x.e;
    const double recovery  = p.delta * x.i;
    const Fluxes c         = control_fluxes(strategy.tag(), x.s, x.i, controls);
    SeirState dx{-infection - c.vaccination, infection - onset, onset - recovery - c.treatment, 0.0};
    dx.r = -(dx.s + dx.e + dx.i);
    return dx;
}

Vec model_field(const Strategy& strategy, std::span<const double> x, std::span<const double> controls)
{
    if (strategy.family() == ModelFamily::Sir) {
        return sir_field(SirState::from_vector(x), controls, strategy).to_vector();
    }
    return seir_field(SeirState::from_vector(x), controls, strategy).to_vector();
}

double running_cost(const Strategy& strategy, std::span<const double> x, std::span<const double> u)
{
    check_arity(strategy, u);
    if (x.size() != strategy.state_dimension()) {
        throw std::invalid_argument("state dimension does not match strategy");
    }
    const double i = x[infected_index(strategy.family())];
    const auto& w  = strategy.weights();
    switch (strategy.tag()) {
    case StrategyTag::SirUncontrolled:
    case StrategyTag::SeirUncontrolled:
        return i;
    case StrategyTag::SirVaccination:
        return i + 0.5 * std::get<SirVaccinationWeights>(w).B * u[0] * u[0];
    case StrategyTag::SirTreatmentEducation: {
        const auto& c = std::get<SirTreatmentEducationWeights>(w);
        return c.C1 * i + 0.5 * c.C2 * u[0] * u[0] + 0.5 * c.C3 * u[1] * u[1];
    }
    case StrategyTag::SeirVaccination:
        return i + 0.5 * std::get<SeirVaccinationWeights>(w).D * u[0] * u[0];
    case StrategyTag::SeirVaccinationExposedWeighted: {
        const auto& k = std::get<SeirExposedWeightedWeights>(w);
        return k.K1 * x[1] + k.K2 * i + 0.5 * k.K3 * u[0] * u[0];
    }
    case StrategyTag::SeirTreatmentEducation: {
        const auto& d = std::get<SeirTreatmentEducationWeights>(w);
        return d.D1 * i + 0.5 * d.D2 * u[0] * u[0] + 0.5 * d.D3 * u[1] * u[1];
    }
    }
    return 0.0;
}

} // namespace epicontrol
