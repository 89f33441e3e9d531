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
#ifndef EPICONTROL_MODELS_HPP
#define EPICONTROL_MODELS_HPP

#include "epicontrol/integrator.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>

namespace epicontrol
{

enum class ModelFamily
{
    Sir,
    Seir,
};

/**
 * Which controlled system is active. The controlled variants move mass
 * s -> r (vaccination, educational campaign) and i -> r (treatment).
 */
enum class StrategyTag
{
    SirUncontrolled,
    SirVaccination,
    SirTreatmentEducation,
    SeirUncontrolled,
    SeirVaccination,
    SeirVaccinationExposedWeighted,
    SeirTreatmentEducation,
};

inline constexpr std::array<StrategyTag, 7> all_strategy_tags = {
    StrategyTag::SirUncontrolled,        StrategyTag::SirVaccination,
    StrategyTag::SirTreatmentEducation,  StrategyTag::SeirUncontrolled,
    StrategyTag::SeirVaccination,        StrategyTag::SeirVaccinationExposedWeighted,
    StrategyTag::SeirTreatmentEducation,
};

inline constexpr std::array<StrategyTag, 5> controlled_strategy_tags = {
    StrategyTag::SirVaccination,         StrategyTag::SirTreatmentEducation,
    StrategyTag::SeirVaccination,        StrategyTag::SeirVaccinationExposedWeighted,
    StrategyTag::SeirTreatmentEducation,
};

/// Kebab-case name, e.g. "seir-treatment-education".
std::string_view to_string(StrategyTag tag);
std::optional<StrategyTag> parse_strategy_tag(std::string_view name);

ModelFamily family_of(StrategyTag tag);
std::size_t state_dimension(ModelFamily family);
/// Number of control signals of the strategy: 0, 1 or 2.
std::size_t control_count(StrategyTag tag);
StrategyTag uncontrolled_tag(ModelFamily family);

struct SirParams {
    double nu    = 0.2; ///< infection rate, per day
    double delta = 0.1; ///< recovery rate, per day

    bool operator==(const SirParams&) const = default;
};

struct SeirParams {
    double nu    = 0.2;    ///< transmission rate, per day
    double rho   = 0.1887; ///< rate E -> I, per day
    double delta = 0.1;    ///< recovery rate, per day

    bool operator==(const SeirParams&) const = default;
};

using ModelParams = std::variant<SirParams, SeirParams>;

struct SirState {
    double s = 0, i = 0, r = 0;

    Vec to_vector() const
    {
        return {s, i, r};
    }
    static SirState from_vector(std::span<const double> x);
};

struct SeirState {
    double s = 0, e = 0, i = 0, r = 0;

    Vec to_vector() const
    {
        return {s, e, i, r};
    }
    static SeirState from_vector(std::span<const double> x);
};

// Objective weights, one struct per controlled strategy.
struct NoWeights {
    bool operator==(const NoWeights&) const = default;
};
/// J = int i + B/2 eta^2
struct SirVaccinationWeights {
    double B = 1;
    bool operator==(const SirVaccinationWeights&) const = default;
};
/// J = int C1 i + C2/2 eta1^2 + C3/2 eta2^2
struct SirTreatmentEducationWeights {
    double C1 = 1, C2 = 5, C3 = 5;
    bool operator==(const SirTreatmentEducationWeights&) const = default;
};
/// J = int i + D/2 eta^2
struct SeirVaccinationWeights {
    double D = 5;
    bool operator==(const SeirVaccinationWeights&) const = default;
};
/// J = int K1 e + K2 i + K3/2 eta^2
struct SeirExposedWeightedWeights {
    double K1 = 1, K2 = 5, K3 = 5;
    bool operator==(const SeirExposedWeightedWeights&) const = default;
};
/// J = int D1 i + D2/2 eta1^2 + D3/2 eta2^2
struct SeirTreatmentEducationWeights {
    double D1 = 1, D2 = 5, D3 = 5;
    bool operator==(const SeirTreatmentEducationWeights&) const = default;
};

using CostWeights = std::variant<NoWeights, SirVaccinationWeights, SirTreatmentEducationWeights,
                                 SeirVaccinationWeights, SeirExposedWeightedWeights, SeirTreatmentEducationWeights>;

/**
 * A fully specified controlled (or uncontrolled) system: dynamics, objective
 * weights and model parameters. Construction validates that the weight and
 * parameter types match the tag and that every value is admissible.
 */
class Strategy
{
public:
    Strategy(StrategyTag tag, ModelParams params, CostWeights weights);

    static Strategy sir_uncontrolled(SirParams p = {});
    static Strategy sir_vaccination(SirParams p = {}, SirVaccinationWeights w = {});
    static Strategy sir_treatment_education(SirParams p = {}, SirTreatmentEducationWeights w = {});
    static Strategy seir_uncontrolled(SeirParams p = {});
    static Strategy seir_vaccination(SeirParams p = {}, SeirVaccinationWeights w = {});
    static Strategy seir_vaccination_exposed_weighted(SeirParams p = {}, SeirExposedWeightedWeights w = {});
    static Strategy seir_treatment_education(SeirParams p = {}, SeirTreatmentEducationWeights w = {});

    StrategyTag tag() const noexcept
    {
        return m_tag;
    }
    ModelFamily family() const noexcept
    {
        return family_of(m_tag);
    }
    std::size_t state_dimension() const noexcept
    {
        return epicontrol::state_dimension(family());
    }
    std::size_t control_count() const noexcept
    {
        return epicontrol::control_count(m_tag);
    }
    bool is_controlled() const noexcept
    {
        return control_count() > 0;
    }
    const ModelParams& params() const noexcept
    {
        return m_params;
    }
    const CostWeights& weights() const noexcept
    {
        return m_weights;
    }
    const SirParams& sir_params() const
    {
        return std::get<SirParams>(m_params);
    }
    const SeirParams& seir_params() const
    {
        return std::get<SeirParams>(m_params);
    }

    /// Same model parameters, no controls.
    Strategy uncontrolled() const;

    bool operator==(const Strategy&) const = default;

private:
    StrategyTag m_tag;
    ModelParams m_params;
    CostWeights m_weights;
};

/// Divides raw counts (S,I,R) or (S,E,I,R) by the total population.
Vec scale_population(std::span<const double> counts, double total);

/// Right-hand side of the scaled SIR system under the strategy's controls.
SirState sir_field(const SirState& x, std::span<const double> controls, const Strategy& strategy);
SeirState seir_field(const SeirState& x, std::span<const double> controls, const Strategy& strategy);

/// Dispatches to sir_field / seir_field on plain vectors.
Vec model_field(const Strategy& strategy, std::span<const double> x, std::span<const double> controls);

/**
 * Integrand of the strategy's objective functional. The uncontrolled
 * strategies use the bare infection burden i(t).
 */
double running_cost(const Strategy& strategy, std::span<const double> x, std::span<const double> controls);

/// Index of i within the state vector of the family.
std::size_t infected_index(ModelFamily family);
std::size_t recovered_index(ModelFamily family);

} // namespace epicontrol

#endif // EPICONTROL_MODELS_HPP
