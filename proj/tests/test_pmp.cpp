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
#include "doctest.h"
#include "oracles.hpp"

#include "epicontrol/errors.hpp"
#include "epicontrol/pmp.hpp"

using namespace epicontrol;
using oracle::Slot;

TEST_CASE("adjoint_field constants at zero costate")
{
    const Strategy vacc = Strategy::sir_vaccination({0.2, 0.1}, {1.0});
    CHECK(adjoint_field(vacc, 0.0, Vec{0, 0, 0}, Vec{0.95, 0.05, 0}, Vec{0.3}) == Vec{0.0, -1.0, 0.0});

    const Strategy k = Strategy::seir_vaccination_exposed_weighted({0.2, 0.1887, 0.1}, {1.0, 5.0, 5.0});
    CHECK(adjoint_field(k, 0.0, Vec{0, 0, 0, 0}, Vec{0.88, 0.07, 0.05, 0}, Vec{0.5}) == Vec{0.0, -1.0, -5.0, 0.0});

    const Strategy te = Strategy::sir_treatment_education({0.2, 0.1}, {2.0, 5.0, 5.0});
    CHECK(adjoint_field(te, 0.0, Vec{0, 0, 0}, Vec{0.5, 0.2, 0.3}, Vec{0.1, 0.9}) == Vec{0.0, -2.0, 0.0});

    const Strategy se = Strategy::seir_treatment_education({0.2, 0.1887, 0.1}, {3.0, 5.0, 5.0});
    CHECK(adjoint_field(se, 0.0, Vec{0, 0, 0, 0}, Vec{0.5, 0.2, 0.1, 0.2}, Vec{0.1, 0.9}) ==
          Vec{0.0, 0.0, -3.0, 0.0});
}

TEST_CASE("equal costates cancel every difference term")
{
    oracle::Sampler sample(7);
    for (const auto& s : oracle::controlled_strategies()) {
        auto p = sample(s);
        for (double& v : p.phi) {
            v = 3.5;
        }
        const Vec d = adjoint_field(s, 0.0, p.phi, p.x, p.u);
        CHECK(d[0] == 0.0);
        CHECK(d.back() == 0.0);
        // phi . f telescopes to zero
        CHECK(hamiltonian(s, p.x, p.u, p.phi) == doctest::Approx(running_cost(s, p.x, p.u)).epsilon(1e-12));
    }
}

TEST_CASE("uncontrolled strategies have no optimality system")
{
    CHECK_THROWS_AS(adjoint_field(Strategy::sir_uncontrolled(), 0.0, Vec{0, 0, 0}, Vec{1, 0, 0}, Vec{}),
                    NoAdjointDefined);
    CHECK_THROWS_AS(characterize_control(Strategy::seir_uncontrolled(), Vec{1, 0, 0, 0}, Vec{0, 0, 0, 0}),
                    NoAdjointDefined);
}

TEST_CASE("characterize_control")
{
    const Strategy vacc = Strategy::sir_vaccination({0.2, 0.1}, {1.0});
    CHECK(characterize_control(vacc, Vec{0.5, 0.2, 0.3}, Vec{0, 0, 0}) == Vec{0.0});
    CHECK(characterize_control(vacc, Vec{0.5, 0.2, 0.3}, Vec{10, 0, 0}) == Vec{1.0});
    CHECK(characterize_control(vacc, Vec{0.5, 0.2, 0.3}, Vec{1, 0, 0}) == Vec{0.5});
    CHECK(characterize_control(vacc, Vec{0.5, 0.2, 0.3}, Vec{-4, 0, 0}) == Vec{0.0});

    for (const auto& s : oracle::controlled_strategies()) {
        const Vec u = characterize_control(s, oracle::paper_x0(s), Vec(s.state_dimension(), 0.0));
        CHECK(u == Vec(s.control_count(), 0.0));
    }

    const Strategy te = Strategy::seir_treatment_education({0.2, 0.1887, 0.1}, {1.0, 5.0, 5.0});
    const Vec u       = characterize_control(te, Vec{0.5, 0.1, 0.2, 0.2}, Vec{2.0, 0.0, 4.0, 1.0});
    CHECK(u[0] == doctest::Approx(0.2 / 5.0 * 3.0));
    CHECK(u[1] == doctest::Approx(0.5 / 5.0 * 1.0));
}

TEST_CASE("characterized controls stay in the unit box")
{
    oracle::Sampler sample(99);
    for (const auto& s : oracle::controlled_strategies()) {
        for (int n = 0; n < 300; ++n) {
            auto p = sample(s);
            for (double& v : p.phi) {
                v *= 50.0;
            }
            for (double u : characterize_control(s, p.x, p.phi)) {
                CHECK(u >= 0.0);
                CHECK(u <= 1.0);
            }
        }
    }
}

TEST_CASE("vaccination control is homogeneous in costate gap and weight")
{
    oracle::Sampler sample(5);
    for (int n = 0; n < 100; ++n) {
        const double scale = sample.uniform(0.1, 10.0);
        const double gap   = sample.uniform(-2.0, 4.0);
        const double B     = sample.uniform(0.5, 5.0);
        const Vec x{sample.uniform(0.0, 1.0), 0.0, 0.0};
        const auto a = characterize_control(Strategy::sir_vaccination({0.2, 0.1}, {B}), x, Vec{gap, 0.0, 0.0});
        const auto b = characterize_control(Strategy::sir_vaccination({0.2, 0.1}, {B * scale}), x,
                                            Vec{gap * scale, 0.0, 0.0});
        CHECK(a[0] == doctest::Approx(b[0]).epsilon(1e-12));
    }
}

TEST_CASE("hamiltonian")
{
    const Strategy vacc = Strategy::sir_vaccination({0.2, 0.1}, {1.0});
    CHECK(hamiltonian(vacc, Vec{0.95, 0.05, 0.0}, Vec{0.0}, Vec{0, 0, 0}) == 0.05);
    CHECK(hamiltonian(vacc, Vec{0.95, 0.05, 0.0}, Vec{0.1}, Vec{1, 1, 1}) == doctest::Approx(0.055).epsilon(1e-14));
    // distinct costates: 0.055 + 2*(-0.0095-0.095) + 0*(...) + (-1)*(0.005+0.095)
    CHECK(hamiltonian(vacc, Vec{0.95, 0.05, 0.0}, Vec{0.1}, Vec{2, 0, -1}) ==
          doctest::Approx(0.055 + 2 * (-0.1045) - 0.1).epsilon(1e-14));
}

TEST_CASE("optimality system is consistent with the hamiltonian")
{
    oracle::Sampler sample(424242);
    for (const auto& s : oracle::controlled_strategies()) {
        CAPTURE(to_string(s.tag()));
        for (int n = 0; n < 100; ++n) {
            const auto p = sample(s);
            const Vec adj = adjoint_field(s, 0.0, p.phi, p.x, p.u);
            const Vec f   = model_field(s, p.x, p.u);
            for (std::size_t j = 0; j < p.x.size(); ++j) {
                CHECK(oracle::relative_error(adj[j], -oracle::dH(s, p.x, p.u, p.phi, Slot::State, j)) < 1e-6);
                CHECK(oracle::relative_error(f[j], oracle::dH(s, p.x, p.u, p.phi, Slot::Costate, j)) < 1e-6);
            }

            // stationarity where the characterization is interior
            const Vec raw = unclamped_control(s, p.x, p.phi);
            const Vec u   = characterize_control(s, p.x, p.phi);
            for (std::size_t c = 0; c < u.size(); ++c) {
                if (raw[c] > 0.0 && raw[c] < 1.0) {
                    CHECK(std::abs(oracle::dH(s, p.x, u, p.phi, Slot::Control, c, 1e-3)) < 1e-10);
                }
            }
        }
    }
}
