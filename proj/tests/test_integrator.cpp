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
#include "epicontrol/fbs.hpp"
#include "epicontrol/integrator.hpp"
#include "epicontrol/pmp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

using namespace epicontrol;

namespace
{

const VectorField decay = [](double, const Vec& x, const FrozenSample&) { return Vec{-x[0]}; };
const VectorField zero_field = [](double, const Vec& x, const FrozenSample&) { return Vec(x.size(), 0.0); };
const SampleAccessor no_aux = [](double) { return FrozenSample{}; };

// Max error of RK4 against e^{-t} on [0,1] with n steps.
double decay_error(std::size_t n)
{
    const double h = 1.0 / static_cast<double>(n);
    Vec x{1.0};
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        x     = rk4_step(decay, static_cast<double>(k) * h, x, no_aux, h);
        worst = std::max(worst, std::abs(x[0] - std::exp(-static_cast<double>(k + 1) * h)));
    }
    return worst;
}

} // namespace

TEST_CASE("time grid nodes")
{
    const TimeGrid g(0.0, 100.0, 1000);
    CHECK(g.h() == doctest::Approx(0.1));
    CHECK(g.node(0) == 0.0);
    CHECK(g.node(1000) == 100.0);
    for (std::size_t k = 0; k < g.n_steps(); ++k) {
        CHECK(g.node(k) < g.node(k + 1));
    }
    CHECK_THROWS_AS(TimeGrid(0.0, 0.0, 10), std::invalid_argument);
    CHECK_THROWS_AS(TimeGrid(0.0, 1.0, 0), std::invalid_argument);
}

TEST_CASE("trajectory shape is enforced")
{
    const TimeGrid g(0.0, 1.0, 2);
    CHECK_THROWS_AS(Trajectory(g, std::vector<Vec>{{1.0}, {2.0}}), std::invalid_argument);
    CHECK_THROWS_AS(Trajectory(g, std::vector<Vec>{{1.0}, {2.0, 3.0}, {4.0}}), std::invalid_argument);
    CHECK_THROWS_AS(Trajectory(g, std::vector<Vec>{{1.0}, {std::nan("")}, {4.0}}), std::invalid_argument);
    CHECK_THROWS_AS(ControlTrajectory(g, std::vector<Vec>{{0.0}, {1.5}, {0.0}}), std::invalid_argument);
}

TEST_CASE("rk4_step on closed-form problems")
{
    SUBCASE("exponential decay reaches e^-1")
    {
        Vec x{1.0};
        const double h = 0.01;
        for (int k = 0; k < 100; ++k) {
            x = rk4_step(decay, k * h, x, no_aux, h);
        }
        CHECK(x[0] == doctest::Approx(std::exp(-1.0)).epsilon(1e-6));
        CHECK(std::abs(x[0] - 0.3678794) < 1e-6);
    }
    SUBCASE("zero field keeps the state")
    {
        const Vec x{0.3, -2.0, 7.5};
        CHECK(rk4_step(zero_field, 1.0, x, no_aux, 0.25) == x);
        CHECK(rk4_step(zero_field, 1.0, x, no_aux, -0.25) == x);
    }
    SUBCASE("constant field")
    {
        const VectorField one = [](double, const Vec&, const FrozenSample&) { return Vec{1.0}; };
        CHECK(rk4_step(one, 0.0, Vec{0.0}, no_aux, 0.1)[0] == 0.1);
    }
    SUBCASE("zero step is rejected")
    {
        CHECK_THROWS_AS(rk4_step(decay, 0.0, Vec{1.0}, no_aux, 0.0), std::invalid_argument);
    }
}

TEST_CASE("rk4_step queries aux at t, t+h/2 and t+h")
{
    std::vector<double> queried;
    const SampleAccessor spy = [&](double t) {
        queried.push_back(t);
        return FrozenSample{};
    };
    rk4_step(zero_field, 2.0, Vec{1.0}, spy, 0.5);
    REQUIRE(queried.size() == 4);
    CHECK(queried[0] == 2.0);
    CHECK(queried[1] == 2.25);
    CHECK(queried[2] == 2.25);
    CHECK(queried[3] == 2.5);
}

TEST_CASE("non-finite stage reports the node")
{
    const VectorField blowup = [](double, const Vec& x, const FrozenSample&) {
        return Vec{x[0] * std::numeric_limits<double>::max()};
    };
    try {
        rk4_step(blowup, 0.0, Vec{10.0}, no_aux, 1.0, 17);
        FAIL("expected IntegrationDiverged");
    }
    catch (const IntegrationDiverged& e) {
        CHECK(e.node() == 17);
    }
}

TEST_CASE("rk4 is fourth order")
{
    const double e1 = decay_error(10);
    const double e2 = decay_error(20);
    const double e3 = decay_error(40);
    CHECK(e1 / e2 >= 14.0);
    CHECK(e1 / e2 <= 18.0);
    CHECK(e2 / e3 >= 14.0);
    CHECK(e2 / e3 <= 18.0);
}

TEST_CASE("integrate_forward")
{
    const Strategy sir = Strategy::sir_uncontrolled({0.2, 0.1});
    const TimeGrid grid(0.0, 100.0, 1000);
    const ControlTrajectory none(grid, 0);
    const StateField f = [&](double, const Vec& x, const Vec& u) { return model_field(sir, x, u); };

    SUBCASE("SIR mass is conserved")
    {
        const auto traj = integrate_forward(f, oracle::sir_x0, grid, none);
        REQUIRE(traj.size() == 1001);
        CHECK(traj[0] == oracle::sir_x0);
        for (const auto& v : traj.values()) {
            CHECK(std::abs(v[0] + v[1] + v[2] - 1.0) <= 1e-9);
        }
    }
    SUBCASE("SIR peak matches the conserved-quantity oracle")
    {
        const auto traj    = integrate_forward(f, oracle::sir_x0, grid, none);
        const auto i       = traj.component(1);
        const double peak  = *std::max_element(i.begin(), i.end());
        const double exact = oracle::sir_peak_from_invariant(0.2, 0.1, 0.95, 0.05);
        CHECK(exact == doctest::Approx(0.179073).epsilon(1e-5));
        CHECK(std::abs(peak - exact) <= 0.002);
        CHECK(std::abs(peak - 0.179) <= 0.002);
    }
    SUBCASE("zero field gives a constant trajectory")
    {
        const StateField zero = [](double, const Vec& x, const Vec&) { return Vec(x.size(), 0.0); };
        const Vec x0{0.1, 0.2, 0.7};
        const auto traj = integrate_forward(zero, x0, grid, none);
        for (const auto& v : traj.values()) {
            CHECK(v == x0);
        }
    }
    SUBCASE("controls at half steps are node averages")
    {
        // dx/dt = u(t) with u linear in t integrates exactly under RK4 with midpoint averaging.
        const TimeGrid g(0.0, 1.0, 4);
        std::vector<Vec> u;
        for (std::size_t k = 0; k <= 4; ++k) {
            u.push_back({g.node(k)});
        }
        const StateField follow = [](double, const Vec&, const Vec& c) { return Vec{c[0]}; };
        const auto traj         = integrate_forward(follow, Vec{0.0}, g, ControlTrajectory(g, u));
        CHECK(traj[4][0] == doctest::Approx(0.5).epsilon(1e-14));
    }
    SUBCASE("grid mismatch")
    {
        CHECK_THROWS_AS(integrate_forward(f, oracle::sir_x0, grid, ControlTrajectory(TimeGrid(0, 50, 500), 0)),
                        GridMismatch);
    }
}

TEST_CASE("integrate_backward")
{
    const TimeGrid grid(0.0, 100.0, 1000);

    SUBCASE("zero field from zero stays zero")
    {
        const AdjointField g = [](double, const Vec& phi, const Vec&, const Vec&) { return Vec(phi.size(), 0.0); };
        const Trajectory state(grid, 3);
        const auto phi = integrate_backward(g, Vec(3, 0.0), grid, state, ControlTrajectory(grid, 0));
        for (const auto& v : phi.values()) {
            CHECK(v == Vec(3, 0.0));
        }
    }
    SUBCASE("vaccination costates are anchored and phi_r vanishes")
    {
        const Strategy s = Strategy::sir_vaccination({0.2, 0.1}, {1.0});
        const auto u     = ControlTrajectory::constant(grid, 1, 0.3);
        const auto x     = simulate(s, oracle::sir_x0, u);
        const AdjointField g = [&](double t, const Vec& phi, const Vec& xs, const Vec& us) {
            return adjoint_field(s, t, phi, xs, us);
        };
        const auto phi = integrate_backward(g, Vec(3, 0.0), grid, x, u);
        CHECK(phi[1000] == Vec{0.0, 0.0, 0.0});
        for (const auto& v : phi.values()) {
            CHECK(v[2] == 0.0);
        }
        // -1 source in the i-costate drives it positive backwards in time
        CHECK(phi[0][1] > 0.0);
    }
    SUBCASE("linear backward problem against the closed form")
    {
        // dphi/dt = phi - 1, phi(T) = 0  =>  phi(t) = 1 - e^{t-T}
        const TimeGrid g(0.0, 2.0, 200);
        const AdjointField lin = [](double, const Vec& phi, const Vec&, const Vec&) { return Vec{phi[0] - 1.0}; };
        const auto phi = integrate_backward(lin, Vec{0.0}, g, Trajectory(g, 1), ControlTrajectory(g, 0));
        for (std::size_t k = 0; k <= 200; k += 20) {
            CHECK(phi[k][0] == doctest::Approx(1.0 - std::exp(g.node(k) - 2.0)).epsilon(1e-9));
        }
    }
    SUBCASE("forward then backward over the zero field returns the anchors")
    {
        const Vec anchor{0.25, 0.5, 0.25};
        const StateField zf    = [](double, const Vec& x, const Vec&) { return Vec(x.size(), 0.0); };
        const AdjointField zg  = [](double, const Vec& p, const Vec&, const Vec&) { return Vec(p.size(), 0.0); };
        const ControlTrajectory none(grid, 0);
        const auto fwd = integrate_forward(zf, anchor, grid, none);
        const auto bwd = integrate_backward(zg, fwd[grid.n_steps()], grid, fwd, none);
        CHECK(bwd[0] == anchor);
        CHECK(fwd[grid.n_steps()] == anchor);
    }
}
