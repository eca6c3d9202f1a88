// SPDX-License-Identifier: Apache-2.0
//
// vcdas - downlink rate analysis for virtual-cell distributed antenna systems
// Copyright (C) 2026 The vcdas authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
#include "vcdas/mrt.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <numbers>
#include <numeric>

using namespace vcdas;

namespace
{

Topology manual(std::vector<Point> users, std::vector<Point> bs)
{
    Topology t;
    t.users = std::move(users);
    t.bs = std::move(bs);
    return t;
}

MrtContext random_context(std::size_t K, std::size_t L, std::size_t V, std::uint64_t seed, double snr = 10.0)
{
    const Topology t = generate_topology(K, L, seed);
    return MrtContext(pairwise_gains(t, 4.0), form_virtual_cells(t, V), snr);
}

} // namespace

TEST_SUITE("mrt")
{
    TEST_CASE("upsilon special values")
    {
        CHECK(upsilon(3.7, {}) == 1.0);
        const double near[] = {1.0 + 1e-9};
        CHECK(upsilon(1.0, near) == doctest::Approx(0.5).epsilon(1e-4));
        const double two[] = {2.0};
        const double one[] = {1.0};
        CHECK(upsilon(1.0, two) == doctest::Approx(0.2827969).epsilon(1e-6));
        CHECK(upsilon(2.0, one) == doctest::Approx(0.7172031).epsilon(1e-6));
        CHECK(upsilon(1.0, two) + upsilon(2.0, one) == doctest::Approx(1.0).epsilon(1e-12));
        const double bad[] = {-1.0};
        CHECK_THROWS_AS(upsilon(1.0, bad), std::invalid_argument);
        CHECK_THROWS_AS(upsilon(0.0, {}), std::invalid_argument);
    }

    TEST_CASE("power fractions match the fading-average oracle")
    {
        const std::vector<std::vector<double>> cases{{1.0, 2.0}, {0.3, 1.0, 2.5}, {5.0, 4.0, 3.0, 2.0, 1.0}};
        std::uint64_t seed = 1;
        for (const auto &gains : cases)
        {
            const auto a = mrt_power_fractions(gains);
            const auto mc = oracle::mrt_fractions_mc(gains, 400000, seed++);
            for (std::size_t l = 0; l < gains.size(); ++l)
                CHECK(std::abs(a[l] - mc[l].estimate) < 4.0 * mc[l].std_error);
        }
        const auto a = mrt_power_fractions(std::vector<double>{1.0, 2.0});
        CHECK(a[0] == doctest::Approx(0.28280).epsilon(1e-4));
        CHECK(a[1] == doctest::Approx(0.71720).epsilon(1e-4));
    }

    TEST_CASE("power fractions sum to one and are scale invariant")
    {
        std::mt19937_64 rng(8);
        std::lognormal_distribution<double> spread(0.0, 1.5);
        double worst = 0.0;
        for (int trial = 0; trial < 1000; ++trial)
        {
            std::vector<double> gains(1 + trial % 8);
            for (double &g : gains)
                g = spread(rng);
            const auto a = mrt_power_fractions(gains);
            worst = std::max(worst, std::abs(std::accumulate(a.begin(), a.end(), 0.0) - 1.0));
            for (double v : a)
            {
                CHECK(v > 0.0);
                CHECK(v <= 1.0);
            }
            if (trial % 50 == 0)
            {
                std::vector<double> scaled = gains;
                for (double &g : scaled)
                    g *= 37.5;
                const auto b = mrt_power_fractions(scaled);
                for (std::size_t l = 0; l < a.size(); ++l)
                    CHECK(b[l] == doctest::Approx(a[l]).epsilon(1e-9));
            }
        }
        CHECK(worst < 1e-9);
        CHECK(mrt_power_fractions(std::vector<double>{2.0}) == std::vector<double>{1.0});
        for (double v : mrt_power_fractions(std::vector<double>{1.0, 1.0, 1.0}))
            CHECK(v == doctest::Approx(1.0 / 3.0).epsilon(1e-4));
        CHECK_THROWS_AS(mrt_power_fractions(std::vector<double>{}), std::invalid_argument);
    }

    TEST_CASE("average SINR")
    {
        const Topology single = manual({{0.5, 0.0}}, {{0.0, 0.0}, {-0.5, 0.0}});
        const LargeScaleGains g1 = pairwise_gains(single, 4.0);
        const MrtContext solo(g1, form_virtual_cells(single, 2), 10.0);
        CHECK(solo.interference(0) == 0.0);
        CHECK(average_sinr(solo, 0) == doctest::Approx(10.0 * (16.0 + 1.0)).epsilon(1e-12));

        // Two users at unit distance from the only antenna: gamma = 1 for both.
        const Topology pair = manual({{1.0, 0.0}, {-1.0, 0.0}}, {{0.0, 0.0}});
        const MrtContext ctx(pairwise_gains(pair, 4.0), form_virtual_cells(pair, 1), 10.0);
        CHECK(average_sinr(ctx, 0) == doctest::Approx(1.0 / 1.1).epsilon(1e-12));
        CHECK(average_sinr(ctx, 0) == doctest::Approx(0.9091).epsilon(1e-4));

        // Interference power by instantaneous simulation: |h_0 w_1|^2 with w_1 = h_1*/|h_1|.
        std::mt19937_64 rng(4);
        std::normal_distribution<double> n(0.0, std::sqrt(0.5));
        RunningStats power;
        for (int i = 0; i < 200000; ++i)
        {
            const std::complex<double> h0(n(rng), n(rng)), h1(n(rng), n(rng));
            power.add(std::norm(h0 * std::conj(h1) / std::abs(h1)));
        }
        CHECK(std::abs(power.mean() - ctx.interference(0)) < 4.0 * power.std_error());

        const MrtContext r = random_context(20, 40, 3, 5);
        for (std::size_t k = 0; k < 20; ++k)
        {
            const double mu = average_sinr(r, k);
            CHECK(mu > 0.0);
            CHECK(std::isfinite(mu));
        }
        CHECK_THROWS_AS(average_sinr(r, 20), std::out_of_range);
    }

    TEST_CASE("closed-form rate of a single antenna")
    {
        // V = 1, mu = 10: log2(e) * exp_e1(0.1).
        const Topology t = manual({{0.0, 0.0}}, {{1.0, 0.0}});
        const MrtContext ctx(pairwise_gains(t, 4.0), form_virtual_cells(t, 1), 10.0);
        CHECK(average_sinr(ctx, 0) == doctest::Approx(10.0));
        CHECK(ergodic_rate_closed_form(ctx, 0) == doctest::Approx(2.9066).epsilon(1e-4));
        const auto mc = oracle::hypoexp_rate_mc({1.0}, 10.0, 2000000, 31);
        CHECK(std::abs(ergodic_rate_closed_form(ctx, 0) - mc.estimate) < 3.0 * mc.std_error);

        RandomStream rng(6);
        const auto own = ergodic_rate_mc(ctx, 0, 200000, rng);
        CHECK(std::abs(own.estimate - 2.9066) < 3.0 * own.std_error);
    }

    TEST_CASE("closed form agrees with Monte Carlo on random contexts")
    {
        const MrtContext ctx = random_context(50, 100, 3, 2718);
        for (std::size_t k = 0; k < 50; k += 7)
        {
            RandomStream rng = make_stream(9, {k});
            const auto mc = ergodic_rate_mc(ctx, k, 200000, rng);
            const double cf = ergodic_rate_closed_form(ctx, k);
            CHECK(std::abs(cf - mc.estimate) <= 0.01 * cf);
            CHECK(std::abs(cf - mc.estimate) <= 3.0 * mc.std_error + 1e-12);
        }
    }

    TEST_CASE("rate limits and monotonicity")
    {
        RandomStream rng(1);
        const double beta[] = {0.6, 0.4};
        const auto zero = hypoexp_rate_mc(beta, 0.0, 1000, rng);
        CHECK(zero.estimate == 0.0);
        CHECK(zero.std_error == 0.0);

        const Topology t = generate_topology(30, 60, 12);
        const auto gains = pairwise_gains(t, 4.0);
        const auto cells = form_virtual_cells(t, 2);
        double prev_sum = -1.0;
        for (double snr_db = -10.0; snr_db <= 40.0; snr_db += 5.0)
        {
            const MrtContext ctx(gains, cells, std::pow(10.0, snr_db / 10.0));
            double sum = 0.0;
            for (std::size_t k = 0; k < 30; ++k)
                sum += ergodic_rate_closed_form(ctx, k);
            CHECK(sum >= prev_sum);
            prev_sum = sum;
        }

        // Low SNR: the rate is linear in the SNR and vanishes with it.
        const MrtContext weak(gains, cells, 1e-12);
        const MrtContext weaker(gains, cells, 1e-15);
        for (std::size_t k = 0; k < 30; ++k)
        {
            const double r = ergodic_rate_closed_form(weak, k);
            CHECK(r < 1e-4);
            CHECK(r == doctest::Approx(1e3 * ergodic_rate_closed_form(weaker, k)).epsilon(1e-2));
        }
    }

    TEST_CASE("Monte Carlo standard error scales as one over root n")
    {
        const double beta[] = {0.5, 0.3, 0.2};
        RandomStream a(100), b(200);
        const auto small = hypoexp_rate_mc(beta, 5.0, 100000, a);
        const auto large = hypoexp_rate_mc(beta, 5.0, 200000, b);
        CHECK(large.std_error / small.std_error == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(0.1));
        RandomStream c(100);
        CHECK(hypoexp_rate_mc(beta, 5.0, 100000, c).estimate == small.estimate);
        RandomStream d(1);
        const MrtContext ctx = random_context(5, 10, 1, 1);
        CHECK_THROWS_AS(ergodic_rate_mc(ctx, 0, 999, d), std::invalid_argument);
    }

    TEST_CASE("instantaneous mode")
    {
        const MrtContext ctx = random_context(10, 40, 2, 77);
        RandomStream rng(5);
        for (std::size_t k = 0; k < 3; ++k)
        {
            const auto inst = instantaneous_rate_mc(ctx, k, 20000, rng);
            CHECK(inst.estimate >= 0.0);
            CHECK(std::isfinite(inst.estimate));
        }
        // Without other users both modes reduce to the same expectation.
        const MrtContext solo = random_context(1, 10, 3, 78);
        const auto inst = instantaneous_rate_mc(solo, 0, 100000, rng);
        CHECK(std::abs(inst.estimate - ergodic_rate_closed_form(solo, 0)) < 3.0 * inst.std_error);
    }

    TEST_CASE("context rejects inconsistent inputs")
    {
        const Topology a = generate_topology(3, 5, 1);
        const Topology b = generate_topology(4, 5, 1);
        CHECK_THROWS_AS(MrtContext(pairwise_gains(a, 4.0), form_virtual_cells(b, 2), 10.0), std::invalid_argument);
        CHECK_THROWS_AS(MrtContext(pairwise_gains(a, 4.0), form_virtual_cells(a, 2), 0.0), std::invalid_argument);
    }
}
