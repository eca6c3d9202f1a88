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
#include "vcdas/zfbf.hpp"

#include "oracles.hpp"

#include <doctest.h>

using namespace vcdas;

namespace
{

Eigen::MatrixXcd random_channel(Eigen::Index n, Eigen::Index b, RandomStream &rng)
{
    ComplexGaussian cn;
    Eigen::MatrixXcd h(n, b);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < b; ++j)
            h(i, j) = cn(rng);
    return h;
}

// Pseudo-inverse through the normal equations, solved by LU.
Eigen::MatrixXcd pinv_oracle(const Eigen::MatrixXcd &h)
{
    const Eigen::MatrixXcd gram = h * h.adjoint();
    return h.adjoint() * gram.partialPivLu().inverse();
}

} // namespace

TEST_SUITE("zfbf")
{
    TEST_CASE("single antenna, single user is the matched filter")
    {
        Eigen::MatrixXcd g(1, 1);
        g(0, 0) = {0.3, -0.4};
        const ZfPrecoders p = zf_precoders(g);
        CHECK(p.status == ZfStatus::ok);
        const std::complex<double> expect = std::conj(g(0, 0)) / std::abs(g(0, 0));
        CHECK(std::abs(p.w(0, 0) - expect) < 1e-15);
        CHECK(p.unscaled_norms(0) == doctest::Approx(1.0 / 0.5));
    }

    TEST_CASE("more users than antennas gives zero precoders")
    {
        RandomStream rng(1);
        const ZfPrecoders p = zf_precoders(random_channel(2, 1, rng));
        CHECK(p.status == ZfStatus::too_few_antennas);
        CHECK(p.w.rows() == 1);
        CHECK(p.w.cols() == 2);
        CHECK(p.w.isZero(0.0));
        CHECK(p.unscaled_norms.isZero(0.0));
    }

    TEST_CASE("rank deficient channel is flagged and silenced")
    {
        RandomStream rng(2);
        Eigen::MatrixXcd h = random_channel(3, 5, rng);
        h.row(2) = h.row(0) * std::complex<double>(2.0, -1.0);
        const ZfPrecoders p = zf_precoders(h);
        CHECK(p.status == ZfStatus::rank_deficient);
        CHECK(p.w.isZero(0.0));
        ZfStatus st = ZfStatus::ok;
        CHECK(zf_unscaled_norms(h, &st).isZero(0.0));
        CHECK(st == ZfStatus::rank_deficient);

        Eigen::MatrixXcd bad = random_channel(2, 2, rng);
        bad(0, 0) = {NAN, 0.0};
        CHECK_THROWS_AS(zf_precoders(bad), std::invalid_argument);
    }

    TEST_CASE("3x5 realization matches the direct solve")
    {
        RandomStream rng(3);
        const Eigen::MatrixXcd h = random_channel(3, 5, rng);
        const ZfPrecoders p = zf_precoders(h);
        const Eigen::MatrixXcd f = pinv_oracle(h);
        for (Eigen::Index k = 0; k < 3; ++k)
        {
            CHECK(p.w.col(k).norm() == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(p.unscaled_norms(k) == doctest::Approx(f.col(k).norm()).epsilon(1e-10));
            CHECK((p.w.col(k) - f.col(k) / f.col(k).norm()).norm() < 1e-10);
        }
        const Eigen::MatrixXcd unscaled = p.w * p.unscaled_norms.asDiagonal();
        CHECK((h * unscaled - Eigen::MatrixXcd::Identity(3, 3)).norm() < 1e-10);
    }

    TEST_CASE("zero forcing residual and effective gain on random shapes")
    {
        RandomStream rng(4);
        double worst_cross = 0.0, worst_gain = 0.0, worst_norms = 0.0;
        for (int trial = 0; trial < 1000; ++trial)
        {
            const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng() % 8);
            const Eigen::Index b = n + static_cast<Eigen::Index>(rng() % 6);
            Eigen::MatrixXcd h = random_channel(n, b, rng);
            // Large-scale spread as in real groups.
            for (Eigen::Index j = 0; j < b; ++j)
                h.col(j) *= std::pow(10.0, -2.0 * uniform01(rng));
            const ZfPrecoders p = zf_precoders(h);
            REQUIRE(p.status == ZfStatus::ok);
            const Eigen::MatrixXcd hw = h * p.w;
            for (Eigen::Index k = 0; k < n; ++k)
            {
                const std::complex<double> own = hw(k, k);
                worst_gain = std::max(worst_gain, std::abs(own - 1.0 / p.unscaled_norms(k)) * p.unscaled_norms(k));
                CHECK(own.real() > 0.0);
                for (Eigen::Index j = 0; j < n; ++j)
                    if (j != k)
                        worst_cross = std::max(worst_cross, std::abs(hw(k, j)) / (h.row(k).norm() * p.w.col(j).norm()));
            }
            const Eigen::VectorXd norms = zf_unscaled_norms(h);
            worst_norms = std::max(worst_norms, ((norms - p.unscaled_norms).array() / norms.array()).abs().maxCoeff());
        }
        CHECK(worst_cross < 1e-9);
        CHECK(worst_gain < 1e-9);
        CHECK(worst_norms < 1e-12);
    }

    TEST_CASE("group channels follow the partition")
    {
        const Topology t = generate_topology(10, 20, 5);
        const LargeScaleGains gains = pairwise_gains(t, 4.0);
        const GroupPartition p = group_users(form_virtual_cells(t, 2));
        const auto groups = group_channels(p, gains);
        REQUIRE(groups.size() == p.num_groups());
        for (const auto &g : groups)
            for (std::size_t i = 0; i < g.members.size(); ++i)
                for (std::size_t j = 0; j < g.antennas.size(); ++j)
                    CHECK(g.gain_submatrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) ==
                          gains.gamma(static_cast<Eigen::Index>(g.members[i]), static_cast<Eigen::Index>(g.antennas[j])));
        GroupPartition broken = p;
        broken.groups[0].push_back(broken.groups[0][0]);
        CHECK_THROWS_AS(group_channels(broken, gains), std::invalid_argument);
    }

    TEST_CASE("single group sees no inter-group interference")
    {
        const Topology t = generate_topology(6, 12, 6);
        const LargeScaleGains gains = pairwise_gains(t, 4.0);
        const GroupPartition p = group_users(form_virtual_cells(t, 12));
        REQUIRE(p.num_groups() == 1);
        for (double i : estimate_intergroup_interference(group_channels(p, gains), gains, 1000, 1))
            CHECK(i == 0.0);
    }

    TEST_CASE("averaged interference matches direct simulation")
    {
        const Topology t = generate_topology(8, 16, 7);
        const LargeScaleGains gains = pairwise_gains(t, 4.0);
        const GroupPartition p = group_users(form_virtual_cells(t, 2));
        REQUIRE(p.num_groups() >= 2);
        const auto groups = group_channels(p, gains);
        const auto est = estimate_intergroup_interference(groups, gains, 20000, 3);

        // Brute force: draw every channel, form each group's precoders and
        // measure |h_k . w_j|^2 for users outside the group.
        RandomStream rng(99);
        ComplexGaussian cn;
        std::vector<RunningStats> power(8);
        for (int s = 0; s < 20000; ++s)
        {
            Eigen::MatrixXcd h(8, 16);
            for (Eigen::Index k = 0; k < 8; ++k)
                for (Eigen::Index l = 0; l < 16; ++l)
                    h(k, l) = gains.gamma(k, l) * cn(rng);
            std::vector<double> total(8, 0.0);
            for (const auto &g : groups)
            {
                if (g.silent())
                    continue;
                Eigen::MatrixXcd own(g.members.size(), g.antennas.size());
                for (std::size_t i = 0; i < g.members.size(); ++i)
                    for (std::size_t j = 0; j < g.antennas.size(); ++j)
                        own(i, j) = h(g.members[i], g.antennas[j]);
                const ZfPrecoders w = zf_precoders(own);
                for (std::size_t k = 0; k < 8; ++k)
                {
                    if (std::find(g.members.begin(), g.members.end(), k) != g.members.end())
                        continue;
                    for (Eigen::Index c = 0; c < w.w.cols(); ++c)
                    {
                        std::complex<double> y = 0.0;
                        for (std::size_t j = 0; j < g.antennas.size(); ++j)
                            y += h(k, g.antennas[j]) * w.w(j, c);
                        total[k] += std::norm(y);
                    }
                }
            }
            for (std::size_t k = 0; k < 8; ++k)
                power[k].add(total[k]);
        }
        for (std::size_t k = 0; k < 8; ++k)
            CHECK(std::abs(est[k] - power[k].mean()) < 4.0 * power[k].std_error() + 0.02 * est[k]);
    }

    TEST_CASE("rates: silent groups, determinism, nonnegativity")
    {
        const Topology t = generate_topology(20, 40, 8);
        const LargeScaleGains gains = pairwise_gains(t, 4.0);

        GroupPartition crowded;
        crowded.groups = {{0, 1, 2}};
        crowded.antenna_sets = {{0, 1}};
        for (std::size_t k = 3; k < 20; ++k)
        {
            crowded.groups.push_back({k});
            crowded.antenna_sets.push_back({k});
        }
        RandomStream rng(1);
        const RateReport r = zfbf_user_rates(crowded, gains, 10.0, 1000, 1000, rng);
        CHECK(r.user_rates[0] == 0.0);
        CHECK(r.user_rates[1] == 0.0);
        CHECK(r.user_rates[2] == 0.0);
        CHECK(r.groups->silent == 1);
        for (double v : r.user_rates)
            CHECK(v >= 0.0);

        const GroupPartition p = group_users(form_virtual_cells(t, 3));
        RandomStream a(5), b(5);
        const RateReport ra = zfbf_user_rates(p, gains, 10.0, 1000, 1000, a);
        const RateReport rb = zfbf_user_rates(p, gains, 10.0, 1000, 1000, b);
        CHECK(ra.user_rates == rb.user_rates);
        CHECK(ra.groups->count == p.num_groups());
        CHECK(ra.method == "zfbf");

        RandomStream c(6);
        CHECK_THROWS_AS(zfbf_user_rates(p, gains, 10.0, 999, 1000, c), std::invalid_argument);
        CHECK_THROWS_AS(zfbf_user_rates(p, gains, -1.0, 1000, 1000, c), std::invalid_argument);
    }

    TEST_CASE("single-group rate matches a direct simulation of the signal term")
    {
        const Topology t = generate_topology(4, 8, 9);
        const LargeScaleGains gains = pairwise_gains(t, 4.0);
        const GroupPartition p = group_users(form_virtual_cells(t, 8));
        RandomStream rng(2);
        const RateReport r = zfbf_user_rates(p, gains, 10.0, 1000, 50000, rng);

        RandomStream draw(77);
        ComplexGaussian cn;
        std::vector<RunningStats> rate(4);
        for (int s = 0; s < 50000; ++s)
        {
            Eigen::MatrixXcd h(4, 8);
            for (Eigen::Index k = 0; k < 4; ++k)
                for (Eigen::Index l = 0; l < 8; ++l)
                    h(k, l) = gains.gamma(k, l) * cn(draw);
            const Eigen::MatrixXcd f = pinv_oracle(h);
            for (Eigen::Index k = 0; k < 4; ++k)
                rate[static_cast<std::size_t>(k)].add(std::log2(1.0 + 10.0 / f.col(k).squaredNorm()));
        }
        for (std::size_t k = 0; k < 4; ++k)
        {
            const double se = std::hypot(r.user_std_errors[k], rate[k].std_error());
            CHECK(std::abs(r.user_rates[k] - rate[k].mean()) < 4.0 * se);
        }
    }

    TEST_CASE("instantaneous interference mode")
    {
        const Topology t = generate_topology(10, 20, 10);
        const LargeScaleGains gains = pairwise_gains(t, 4.0);
        const GroupPartition p = group_users(form_virtual_cells(t, 2));
        ZfbfOptions opt;
        opt.instantaneous_interference = true;
        RandomStream rng(3);
        const RateReport r = zfbf_user_rates(p, gains, 10.0, 1000, 2000, rng, opt);
        CHECK(r.method == "zfbf-instantaneous");
        for (double v : r.user_rates)
        {
            CHECK(v >= 0.0);
            CHECK(std::isfinite(v));
        }
    }
}
