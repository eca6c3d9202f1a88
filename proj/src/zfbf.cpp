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

#include "vcdas/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace vcdas
{

namespace
{

constexpr std::uint64_t kPhaseInterference = 1;
constexpr std::uint64_t kPhaseRate = 2;

void check_counts(std::size_t n_outer, std::size_t n_inner)
{
    if (n_outer < 1000 || n_inner < 1000)
        throw std::invalid_argument("zfbf_user_rates: need at least 1000 draws per phase");
}

} // namespace

namespace
{

using PivotedQr = Eigen::ColPivHouseholderQR<Eigen::MatrixXcd>;

// Factorizes H^H P = Q R. Returns false (with the status set) when the
// group must stay silent.
bool factor(const Eigen::MatrixXcd &channel, PivotedQr &qr, ZfStatus &status)
{
    if (!channel.allFinite())
        throw std::invalid_argument("zf_precoders: non-finite channel");
    status = ZfStatus::ok;
    if (channel.cols() < channel.rows())
    {
        status = ZfStatus::too_few_antennas;
        return false;
    }
    if (channel.rows() == 0)
        return false;
    qr.setThreshold(kZfRankTolerance);
    qr.compute(channel.adjoint());
    if (qr.rank() < channel.rows())
    {
        status = ZfStatus::rank_deficient;
        return false;
    }
    return true;
}

// R^-H, lower triangular.
Eigen::MatrixXcd r_inverse_adjoint(const PivotedQr &qr, Eigen::Index n)
{
    return qr.matrixR()
        .topLeftCorner(n, n)
        .triangularView<Eigen::Upper>()
        .adjoint()
        .solve(Eigen::MatrixXcd::Identity(n, n));
}

} // namespace

ZfPrecoders zf_precoders(const Eigen::MatrixXcd &channel)
{
    const Eigen::Index n_users = channel.rows();
    const Eigen::Index n_ant = channel.cols();

    ZfPrecoders out;
    out.w = Eigen::MatrixXcd::Zero(n_ant, n_users);
    out.unscaled_norms = Eigen::VectorXd::Zero(n_users);
    PivotedQr qr;
    if (!factor(channel, qr, out.status))
        return out;

    // pinv(H) = Q R^-H P^T
    Eigen::MatrixXcd f = Eigen::MatrixXcd::Zero(n_ant, n_users);
    f.topRows(n_users) = r_inverse_adjoint(qr, n_users);
    f.applyOnTheLeft(qr.householderQ());
    f = f * qr.colsPermutation().transpose();

    for (Eigen::Index k = 0; k < n_users; ++k)
    {
        const double norm = f.col(k).norm();
        out.unscaled_norms(k) = norm;
        out.w.col(k) = f.col(k) / norm;
    }
    return out;
}

Eigen::VectorXd zf_unscaled_norms(const Eigen::MatrixXcd &channel, ZfStatus *status)
{
    const Eigen::Index n_users = channel.rows();
    Eigen::VectorXd norms = Eigen::VectorXd::Zero(n_users);
    PivotedQr qr;
    ZfStatus st;
    const bool ok = factor(channel, qr, st);
    if (status)
        *status = st;
    if (!ok)
        return norms;
    // Q is unitary, so ||f_k|| is the norm of the matching column of R^-H.
    const Eigen::VectorXd permuted = r_inverse_adjoint(qr, n_users).colwise().norm().transpose();
    return qr.colsPermutation() * permuted;
}

std::vector<GroupChannel> group_channels(const GroupPartition &partition, const LargeScaleGains &gains)
{
    if (partition.groups.size() != partition.antenna_sets.size())
        throw std::invalid_argument("group_channels: malformed partition");
    std::vector<GroupChannel> out(partition.groups.size());
    std::vector<char> seen(gains.num_users(), 0);
    for (std::size_t m = 0; m < out.size(); ++m)
    {
        GroupChannel &g = out[m];
        g.index = m;
        g.members = partition.groups[m];
        g.antennas = partition.antenna_sets[m];
        g.gain_submatrix.resize(static_cast<Eigen::Index>(g.members.size()),
                                static_cast<Eigen::Index>(g.antennas.size()));
        for (std::size_t i = 0; i < g.members.size(); ++i)
        {
            const std::size_t k = g.members[i];
            if (k >= gains.num_users() || seen[k])
                throw std::invalid_argument("group_channels: partition does not match the gains");
            seen[k] = 1;
            for (std::size_t j = 0; j < g.antennas.size(); ++j)
            {
                if (g.antennas[j] >= gains.num_antennas())
                    throw std::invalid_argument("group_channels: antenna index out of range");
                g.gain_submatrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                    gains.gamma(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(g.antennas[j]));
            }
        }
    }
    for (char s : seen)
        if (!s)
            throw std::invalid_argument("group_channels: user missing from partition");
    return out;
}

Eigen::MatrixXcd draw_group_channel(const GroupChannel &group, RandomStream &rng)
{
    ComplexGaussian cn;
    Eigen::MatrixXcd h(group.gain_submatrix.rows(), group.gain_submatrix.cols());
    for (Eigen::Index i = 0; i < h.rows(); ++i)
        for (Eigen::Index j = 0; j < h.cols(); ++j)
            h(i, j) = group.gain_submatrix(i, j) * cn(rng);
    return h;
}

std::vector<double> estimate_intergroup_interference(const std::vector<GroupChannel> &groups,
                                                     const LargeScaleGains &gains, std::size_t n_outer,
                                                     std::uint64_t seed)
{
    std::vector<double> interference(gains.num_users(), 0.0);
    for (const auto &g : groups)
    {
        if (g.silent() || groups.size() < 2)
            continue;
        // E|w_{l,j}|^2 for each antenna of the group, summed over its users:
        // the average power the group radiates from antenna l.
        Eigen::VectorXd antenna_power = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(g.antennas.size()));
        RandomStream rng = make_stream(seed, {kPhaseInterference, g.index});
        for (std::size_t n = 0; n < n_outer; ++n)
        {
            const ZfPrecoders p = zf_precoders(draw_group_channel(g, rng));
            antenna_power += p.w.cwiseAbs2().rowwise().sum();
        }
        antenna_power /= static_cast<double>(n_outer);

        std::vector<char> member(gains.num_users(), 0);
        for (std::size_t k : g.members)
            member[k] = 1;
        for (std::size_t k = 0; k < gains.num_users(); ++k)
        {
            if (member[k])
                continue;
            for (std::size_t j = 0; j < g.antennas.size(); ++j)
            {
                const double gamma =
                    gains.gamma(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(g.antennas[j]));
                interference[k] += gamma * gamma * antenna_power(static_cast<Eigen::Index>(j));
            }
        }
    }
    return interference;
}

namespace
{

RateReport averaged_interference_rates(const std::vector<GroupChannel> &groups, const LargeScaleGains &gains,
                                       double snr, std::size_t n_outer, std::size_t n_inner, std::uint64_t seed)
{
    const std::vector<double> interference = estimate_intergroup_interference(groups, gains, n_outer, seed);
    std::vector<McEstimate> per_user(gains.num_users());
    for (const auto &g : groups)
    {
        if (g.silent())
            continue;
        std::vector<RunningStats> stats(g.members.size());
        RandomStream rng = make_stream(seed, {kPhaseRate, g.index});
        for (std::size_t n = 0; n < n_inner; ++n)
        {
            const Eigen::VectorXd norms = zf_unscaled_norms(draw_group_channel(g, rng));
            for (std::size_t i = 0; i < g.members.size(); ++i)
            {
                const double norm = norms(static_cast<Eigen::Index>(i));
                const double signal = norm > 0.0 ? 1.0 / (norm * norm) : 0.0;
                const double noise_plus_i = 1.0 + snr * interference[g.members[i]];
                stats[i].add(std::log2(1.0 + snr * signal / noise_plus_i));
            }
        }
        for (std::size_t i = 0; i < g.members.size(); ++i)
            per_user[g.members[i]] = stats[i].estimate();
    }
    return make_rate_report(per_user, "zfbf", seed);
}

RateReport instantaneous_interference_rates(const std::vector<GroupChannel> &groups, const LargeScaleGains &gains,
                                            double snr, std::size_t n_inner, std::uint64_t seed)
{
    const auto K = static_cast<Eigen::Index>(gains.num_users());
    const auto L = static_cast<Eigen::Index>(gains.num_antennas());
    std::vector<RunningStats> stats(gains.num_users());
    RandomStream rng = make_stream(seed, {kPhaseRate});
    ComplexGaussian cn;
    Eigen::MatrixXcd h(K, L);
    for (std::size_t n = 0; n < n_inner; ++n)
    {
        for (Eigen::Index k = 0; k < K; ++k)
            for (Eigen::Index l = 0; l < L; ++l)
                h(k, l) = gains.gamma(k, l) * cn(rng);

        Eigen::VectorXd signal = Eigen::VectorXd::Zero(K);
        Eigen::VectorXd interference = Eigen::VectorXd::Zero(K);
        for (const auto &g : groups)
        {
            if (g.silent())
                continue;
            const auto n_ant = static_cast<Eigen::Index>(g.antennas.size());
            const auto n_mem = static_cast<Eigen::Index>(g.members.size());
            Eigen::MatrixXcd rows_all(K, n_ant);
            for (Eigen::Index j = 0; j < n_ant; ++j)
                rows_all.col(j) = h.col(static_cast<Eigen::Index>(g.antennas[static_cast<std::size_t>(j)]));
            Eigen::MatrixXcd own(n_mem, n_ant);
            for (Eigen::Index i = 0; i < n_mem; ++i)
                own.row(i) = rows_all.row(static_cast<Eigen::Index>(g.members[static_cast<std::size_t>(i)]));
            const ZfPrecoders p = zf_precoders(own);
            const Eigen::MatrixXd leak = (rows_all * p.w).cwiseAbs2();
            Eigen::VectorXd from_group = leak.rowwise().sum();
            for (Eigen::Index i = 0; i < n_mem; ++i)
            {
                const auto k = static_cast<Eigen::Index>(g.members[static_cast<std::size_t>(i)]);
                const double norm = p.unscaled_norms(i);
                signal(k) = norm > 0.0 ? 1.0 / (norm * norm) : 0.0;
                from_group(k) = 0.0; // intra-group terms are nulled
            }
            interference += from_group;
        }
        for (Eigen::Index k = 0; k < K; ++k)
            stats[static_cast<std::size_t>(k)].add(std::log2(1.0 + snr * signal(k) / (1.0 + snr * interference(k))));
    }

    std::vector<McEstimate> per_user(gains.num_users());
    for (const auto &g : groups)
        if (!g.silent())
            for (std::size_t k : g.members)
                per_user[k] = stats[k].estimate();
    return make_rate_report(per_user, "zfbf-instantaneous", seed);
}

} // namespace

RateReport zfbf_user_rates(const GroupPartition &partition, const LargeScaleGains &gains, double snr,
                           std::size_t n_outer, std::size_t n_inner, RandomStream &rng, const ZfbfOptions &options)
{
    check_counts(n_outer, n_inner);
    if (!(snr >= 0.0) || !std::isfinite(snr))
        throw std::invalid_argument("zfbf_user_rates: snr must be finite and nonnegative");
    const std::vector<GroupChannel> groups = group_channels(partition, gains);
    const std::uint64_t seed = rng();

    RateReport report = options.instantaneous_interference
                            ? instantaneous_interference_rates(groups, gains, snr, n_inner, seed)
                            : averaged_interference_rates(groups, gains, snr, n_outer, n_inner, seed);

    GroupStats gs;
    gs.count = groups.size();
    for (const auto &g : groups)
    {
        gs.sizes.push_back(g.members.size());
        gs.max_size = std::max(gs.max_size, g.members.size());
        gs.silent += g.silent() ? 1 : 0;
    }
    report.groups = std::move(gs);
    return report;
}

} // namespace vcdas
