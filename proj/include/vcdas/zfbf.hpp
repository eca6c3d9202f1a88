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
#ifndef VCDAS_ZFBF_HPP
#define VCDAS_ZFBF_HPP

#include "vcdas/geometry.hpp"
#include "vcdas/grouping.hpp"
#include "vcdas/random.hpp"
#include "vcdas/report.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace vcdas
{

enum class ZfStatus
{
    ok,
    too_few_antennas, ///< fewer antennas than users: zero precoders by rule
    rank_deficient,   ///< channel rank below the user count: zero precoders, flagged
};

struct ZfPrecoders
{
    Eigen::MatrixXcd w;             ///< antennas x users, unit-norm columns (or zero)
    Eigen::VectorXd unscaled_norms; ///< ||f_k|| of the pseudo-inverse columns (0 when silent)
    ZfStatus status = ZfStatus::ok;
};

/// Rank tolerance relative to the largest pivot of the factorization.
inline constexpr double kZfRankTolerance = 1e-12;

/// Normalized pseudo-inverse precoders for a users x antennas channel.
/// Uses a column-pivoted QR of the conjugate transpose, so that
/// H * F = I with F = pinv(H); column k of w is f_k / ||f_k||.
ZfPrecoders zf_precoders(const Eigen::MatrixXcd &channel);

/// Only the norms ||f_k|| of the pseudo-inverse columns, zero when silent.
/// The effective gain of user k is g_k w_k = 1 / ||f_k||.
Eigen::VectorXd zf_unscaled_norms(const Eigen::MatrixXcd &channel, ZfStatus *status = nullptr);

/// Channel and serving antennas of one group.
struct GroupChannel
{
    std::size_t index = 0;
    std::vector<std::size_t> members;
    std::vector<std::size_t> antennas;
    Eigen::MatrixXd gain_submatrix; ///< |members| x |antennas| gamma values

    bool silent() const { return antennas.size() < members.size(); }
};

std::vector<GroupChannel> group_channels(const GroupPartition &partition, const LargeScaleGains &gains);

/// One small-scale fading draw of a group channel: gamma .* CN(0, 1).
Eigen::MatrixXcd draw_group_channel(const GroupChannel &group, RandomStream &rng);

struct ZfbfOptions
{
    /// Replace the fading-averaged inter-group interference by the
    /// instantaneous one of each joint draw. For sensitivity studies only.
    bool instantaneous_interference = false;
};

/// Fading-averaged inter-group interference I_k / P of every user, from
/// n_outer draws of each group's channel and precoders.
std::vector<double> estimate_intergroup_interference(const std::vector<GroupChannel> &groups,
                                                     const LargeScaleGains &gains, std::size_t n_outer,
                                                     std::uint64_t seed);

/// Per-user ergodic rates under group-wise ZFBF. The first phase estimates
/// the interference each user sees from the other groups, the second
/// averages log2(1 + snr |g_k w_k|^2 / (1 + snr I_k)) over the user's own
/// group channel. Users of groups with fewer antennas than users get rate 0.
/// Both counts must be at least 1000.
RateReport zfbf_user_rates(const GroupPartition &partition, const LargeScaleGains &gains, double snr,
                           std::size_t n_outer, std::size_t n_inner, RandomStream &rng,
                           const ZfbfOptions &options = {});

} // namespace vcdas

#endif
