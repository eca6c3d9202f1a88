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
#ifndef VCDAS_MRT_HPP
#define VCDAS_MRT_HPP

#include "vcdas/geometry.hpp"
#include "vcdas/random.hpp"
#include "vcdas/specfun.hpp"
#include "vcdas/stats.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace vcdas
{

/// Fading-averaged share of an MRT precoder's power on the antenna with
/// gain `x`, given the gains `others` of the remaining antennas in the cell.
/// Returns exactly 1 when `others` is empty.
double upsilon(double x, std::span<const double> others);

/// Same quantity for antenna `l` of a cell described by its (already
/// perturbed) rates gamma^-2. Falls back to an equivalent integral
///   int_0^inf r_l / (r_l + t)^2 prod_{i != l} r_i / (r_i + t) dt
/// when the partial-fraction sum is ill-conditioned.
PartialFractionValue power_fraction(const HypoexpSpec &cell_rates, std::size_t l);

/// Power fractions a_l of one virtual cell. They sum to one.
std::vector<double> mrt_power_fractions(std::span<const double> cell_gains);

/// Everything needed to evaluate MRT rates for one topology: large-scale
/// gains, virtual cells and the transmit SNR P/N0 (linear).
///
/// Power fractions and the normalized interference of every user are
/// computed once on construction.
class MrtContext
{
public:
    MrtContext(LargeScaleGains gains, VirtualCellMap cells, double snr);

    const LargeScaleGains &gains() const { return gains_; }
    const VirtualCellMap &cells() const { return cells_; }
    double snr() const { return snr_; }
    std::size_t num_users() const { return cells_.num_users(); }

    /// gamma of user k towards each antenna of its own cell.
    std::vector<double> cell_gains(std::size_t k) const;
    std::span<const double> fractions(std::size_t j) const { return fractions_.at(j); }

    /// sum_{j != k} sum_{l in V_j} a_{j,l} gamma_{k,l}^2 (interference / P).
    double interference(std::size_t k) const { return interference_.at(k); }

private:
    LargeScaleGains gains_;
    VirtualCellMap cells_;
    double snr_;
    std::vector<std::vector<double>> fractions_;
    std::vector<double> interference_;
};

/// mu_k = ||gamma_k||^2 / (1/snr + interference(k)).
double average_sinr(const MrtContext &ctx, std::size_t k);

/// Closed-form ergodic rate in bits/s/Hz, with the cancellation diagnostics.
PartialFractionValue ergodic_rate_closed_form_detail(const MrtContext &ctx, std::size_t k);
double ergodic_rate_closed_form(const MrtContext &ctx, std::size_t k);

/// Sample mean of log2(1 + mu * sum_l beta_sq[l] |h_l|^2) over Rayleigh draws.
McEstimate hypoexp_rate_mc(std::span<const double> beta_sq, double mu, std::size_t n_samples, RandomStream &rng);

/// Monte Carlo counterpart of the closed form: randomizes only user k's own
/// channel, with interference at its fading-averaged power.
McEstimate ergodic_rate_mc(const MrtContext &ctx, std::size_t k, std::size_t n_samples, RandomStream &rng);

/// Sensitivity mode: every user's channel and MRT precoder is drawn and the
/// instantaneous interference enters the SINR. Not part of the analytic model.
McEstimate instantaneous_rate_mc(const MrtContext &ctx, std::size_t k, std::size_t n_samples, RandomStream &rng);

} // namespace vcdas

#endif
