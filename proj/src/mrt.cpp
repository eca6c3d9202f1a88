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

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace vcdas
{

namespace
{

// (u - log1p(u)) / u^2, continuous at u = 0 where it equals 1/2.
double log1p_remainder(double u)
{
    if (std::abs(u) < 0.5)
    {
        // sum_{n>=0} (-u)^n / (n + 2)
        double power = 1.0;
        double sum = 0.0;
        for (int n = 0; n < 80; ++n)
        {
            const double term = power / (n + 2);
            sum += term;
            if (std::abs(term) < 1e-18)
                break;
            power *= -u;
        }
        return sum;
    }
    return (u - std::log1p(u)) / (u * u);
}

std::vector<double> inverse_square(std::span<const double> gains)
{
    std::vector<double> rates;
    rates.reserve(gains.size());
    for (double g : gains)
    {
        if (!(g > 0.0) || !std::isfinite(g))
            throw std::invalid_argument("MRT power fractions need positive finite gains");
        rates.push_back(1.0 / (g * g));
    }
    return rates;
}

void check_user(const MrtContext &ctx, std::size_t k)
{
    if (k >= ctx.num_users())
        throw std::out_of_range("MRT: user index out of range");
}

} // namespace

PartialFractionValue power_fraction(const HypoexpSpec &cell_rates, std::size_t l)
{
    const auto rates = cell_rates.rates();
    const std::size_t n = rates.size();
    if (l >= n)
        throw std::out_of_range("power_fraction: antenna index out of range");
    if (n == 1)
        return {1.0, 0.0, false};

    const double own = rates[l];
    std::vector<double> others;
    others.reserve(n - 1);
    for (std::size_t i = 0; i < n; ++i)
        if (i != l)
            others.push_back(rates[i]);

    // Each term: q phi(q - 1) prod_{t != m} mu_t / (mu_t - mu_m), with q = mu_m / own.
    std::vector<double> terms(others.size());
    detail::CompensatedSum sum;
    for (std::size_t m = 0; m < others.size(); ++m)
    {
        const double q = others[m] / own;
        double term = q * log1p_remainder(q - 1.0);
        for (std::size_t t = 0; t < others.size(); ++t)
            if (t != m)
                term *= others[t] / (others[t] - others[m]);
        terms[m] = term;
        sum.add(term);
    }

    PartialFractionValue out;
    out.value = sum.value();
    out.cancellation = partial_fraction_error(others, terms);
    if (out.cancellation <= kCancellationLimit && out.value >= 0.0 && out.value <= 1.0)
        return out;

    auto integrand = [&](double t)
    {
        double v = own / ((own + t) * (own + t));
        for (double r : others)
            v *= r / (r + t);
        return v;
    };
    const auto [lo, hi] = std::minmax_element(rates.begin(), rates.end());
    out.value = detail::integrate_log_axis(integrand, std::log(*lo) - 40.0, std::log(*hi) + 30.0);
    out.fallback = true;
    return out;
}

double upsilon(double x, std::span<const double> others)
{
    std::vector<double> gains;
    gains.reserve(others.size() + 1);
    gains.push_back(x);
    gains.insert(gains.end(), others.begin(), others.end());
    const HypoexpSpec spec(inverse_square(gains));
    return power_fraction(spec, 0).value;
}

std::vector<double> mrt_power_fractions(std::span<const double> cell_gains)
{
    if (cell_gains.empty())
        throw std::invalid_argument("mrt_power_fractions: empty cell");
    const HypoexpSpec spec(inverse_square(cell_gains));
    std::vector<double> out(cell_gains.size());
    for (std::size_t l = 0; l < out.size(); ++l)
        out[l] = power_fraction(spec, l).value;
    return out;
}

MrtContext::MrtContext(LargeScaleGains gains, VirtualCellMap cells, double snr)
    : gains_(std::move(gains)), cells_(std::move(cells)), snr_(snr)
{
    if (!(snr_ > 0.0) || !std::isfinite(snr_))
        throw std::invalid_argument("MrtContext: snr must be positive and finite");
    if (gains_.num_users() != cells_.num_users() || gains_.num_antennas() != cells_.num_antennas)
        throw std::invalid_argument("MrtContext: gains and virtual cells come from different topologies");

    const std::size_t K = num_users();
    fractions_.resize(K);
    for (std::size_t j = 0; j < K; ++j)
        fractions_[j] = mrt_power_fractions(cell_gains(j));

    interference_.assign(K, 0.0);
    for (std::size_t k = 0; k < K; ++k)
    {
        detail::CompensatedSum sum;
        for (std::size_t j = 0; j < K; ++j)
        {
            if (j == k)
                continue;
            const auto &cell = cells_.cells[j];
            for (std::size_t i = 0; i < cell.size(); ++i)
            {
                const double g = gains_.gamma(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(cell[i]));
                sum.add(fractions_[j][i] * g * g);
            }
        }
        interference_[k] = sum.value();
    }
}

std::vector<double> MrtContext::cell_gains(std::size_t k) const
{
    std::vector<double> out;
    out.reserve(cells_.cell_size);
    for (std::size_t l : cells_.cells.at(k))
        out.push_back(gains_.gamma(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)));
    return out;
}

double average_sinr(const MrtContext &ctx, std::size_t k)
{
    check_user(ctx, k);
    double signal = 0.0;
    for (double g : ctx.cell_gains(k))
        signal += g * g;
    return signal / (1.0 / ctx.snr() + ctx.interference(k));
}

PartialFractionValue ergodic_rate_closed_form_detail(const MrtContext &ctx, std::size_t k)
{
    check_user(ctx, k);
    // mu_k ||g~||^2 = X / c with X = sum_l gamma_l^2 |h_l|^2 hypoexponential
    // with rates gamma_l^-2, and c the normalized noise plus interference.
    const HypoexpSpec spec(inverse_square(ctx.cell_gains(k)));
    const double c = 1.0 / ctx.snr() + ctx.interference(k);
    PartialFractionValue out = hypoexp_mean_log1p(spec, 1.0 / c);
    out.value = std::max(0.0, out.value * std::numbers::log2e);
    return out;
}

double ergodic_rate_closed_form(const MrtContext &ctx, std::size_t k)
{
    return ergodic_rate_closed_form_detail(ctx, k).value;
}

McEstimate hypoexp_rate_mc(std::span<const double> beta_sq, double mu, std::size_t n_samples, RandomStream &rng)
{
    if (n_samples < 2)
        throw std::invalid_argument("hypoexp_rate_mc: need at least two samples");
    if (!(mu >= 0.0))
        throw std::invalid_argument("hypoexp_rate_mc: mu must be nonnegative");
    std::exponential_distribution<double> power(1.0);
    RunningStats stats;
    for (std::size_t s = 0; s < n_samples; ++s)
    {
        double x = 0.0;
        for (double b : beta_sq)
            x += b * power(rng);
        stats.add(std::log2(1.0 + mu * x));
    }
    return stats.estimate();
}

McEstimate ergodic_rate_mc(const MrtContext &ctx, std::size_t k, std::size_t n_samples, RandomStream &rng)
{
    check_user(ctx, k);
    if (n_samples < 1000)
        throw std::invalid_argument("ergodic_rate_mc: need at least 1000 samples");
    auto gains = ctx.cell_gains(k);
    double norm_sq = 0.0;
    for (double g : gains)
        norm_sq += g * g;
    std::vector<double> beta_sq;
    for (double g : gains)
        beta_sq.push_back(g * g / norm_sq);
    return hypoexp_rate_mc(beta_sq, average_sinr(ctx, k), n_samples, rng);
}

McEstimate instantaneous_rate_mc(const MrtContext &ctx, std::size_t k, std::size_t n_samples, RandomStream &rng)
{
    check_user(ctx, k);
    if (n_samples < 2)
        throw std::invalid_argument("instantaneous_rate_mc: need at least two samples");
    const auto &gamma = ctx.gains().gamma;
    const auto &cells = ctx.cells().cells;
    const std::size_t K = ctx.num_users();
    const std::size_t L = ctx.gains().num_antennas();
    const auto row = static_cast<Eigen::Index>(k);

    ComplexGaussian cn;
    std::vector<std::complex<double>> h_user(L);
    std::vector<std::complex<double>> w;
    RunningStats stats;
    for (std::size_t s = 0; s < n_samples; ++s)
    {
        // User k's small-scale fading towards every antenna.
        for (auto &h : h_user)
            h = cn(rng);
        double signal = 0.0;
        for (std::size_t l : cells[k])
            signal += std::norm(gamma(row, static_cast<Eigen::Index>(l)) * h_user[l]);

        double interference = 0.0;
        for (std::size_t j = 0; j < K; ++j)
        {
            if (j == k)
                continue;
            const auto &cell = cells[j];
            w.resize(cell.size());
            double norm_sq = 0.0;
            for (std::size_t i = 0; i < cell.size(); ++i)
            {
                w[i] = std::conj(gamma(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(cell[i])) * cn(rng));
                norm_sq += std::norm(w[i]);
            }
            const double inv_norm = 1.0 / std::sqrt(norm_sq);
            std::complex<double> received = 0.0;
            for (std::size_t i = 0; i < cell.size(); ++i)
                received += gamma(row, static_cast<Eigen::Index>(cell[i])) * h_user[cell[i]] * w[i] * inv_norm;
            interference += std::norm(received);
        }
        stats.add(std::log2(1.0 + signal / (1.0 / ctx.snr() + interference)));
    }
    return stats.estimate();
}

} // namespace vcdas
