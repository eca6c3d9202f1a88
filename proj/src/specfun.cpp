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
#include "vcdas/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace vcdas
{

namespace
{

constexpr double kEps = std::numeric_limits<double>::epsilon();

double relative_gap(double a, double b)
{
    return std::abs(a - b) / std::max(a, b);
}

// e^z E1(z) for 0 < z <= 1 from E1(z) = -gamma - ln z - sum_{n>=1} (-z)^n / (n n!).
double exp_e1_series(double z)
{
    double power = 1.0; // (-z)^n / n!
    double series = 0.0;
    for (int n = 1; n < 200; ++n)
    {
        power *= -z / n;
        const double term = power / n;
        series += term;
        if (std::abs(term) <= 1e-17 * std::abs(series))
            break;
    }
    return std::exp(z) * (-std::numbers::egamma - std::log(z) - series);
}

// e^z E1(z) for z > 1: modified Lentz evaluation of
// 1 / (z + 1 - 1^2 / (z + 3 - 2^2 / (z + 5 - ...))).
double exp_e1_continued_fraction(double z)
{
    constexpr double tiny = 1e-300;
    double b = z + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 100000; ++i)
    {
        const double an = -static_cast<double>(i) * static_cast<double>(i);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        const double del = c * d;
        h *= del;
        if (std::abs(del - 1.0) <= 2.0 * kEps)
            break;
    }
    return h;
}

} // namespace

double exp_e1(double z)
{
    if (!(z > 0.0))
        throw std::invalid_argument("exp_e1: argument must be positive");
    if (std::isinf(z))
        return 0.0;
    return z <= 1.0 ? exp_e1_series(z) : exp_e1_continued_fraction(z);
}

double upper_incomplete_gamma(double s, double x)
{
    if (s != 0.5)
        throw std::invalid_argument("upper_incomplete_gamma: only s = 1/2 is supported");
    if (!(x >= 0.0))
        throw std::invalid_argument("upper_incomplete_gamma: x must be nonnegative");
    return std::sqrt(std::numbers::pi) * std::erfc(std::sqrt(x));
}

HypoexpSpec::HypoexpSpec(std::vector<double> rates) : rates_(std::move(rates))
{
    if (rates_.empty())
        throw std::invalid_argument("HypoexpSpec: need at least one rate");
    for (double r : rates_)
        if (!(r > 0.0) || !std::isfinite(r))
            throw std::invalid_argument("HypoexpSpec: rates must be positive and finite");

    const std::size_t n = rates_.size();
    int offenders = 0;
    for (std::size_t i = 1; i < n; ++i)
    {
        const bool collides = std::any_of(rates_.begin(), rates_.begin() + static_cast<std::ptrdiff_t>(i),
                                          [&](double r) { return relative_gap(r, rates_[i]) < kMinRelativeGap; });
        if (collides)
        {
            ++offenders;
            rates_[i] *= 1.0 + offenders * kPerturbationStep;
            perturbed_ = true;
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (relative_gap(rates_[i], rates_[j]) < kMinRelativeGap)
                throw std::invalid_argument("HypoexpSpec: duplicate rates remain after perturbation");

    weights_.assign(n, 1.0);
    for (std::size_t l = 0; l < n; ++l)
        for (std::size_t q = 0; q < n; ++q)
            if (q != l)
                weights_[l] *= rates_[q] / (rates_[q] - rates_[l]);
}

double hypoexp_pdf(const HypoexpSpec &spec, double x)
{
    if (!(x >= 0.0))
        throw std::invalid_argument("hypoexp_pdf: x must be nonnegative");
    detail::CompensatedSum sum;
    for (std::size_t l = 0; l < spec.size(); ++l)
    {
        const double r = spec.rates()[l];
        sum.add(spec.weights()[l] * r * std::exp(-r * x));
    }
    return std::max(0.0, sum.value());
}

double partial_fraction_error(std::span<const double> rates, std::span<const double> terms)
{
    const std::size_t n = rates.size();
    detail::CompensatedSum sum;
    double weighted = 0.0;
    for (std::size_t l = 0; l < n; ++l)
    {
        sum.add(terms[l]);
        double amplification = static_cast<double>(n);
        for (std::size_t q = 0; q < n; ++q)
            if (q != l)
                amplification += (rates[q] + rates[l]) / std::abs(rates[q] - rates[l]);
        weighted += std::abs(terms[l]) * amplification;
    }
    const double total = std::abs(sum.value());
    if (total == 0.0)
        return weighted == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return kEps * weighted / total;
}

PartialFractionValue hypoexp_mean_log1p(const HypoexpSpec &spec, double mu)
{
    if (!(mu >= 0.0) || !std::isfinite(mu))
        throw std::invalid_argument("hypoexp_mean_log1p: mu must be finite and nonnegative");
    if (mu == 0.0)
        return {};

    const auto rates = spec.rates();
    const auto weights = spec.weights();
    std::vector<double> terms(rates.size());
    detail::CompensatedSum sum;
    for (std::size_t l = 0; l < rates.size(); ++l)
    {
        terms[l] = weights[l] * exp_e1(rates[l] / mu);
        sum.add(terms[l]);
    }

    PartialFractionValue out;
    out.value = sum.value();
    out.cancellation = partial_fraction_error(rates, terms);
    if (out.cancellation <= kCancellationLimit && std::isfinite(out.value))
        return out;

    // ln(1 + mu x) = int_0^inf (1 - e^{-mu x t}) e^{-t} / t dt, and the Laplace
    // transform of the hypoexponential law is prod_i r_i / (r_i + s).
    auto integrand = [&](double t)
    {
        double log_laplace = 0.0;
        for (double r : rates)
            log_laplace -= std::log1p(mu * t / r);
        return -std::expm1(log_laplace) * std::exp(-t) / t;
    };
    const double min_rate = *std::min_element(rates.begin(), rates.end());
    const double lo = std::min(0.0, std::log(min_rate / (mu * static_cast<double>(rates.size())))) - 40.0;
    out.value = detail::integrate_log_axis(integrand, lo, std::log(80.0));
    out.fallback = true;
    return out;
}

namespace detail
{

void CompensatedSum::add(double v)
{
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
        carry_ += (sum_ - t) + v;
    else
        carry_ += (v - t) + sum_;
    sum_ = t;
}

} // namespace detail

} // namespace vcdas
