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
#ifndef VCDAS_SPECFUN_HPP
#define VCDAS_SPECFUN_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace vcdas
{

/// Scaled exponential integral e^z * E1(z) for z > 0.
///
/// The product is formed directly (power series for z <= 1, continued
/// fraction otherwise) so it never overflows, even where e^z alone would.
double exp_e1(double z);

/// Upper incomplete gamma function Gamma(s, x). Only s = 1/2 is supported,
/// where Gamma(1/2, x) = sqrt(pi) * erfc(sqrt(x)).
double upper_incomplete_gamma(double s, double x);

/// Rates of a hypoexponential distribution (sum of independent exponentials).
///
/// Rates closer than a relative gap of 1e-6 make the partial-fraction forms
/// singular. On construction the i-th offending rate (in input order) is
/// multiplied by 1 + i * 1e-5; construction fails if that still leaves a
/// collision.
class HypoexpSpec
{
public:
    static constexpr double kMinRelativeGap = 1e-6;
    static constexpr double kPerturbationStep = 1e-5;

    explicit HypoexpSpec(std::vector<double> rates);

    std::span<const double> rates() const { return rates_; }
    std::size_t size() const { return rates_.size(); }
    bool perturbed() const { return perturbed_; }

    /// Partial-fraction coefficients prod_{q != l} r_q / (r_q - r_l).
    std::span<const double> weights() const { return weights_; }

private:
    std::vector<double> rates_;
    std::vector<double> weights_;
    bool perturbed_ = false;
};

double hypoexp_pdf(const HypoexpSpec &spec, double x);

/// A partial-fraction sum together with an estimate of its relative rounding
/// error. When the estimate is too large the value is recomputed from an
/// equivalent one-dimensional integral and `fallback` is set.
struct PartialFractionValue
{
    double value = 0.0;
    double cancellation = 0.0;
    bool fallback = false;
};

/// Above this relative error estimate partial-fraction sums switch to quadrature.
inline constexpr double kCancellationLimit = 1e-10;

/// E[ln(1 + mu X)] for X hypoexponential with the given rates:
///   sum_l w_l * exp_e1(r_l / mu).
/// Quadrature fallback: int_0^inf (1 - prod_i r_i / (r_i + mu t)) e^-t / t dt.
PartialFractionValue hypoexp_mean_log1p(const HypoexpSpec &spec, double mu);

/// Relative rounding error estimate of sum_l terms[l], where terms[l] carries
/// the partial-fraction coefficient for rates[l].
double partial_fraction_error(std::span<const double> rates, std::span<const double> terms);

namespace detail
{

/// Neumaier compensated summation.
class CompensatedSum
{
public:
    void add(double v);
    double value() const { return sum_ + carry_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

/// Adaptive Gauss-Kronrod over t in (0, inf) on a logarithmic axis t = e^s,
/// restricted to s in [log_lo, log_hi]. f receives t, and the Jacobian t is applied here.
template <class F>
double integrate_log_axis(F &&f, double log_lo, double log_hi);

} // namespace detail

} // namespace vcdas

#include "vcdas/detail/quadrature.hpp"

#endif
