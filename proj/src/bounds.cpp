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
#include "vcdas/bounds.hpp"

#include "vcdas/geometry.hpp"
#include "vcdas/mrt.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vcdas
{

namespace
{

// Uniform on (0, 1].
double open_uniform(RandomStream &rng)
{
    return 1.0 - uniform01(rng);
}

void check_bound_args(std::size_t K, std::size_t L, std::size_t V, double alpha, std::size_t n_samples)
{
    if (K < 2)
        throw std::invalid_argument("upper bound: need K >= 2");
    if (V < 1 || V > L)
        throw std::invalid_argument("upper bound: need 1 <= V <= L");
    if (!(alpha > 2.0) || !std::isfinite(alpha))
        throw std::invalid_argument("upper bound: alpha must be finite and greater than 2");
    if (n_samples < 1000)
        throw std::invalid_argument("upper bound: need at least 1000 samples");
}

} // namespace

std::vector<double> sample_ordered_distances(std::size_t L, std::size_t V, RandomStream &rng)
{
    if (V < 1 || V > L)
        throw std::invalid_argument("sample_ordered_distances: need 1 <= V <= L");
    std::vector<double> out(V);
    double survival = 1.0; // 1 - u_{i-1}
    for (std::size_t i = 0; i < V; ++i)
    {
        const double remaining = static_cast<double>(L - i);
        survival *= std::exp(std::log(open_uniform(rng)) / remaining);
        out[i] = std::sqrt(1.0 - survival);
    }
    return out;
}

double sample_nearest_user_distance(std::size_t K, RandomStream &rng)
{
    if (K < 2)
        throw std::invalid_argument("sample_nearest_user_distance: need K >= 2");
    const double survival = std::exp(std::log(open_uniform(rng)) / static_cast<double>(K - 1));
    return std::sqrt(1.0 - survival);
}

BoundSample sample_bound_point(std::size_t K, std::size_t L, std::size_t V, RandomStream &rng)
{
    BoundSample s;
    s.z = sample_nearest_user_distance(K, rng);
    s.y = sample_ordered_distances(L, V, rng);
    s.x = sample_ordered_distances(L, V, rng);
    s.omega.resize(V);
    for (double &w : s.omega)
        w = 2.0 * std::numbers::pi * uniform01(rng);
    return s;
}

BoundTerms evaluate_bound_sample(const BoundSample &s, double alpha)
{
    const std::size_t V = s.x.size();
    if (s.y.size() != V || s.omega.size() != V)
        throw std::invalid_argument("evaluate_bound_sample: inconsistent sample sizes");

    BoundTerms out;
    for (double x : s.x)
        out.signal += std::pow(std::max(x, kMinDistance), -alpha);

    std::vector<double> cell_gains(V);
    for (std::size_t i = 0; i < V; ++i)
        cell_gains[i] = path_gain(s.y[i], alpha);
    const auto fractions = mrt_power_fractions(cell_gains);
    const double z = std::max(s.z, kMinDistance);
    for (std::size_t i = 0; i < V; ++i)
    {
        const double d_sq = s.y[i] * s.y[i] + z * z + 2.0 * s.y[i] * z * std::cos(s.omega[i]);
        out.interference += fractions[i] * std::pow(std::max(d_sq, kMinDistance * kMinDistance), -0.5 * alpha);
    }
    return out;
}

McEstimate estimate_upper_bound(std::size_t K, std::size_t L, std::size_t V, double alpha, std::size_t n_samples,
                                RandomStream &rng)
{
    check_bound_args(K, L, V, alpha, n_samples);
    RunningStats stats;
    for (std::size_t n = 0; n < n_samples; ++n)
    {
        const BoundTerms t = evaluate_bound_sample(sample_bound_point(K, L, V, rng), alpha);
        stats.add(std::log2(1.0 + t.signal / t.interference));
    }
    return stats.estimate();
}

EntropyTerms estimate_entropy_terms(std::size_t K, std::size_t L, std::size_t V, double alpha,
                                    std::size_t n_samples, RandomStream &rng)
{
    check_bound_args(K, L, V, alpha, n_samples);
    RunningStats signal, interference;
    for (std::size_t n = 0; n < n_samples; ++n)
    {
        const BoundTerms t = evaluate_bound_sample(sample_bound_point(K, L, V, rng), alpha);
        signal.add(std::log2(t.signal));
        interference.add(std::log2(t.interference));
    }
    return {signal.estimate(), interference.estimate()};
}

} // namespace vcdas
