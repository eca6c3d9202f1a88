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
#ifndef VCDAS_BOUNDS_HPP
#define VCDAS_BOUNDS_HPP

#include "vcdas/random.hpp"
#include "vcdas/stats.hpp"

#include <cstddef>
#include <vector>

namespace vcdas
{

/// One draw of the random distances entering the average-rate upper bound,
/// under the edge-free (infinite plane) densities:
///   z      distance from the tagged user to its closest other user,
///   y      ordered distances from that interferer to its V nearest antennas,
///   x      ordered distances from the tagged user to its V nearest antennas,
///   omega  angles between the interferer-to-antenna and user-to-interferer directions.
struct BoundSample
{
    double z = 0.0;
    std::vector<double> y;
    std::vector<double> x;
    std::vector<double> omega;
};

/// The V smallest of L i.i.d. radii with CDF x^2, ascending.
///
/// Drawn by the sequential order-statistic construction
///   u_i = 1 - (1 - u_{i-1}) W_i^{1 / (L - i + 1)},  x_i = sqrt(u_i),
/// which has exactly the joint density of the V smallest of L draws in O(V).
std::vector<double> sample_ordered_distances(std::size_t L, std::size_t V, RandomStream &rng);

/// Minimum of K - 1 i.i.d. radii with CDF x^2; density (K-1)(1-x^2)^(K-2) 2x.
double sample_nearest_user_distance(std::size_t K, RandomStream &rng);

BoundSample sample_bound_point(std::size_t K, std::size_t L, std::size_t V, RandomStream &rng);

/// Normalized signal power sum_i x_i^-alpha and the single-interferer
/// interference lower bound sum_i a_i (y_i^2 + z^2 + 2 y_i z cos omega_i)^(-alpha/2),
/// where a_i are the MRT power fractions of the interferer's cell.
struct BoundTerms
{
    double signal = 0.0;
    double interference = 0.0;
};

BoundTerms evaluate_bound_sample(const BoundSample &sample, double alpha);

/// Monte Carlo estimate of E[log2(1 + signal / interference)], the upper
/// bound on the average user rate (interference limited, no noise term).
McEstimate estimate_upper_bound(std::size_t K, std::size_t L, std::size_t V, double alpha, std::size_t n_samples,
                                RandomStream &rng);

struct EntropyTerms
{
    McEstimate e_log_signal;
    McEstimate e_log_interference_lb;
};

/// E[log2 signal] and E[log2 interference lower bound] from the same draws.
EntropyTerms estimate_entropy_terms(std::size_t K, std::size_t L, std::size_t V, double alpha,
                                    std::size_t n_samples, RandomStream &rng);

} // namespace vcdas

#endif
