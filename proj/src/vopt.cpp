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
#include "vcdas/vopt.hpp"

#include "vcdas/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vcdas
{

double mean_nearest_user_distance(std::size_t K)
{
    if (K < 3)
        throw std::invalid_argument("mean_nearest_user_distance: need K >= 3");
    const double m = static_cast<double>(K - 2);
    const double prefactor = static_cast<double>(K - 1) / std::pow(m, 1.5);
    const double bracket = -std::sqrt(m) * std::exp(-m) + 0.5 * upper_incomplete_gamma(0.5, 0.0) -
                           0.5 * upper_incomplete_gamma(0.5, m);
    return prefactor * bracket;
}

double optimal_v_exact(std::size_t K, std::size_t L)
{
    if (L < 1)
        throw std::invalid_argument("optimal_v_exact: need L >= 1");
    const double d = mean_nearest_user_distance(K);
    return 0.25 * static_cast<double>(L) * d * d;
}

std::size_t optimal_v(std::size_t K, std::size_t L)
{
    if (K < 1 || L < 1)
        throw std::invalid_argument("optimal_v: need K >= 1 and L >= 1");
    // ceil(0.2 L / K) = ceil(L / (5 K))
    const std::size_t denom = 5 * K;
    return std::max<std::size_t>(1, (L + denom - 1) / denom);
}

VStarResult optimal_v_result(std::size_t K, std::size_t L)
{
    VStarResult r;
    r.mean_nn_distance = mean_nearest_user_distance(K);
    r.v_exact = optimal_v_exact(K, L);
    r.v_integer = static_cast<std::size_t>(std::ceil(std::max(r.v_exact, 1.0)));
    return r;
}

} // namespace vcdas
