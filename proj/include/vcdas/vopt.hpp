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
#ifndef VCDAS_VOPT_HPP
#define VCDAS_VOPT_HPP

#include <cstddef>

namespace vcdas
{

struct VStarResult
{
    double v_exact = 0.0;         ///< continuous optimum (L/4) * d^2
    std::size_t v_integer = 1;    ///< ceil(max(v_exact, 1))
    double mean_nn_distance = 0.0; ///< mean distance to the closest other user
};

/// Mean distance from a user to its closest other user, from the large-K
/// incomplete-gamma form
///   (K-1)/(K-2)^(3/2) * (-(K-2)^(1/2) e^-(K-2) + Gamma(1/2, 0)/2 - Gamma(1/2, K-2)/2).
/// Tends to sqrt(pi) / (2 sqrt(K)) as K grows. Requires K >= 3.
double mean_nearest_user_distance(std::size_t K);

/// (L / 4) * mean_nearest_user_distance(K)^2. Requires K >= 3, L >= 1.
double optimal_v_exact(std::size_t K, std::size_t L);

/// Rule of thumb ceil(0.2 L / K), never below 1. Evaluated in integers.
std::size_t optimal_v(std::size_t K, std::size_t L);

VStarResult optimal_v_result(std::size_t K, std::size_t L);

} // namespace vcdas

#endif
