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
#ifndef VCDAS_REPORT_HPP
#define VCDAS_REPORT_HPP

#include "vcdas/stats.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace vcdas
{

struct GroupStats
{
    std::size_t count = 0;
    std::size_t max_size = 0;
    std::vector<std::size_t> sizes;
    std::size_t silent = 0; ///< groups with fewer antennas than users
};

/// Per-user rates of one topology (bits/s/Hz) with their metadata.
struct RateReport
{
    std::vector<double> user_rates;
    std::vector<double> user_std_errors;
    double average_rate = 0.0;
    double std_error = 0.0; ///< of the average, users treated as independent
    std::optional<GroupStats> groups;
    std::vector<std::pair<std::string, std::string>> config;
    std::uint64_t seed = 0;
    std::string method;

    double min_rate() const;
    double max_rate() const;
};

/// Fills the averages from per-user estimates.
RateReport make_rate_report(const std::vector<McEstimate> &per_user, std::string method, std::uint64_t seed);

std::string rate_report_to_json(const RateReport &report);

} // namespace vcdas

#endif
