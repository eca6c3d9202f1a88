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
#include "vcdas/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace vcdas
{

double RateReport::min_rate() const
{
    if (user_rates.empty())
        throw std::logic_error("RateReport: no users");
    return *std::min_element(user_rates.begin(), user_rates.end());
}

double RateReport::max_rate() const
{
    if (user_rates.empty())
        throw std::logic_error("RateReport: no users");
    return *std::max_element(user_rates.begin(), user_rates.end());
}

RateReport make_rate_report(const std::vector<McEstimate> &per_user, std::string method, std::uint64_t seed)
{
    RateReport r;
    r.method = std::move(method);
    r.seed = seed;
    double var = 0.0;
    for (const auto &e : per_user)
    {
        r.user_rates.push_back(e.estimate);
        r.user_std_errors.push_back(e.std_error);
        var += e.std_error * e.std_error;
    }
    if (!per_user.empty())
    {
        const double n = static_cast<double>(per_user.size());
        r.average_rate = std::accumulate(r.user_rates.begin(), r.user_rates.end(), 0.0) / n;
        r.std_error = std::sqrt(var) / n;
    }
    return r;
}

std::string rate_report_to_json(const RateReport &report)
{
    nlohmann::json doc;
    doc["method"] = report.method;
    doc["seed"] = report.seed;
    doc["user_rates"] = report.user_rates;
    doc["user_std_errors"] = report.user_std_errors;
    doc["average_rate"] = report.average_rate;
    doc["std_error"] = report.std_error;
    nlohmann::json cfg = nlohmann::json::object();
    for (const auto &[key, value] : report.config)
        cfg[key] = value;
    doc["config"] = cfg;
    if (report.groups)
    {
        doc["groups"] = {{"count", report.groups->count},
                         {"max_size", report.groups->max_size},
                         {"sizes", report.groups->sizes},
                         {"silent", report.groups->silent}};
    }
    return doc.dump(2);
}

} // namespace vcdas
