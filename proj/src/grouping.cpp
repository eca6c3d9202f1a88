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
#include "vcdas/grouping.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace vcdas
{

namespace
{

bool meets(const std::vector<std::size_t> &cell, const std::vector<char> &serving)
{
    return std::any_of(cell.begin(), cell.end(), [&](std::size_t l) { return serving[l] != 0; });
}

double polar_angle(const Point &p)
{
    double a = std::atan2(p.y, p.x);
    if (a < 0.0)
        a += 2.0 * std::numbers::pi;
    return a >= 2.0 * std::numbers::pi ? 0.0 : a;
}

} // namespace

std::size_t GroupPartition::max_group_size() const
{
    std::size_t m = 0;
    for (const auto &g : groups)
        m = std::max(m, g.size());
    return m;
}

GroupPartition group_users(const VirtualCellMap &cells)
{
    const std::size_t K = cells.num_users();
    std::vector<std::size_t> remaining(K);
    std::iota(remaining.begin(), remaining.end(), std::size_t{0});

    GroupPartition out;
    std::vector<char> serving(cells.num_antennas, 0);
    while (!remaining.empty())
    {
        const std::size_t seed_user = remaining.front();
        remaining.erase(remaining.begin());
        std::fill(serving.begin(), serving.end(), 0);
        std::vector<std::size_t> members{seed_user};
        for (std::size_t l : cells.cells[seed_user])
            serving[l] = 1;

        bool grew = true;
        while (grew)
        {
            grew = false;
            std::vector<std::size_t> still_out;
            for (std::size_t j : remaining)
            {
                if (meets(cells.cells[j], serving))
                {
                    members.push_back(j);
                    for (std::size_t l : cells.cells[j])
                        serving[l] = 1;
                    grew = true;
                }
                else
                {
                    still_out.push_back(j);
                }
            }
            remaining.swap(still_out);
        }

        std::sort(members.begin(), members.end());
        std::vector<std::size_t> antennas;
        for (std::size_t l = 0; l < serving.size(); ++l)
            if (serving[l])
                antennas.push_back(l);
        out.groups.push_back(std::move(members));
        out.antenna_sets.push_back(std::move(antennas));
    }
    return out;
}

void validate_partition(const GroupPartition &p, const VirtualCellMap &cells)
{
    if (p.groups.size() != p.antenna_sets.size())
        throw std::logic_error("partition: groups and antenna sets differ in count");
    std::vector<int> user_group(cells.num_users(), -1);
    std::vector<int> antenna_group(cells.num_antennas, -1);
    for (std::size_t m = 0; m < p.groups.size(); ++m)
    {
        if (p.groups[m].empty())
            throw std::logic_error("partition: empty group");
        std::vector<std::size_t> merged;
        for (std::size_t k : p.groups[m])
        {
            if (k >= user_group.size() || user_group[k] != -1)
                throw std::logic_error("partition: user missing or repeated");
            user_group[k] = static_cast<int>(m);
            merged.insert(merged.end(), cells.cells[k].begin(), cells.cells[k].end());
        }
        std::sort(merged.begin(), merged.end());
        merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
        if (merged != p.antenna_sets[m])
            throw std::logic_error("partition: antenna set is not the union of member cells");
        for (std::size_t l : merged)
        {
            if (antenna_group[l] != -1)
                throw std::logic_error("partition: antenna shared by two groups");
            antenna_group[l] = static_cast<int>(m);
        }
    }
    if (std::find(user_group.begin(), user_group.end(), -1) != user_group.end())
        throw std::logic_error("partition: user not assigned");
}

ClusterBaseline cluster_bs_baseline(const Topology &topo, std::size_t n_clusters)
{
    topo.validate();
    const std::size_t L = topo.num_antennas();
    if (n_clusters < 1 || n_clusters > L)
        throw std::invalid_argument("cluster_bs_baseline: need 1 <= n_clusters <= L");

    std::vector<double> angle(L);
    std::vector<std::size_t> equal_angle_count(n_clusters, 0);
    const double width = 2.0 * std::numbers::pi / static_cast<double>(n_clusters);
    for (std::size_t l = 0; l < L; ++l)
    {
        angle[l] = polar_angle(topo.bs[l]);
        const auto s = std::min(n_clusters - 1, static_cast<std::size_t>(angle[l] / width));
        ++equal_angle_count[s];
    }

    std::vector<std::size_t> target(n_clusters, L / n_clusters);
    std::vector<std::size_t> by_count(n_clusters);
    std::iota(by_count.begin(), by_count.end(), std::size_t{0});
    std::stable_sort(by_count.begin(), by_count.end(), [&](std::size_t a, std::size_t b)
                     { return equal_angle_count[a] > equal_angle_count[b]; });
    for (std::size_t i = 0; i < L % n_clusters; ++i)
        ++target[by_count[i]];

    std::vector<std::size_t> order(L);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b)
              { return angle[a] < angle[b] || (angle[a] == angle[b] && a < b); });

    ClusterBaseline out;
    out.clusters.resize(n_clusters);
    std::vector<std::size_t> antenna_cluster(L);
    std::size_t pos = 0;
    for (std::size_t s = 0; s < n_clusters; ++s)
    {
        for (std::size_t i = 0; i < target[s]; ++i, ++pos)
        {
            out.clusters[s].push_back(order[pos]);
            antenna_cluster[order[pos]] = s;
        }
        std::sort(out.clusters[s].begin(), out.clusters[s].end());
    }

    out.user_assignment.resize(topo.num_users());
    for (std::size_t k = 0; k < topo.num_users(); ++k)
    {
        std::size_t nearest = 0;
        double best = distance(topo.users[k], topo.bs[0]);
        for (std::size_t l = 1; l < L; ++l)
        {
            const double d = distance(topo.users[k], topo.bs[l]);
            if (d < best)
            {
                best = d;
                nearest = l;
            }
        }
        out.user_assignment[k] = antenna_cluster[nearest];
    }
    return out;
}

GroupPartition baseline_partition(const ClusterBaseline &baseline)
{
    GroupPartition p;
    for (std::size_t s = 0; s < baseline.clusters.size(); ++s)
    {
        std::vector<std::size_t> members;
        for (std::size_t k = 0; k < baseline.user_assignment.size(); ++k)
            if (baseline.user_assignment[k] == s)
                members.push_back(k);
        if (members.empty())
            continue;
        p.groups.push_back(std::move(members));
        p.antenna_sets.push_back(baseline.clusters[s]);
    }
    return p;
}

std::string partition_to_json(const GroupPartition &p)
{
    nlohmann::json doc;
    doc["groups"] = p.groups;
    doc["antenna_sets"] = p.antenna_sets;
    return doc.dump();
}

GroupPartition partition_from_json(const std::string &text)
{
    GroupPartition p;
    try
    {
        const auto doc = nlohmann::json::parse(text);
        p.groups = doc.at("groups").get<std::vector<std::vector<std::size_t>>>();
        p.antenna_sets = doc.at("antenna_sets").get<std::vector<std::vector<std::size_t>>>();
    }
    catch (const nlohmann::json::exception &e)
    {
        throw std::invalid_argument(std::string("partition: ") + e.what());
    }
    if (p.groups.size() != p.antenna_sets.size())
        throw std::invalid_argument("partition: groups and antenna_sets differ in length");
    return p;
}

} // namespace vcdas
