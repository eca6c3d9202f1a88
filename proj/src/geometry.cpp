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
#include "vcdas/geometry.hpp"

#include <fmt/format.h>
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

constexpr int kTopologyFormatVersion = 1;

Point uniform_disk_point(RandomStream &rng)
{
    const double r = std::sqrt(uniform01(rng));
    const double theta = 2.0 * std::numbers::pi * uniform01(rng);
    return {r * std::cos(theta), r * std::sin(theta)};
}

void append_points(std::string &out, const std::vector<Point> &pts)
{
    out += '[';
    for (std::size_t i = 0; i < pts.size(); ++i)
    {
        if (i)
            out += ',';
        out += fmt::format("[{:.17g},{:.17g}]", pts[i].x, pts[i].y);
    }
    out += ']';
}

std::vector<Point> read_points(const nlohmann::json &arr, std::size_t expected, const char *what)
{
    if (!arr.is_array() || arr.size() != expected)
        throw std::invalid_argument(fmt::format("topology: '{}' must hold {} points", what, expected));
    std::vector<Point> pts;
    pts.reserve(expected);
    for (const auto &p : arr)
    {
        if (!p.is_array() || p.size() != 2)
            throw std::invalid_argument(fmt::format("topology: malformed point in '{}'", what));
        pts.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    return pts;
}

} // namespace

double distance(const Point &a, const Point &b)
{
    return std::hypot(a.x - b.x, a.y - b.y);
}

void Topology::validate() const
{
    if (users.empty() || bs.empty())
        throw std::invalid_argument("topology: need at least one user and one antenna");
    auto inside = [](const Point &p)
    { return std::isfinite(p.x) && std::isfinite(p.y) && std::hypot(p.x, p.y) <= 1.0 + 1e-12; };
    if (!std::all_of(users.begin(), users.end(), inside) || !std::all_of(bs.begin(), bs.end(), inside))
        throw std::invalid_argument("topology: every position must lie in the closed unit disk");
}

Topology generate_topology(std::size_t num_users, std::size_t num_antennas, RandomStream &rng)
{
    if (num_users == 0 || num_antennas == 0)
        throw std::invalid_argument("generate_topology: K and L must be at least 1");
    Topology topo;
    topo.users.reserve(num_users);
    topo.bs.reserve(num_antennas);
    for (std::size_t k = 0; k < num_users; ++k)
        topo.users.push_back(uniform_disk_point(rng));
    for (std::size_t l = 0; l < num_antennas; ++l)
        topo.bs.push_back(uniform_disk_point(rng));
    return topo;
}

Topology generate_topology(std::size_t num_users, std::size_t num_antennas, std::uint64_t seed)
{
    RandomStream rng(seed);
    Topology topo = generate_topology(num_users, num_antennas, rng);
    topo.seed = seed;
    return topo;
}

double path_gain(double dist, double alpha)
{
    return std::pow(std::max(dist, kMinDistance), -0.5 * alpha);
}

LargeScaleGains pairwise_gains(const Topology &topo, double alpha)
{
    if (!std::isfinite(alpha) || alpha <= 2.0)
        throw std::invalid_argument("pairwise_gains: alpha must be finite and greater than 2");
    topo.validate();
    LargeScaleGains g;
    g.alpha = alpha;
    g.gamma.resize(static_cast<Eigen::Index>(topo.num_users()), static_cast<Eigen::Index>(topo.num_antennas()));
    for (std::size_t k = 0; k < topo.num_users(); ++k)
        for (std::size_t l = 0; l < topo.num_antennas(); ++l)
            g.gamma(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) =
                path_gain(distance(topo.users[k], topo.bs[l]), alpha);
    return g;
}

VirtualCellMap form_virtual_cells(const Topology &topo, std::size_t cell_size)
{
    topo.validate();
    const std::size_t L = topo.num_antennas();
    if (cell_size < 1 || cell_size > L)
        throw std::invalid_argument(fmt::format("form_virtual_cells: need 1 <= V <= L, got V={} L={}", cell_size, L));

    VirtualCellMap map;
    map.cell_size = cell_size;
    map.num_antennas = L;
    map.cells.resize(topo.num_users());
    map.cell_distances.resize(topo.num_users());

    std::vector<double> dist(L);
    std::vector<std::size_t> order(L);
    for (std::size_t k = 0; k < topo.num_users(); ++k)
    {
        for (std::size_t l = 0; l < L; ++l)
            dist[l] = distance(topo.users[k], topo.bs[l]);
        std::iota(order.begin(), order.end(), std::size_t{0});
        auto closer = [&](std::size_t a, std::size_t b)
        { return dist[a] < dist[b] || (dist[a] == dist[b] && a < b); };
        std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(cell_size), order.end(), closer);
        map.cells[k].assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(cell_size));
        for (std::size_t l : map.cells[k])
            map.cell_distances[k].push_back(dist[l]);
    }
    return map;
}

std::size_t closest_interferer(const Topology &topo, std::size_t k)
{
    const std::size_t K = topo.num_users();
    if (K < 2)
        throw std::invalid_argument("closest_interferer: need at least two users");
    if (k >= K)
        throw std::out_of_range("closest_interferer: user index out of range");
    std::size_t best = K;
    double best_d = 0.0;
    for (std::size_t j = 0; j < K; ++j)
    {
        if (j == k)
            continue;
        const double d = distance(topo.users[k], topo.users[j]);
        if (best == K || d < best_d)
        {
            best = j;
            best_d = d;
        }
    }
    return best;
}

std::string topology_to_json(const Topology &topo)
{
    std::string out = fmt::format(R"({{"version":{},"k":{},"l":{},"users":)", kTopologyFormatVersion,
                                  topo.num_users(), topo.num_antennas());
    append_points(out, topo.users);
    out += R"(,"bs":)";
    append_points(out, topo.bs);
    out += fmt::format(R"(,"seed":{}}})", topo.seed);
    return out;
}

Topology topology_from_json(const std::string &text)
{
    Topology topo;
    try
    {
        const nlohmann::json doc = nlohmann::json::parse(text);
        if (doc.contains("version") && doc["version"].get<int>() != kTopologyFormatVersion)
            throw std::invalid_argument("topology: unsupported format version");
        const auto K = doc.at("k").get<std::size_t>();
        const auto L = doc.at("l").get<std::size_t>();
        topo.users = read_points(doc.at("users"), K, "users");
        topo.bs = read_points(doc.at("bs"), L, "bs");
        topo.seed = doc.value("seed", std::uint64_t{0});
    }
    catch (const nlohmann::json::exception &e)
    {
        throw std::invalid_argument(std::string("topology: ") + e.what());
    }
    topo.validate();
    return topo;
}

} // namespace vcdas
