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
#ifndef VCDAS_GEOMETRY_HPP
#define VCDAS_GEOMETRY_HPP

#include "vcdas/random.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace vcdas
{

/// Distances below this many disk radii are clamped before the power law.
inline constexpr double kMinDistance = 1e-6;

struct Point
{
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point &, const Point &) = default;
};

double distance(const Point &a, const Point &b);

/// Positions of K users and L BS antennas inside the closed unit disk.
struct Topology
{
    std::vector<Point> users;
    std::vector<Point> bs;
    std::uint64_t seed = 0;

    std::size_t num_users() const { return users.size(); }
    std::size_t num_antennas() const { return bs.size(); }

    /// Throws std::invalid_argument if a count is zero or a point is outside the disk.
    void validate() const;

    friend bool operator==(const Topology &, const Topology &) = default;
};

/// Amplitude gains gamma(k, l) = max(d_kl, kMinDistance)^(-alpha/2), K x L.
struct LargeScaleGains
{
    Eigen::MatrixXd gamma;
    double alpha = 4.0;

    std::size_t num_users() const { return static_cast<std::size_t>(gamma.rows()); }
    std::size_t num_antennas() const { return static_cast<std::size_t>(gamma.cols()); }
};

/// Each user's V closest antennas, nearest first.
struct VirtualCellMap
{
    std::size_t cell_size = 0;
    std::size_t num_antennas = 0;
    std::vector<std::vector<std::size_t>> cells;
    std::vector<std::vector<double>> cell_distances;

    std::size_t num_users() const { return cells.size(); }
    /// Distance to the V-th closest antenna.
    double radius(std::size_t k) const { return cell_distances.at(k).back(); }
};

/// Uniform placement on the unit disk: radius sqrt(U), angle uniform on [0, 2pi).
/// Users are drawn first, then antennas.
Topology generate_topology(std::size_t num_users, std::size_t num_antennas, RandomStream &rng);

/// Convenience overload seeding its own stream; the seed is recorded in the topology.
Topology generate_topology(std::size_t num_users, std::size_t num_antennas, std::uint64_t seed);

/// Power-law amplitude gain for one link, with the minimum-distance clamp.
double path_gain(double dist, double alpha);

LargeScaleGains pairwise_gains(const Topology &topo, double alpha);

/// Ties between equidistant antennas go to the lower index.
VirtualCellMap form_virtual_cells(const Topology &topo, std::size_t cell_size);

/// Nearest other user of user k, ties to the lower index. Requires K >= 2.
std::size_t closest_interferer(const Topology &topo, std::size_t k);

/// Versioned JSON document; coordinates printed with 17 significant digits.
std::string topology_to_json(const Topology &topo);
Topology topology_from_json(const std::string &text);

} // namespace vcdas

#endif
