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
#ifndef VCDAS_GROUPING_HPP
#define VCDAS_GROUPING_HPP

#include "vcdas/geometry.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace vcdas
{

/// Disjoint user groups and the antenna set serving each group. Both lists
/// are sorted ascending.
struct GroupPartition
{
    std::vector<std::vector<std::size_t>> groups;
    std::vector<std::vector<std::size_t>> antenna_sets;

    std::size_t num_groups() const { return groups.size(); }
    std::size_t max_group_size() const;

    friend bool operator==(const GroupPartition &, const GroupPartition &) = default;
};

/// Virtual-cell based user grouping. Starting from the lowest-index
/// unassigned user, absorb every remaining user whose virtual cell meets the
/// group's merged antenna set, repeating until nothing more overlaps.
GroupPartition group_users(const VirtualCellMap &cells);

/// Throws std::logic_error unless `p` partitions the users, each antenna
/// set is the union of its members' cells, antenna sets are pairwise
/// disjoint, and no two groups could be merged.
void validate_partition(const GroupPartition &p, const VirtualCellMap &cells);

/// BS-centric clustering used as the comparison baseline.
struct ClusterBaseline
{
    std::vector<std::vector<std::size_t>> clusters;
    std::vector<std::size_t> user_assignment;
};

/// Antennas are split into angular sectors of the disk anchored at angle 0.
/// Sector sizes are balanced to differ by at most one: the sectors whose
/// equal-angle share is largest get the extra antennas, and boundaries move
/// so that each sector stays a contiguous angular run. Users join the
/// cluster of their nearest antenna.
ClusterBaseline cluster_bs_baseline(const Topology &topo, std::size_t n_clusters);

/// The baseline as a serving plan: one group per cluster that has users.
GroupPartition baseline_partition(const ClusterBaseline &baseline);

/// {"groups":[[user...],...],"antenna_sets":[[ant...],...]}
std::string partition_to_json(const GroupPartition &p);
GroupPartition partition_from_json(const std::string &text);

} // namespace vcdas

#endif
