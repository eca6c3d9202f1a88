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
#ifndef VCDAS_HARNESS_HPP
#define VCDAS_HARNESS_HPP

#include "vcdas/geometry.hpp"
#include "vcdas/report.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace vcdas
{

/// Raised for invalid experiment configurations (CLI exit code 2).
class ConfigError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

enum class Mode
{
    mrt,
    bound,
    vstar,
    group,
    zfbf,
    baseline,
};

enum class OutputFormat
{
    csv,
    json,
};

struct ExperimentConfig
{
    Mode mode = Mode::mrt;
    std::size_t k = 50;
    std::size_t l = 100;
    std::size_t v_min = 1;
    std::size_t v_max = 1;
    double alpha = 4.0;
    double snr_db = 10.0;
    std::size_t n_topologies = 200;
    /// Unset means the mode default (see fading_samples()).
    std::optional<std::size_t> n_fading_samples;
    std::uint64_t seed = 1;
    std::size_t n_clusters = 4;
    bool instantaneous = false;
    std::string out;
    OutputFormat format = OutputFormat::csv;

    double snr() const;
    std::vector<std::size_t> v_values() const;
    /// 200000 for MRT and bound modes, 2000 per phase for ZFBF modes.
    std::size_t fading_samples() const;
    /// Throws ConfigError.
    void validate() const;
};

inline constexpr std::size_t kDefaultFadingSamples = 200000;
inline constexpr std::size_t kDefaultZfbfSamples = 2000;

/// Parses "4" or "1..8".
std::pair<std::size_t, std::size_t> parse_v_range(const std::string &text);

/// Worker count from VCDAS_WORKERS, else the hardware concurrency.
std::size_t worker_count();

/// Runs fn(i) for i in [0, n) on `workers` threads. Each index is
/// processed exactly once; results must be stored per index.
void parallel_for(std::size_t n, const std::function<void(std::size_t)> &fn, std::size_t workers = 0);

/// Topology t of an experiment, derived from the master seed.
Topology experiment_topology(const ExperimentConfig &cfg, std::size_t t);

using Cell = std::variant<std::int64_t, double, std::string>;

struct Table
{
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

/// Header row, comma separated, floats with 10 significant digits.
std::string table_to_csv(const Table &table);
std::string table_to_json(const Table &table, const ExperimentConfig &cfg);
std::vector<std::pair<std::string, std::string>> config_echo(const ExperimentConfig &cfg);

struct MrtSweepResult
{
    std::vector<std::size_t> v;
    std::vector<McEstimate> average_rate;
    std::vector<McEstimate> upper_bound;
    /// per_topology[i][t]: average over users of topology t at v[i].
    std::vector<std::vector<double>> per_topology;
};

/// Closed-form MRT rates averaged over users and topologies per V, with the
/// upper bound. Topologies are shared across V.
MrtSweepResult run_mrt_sweep(const ExperimentConfig &cfg);
Table to_table(const MrtSweepResult &r);

struct SingleTopologyRow
{
    std::size_t v = 0;
    std::size_t user = 0;
    double closed_form = 0.0;
    bool fallback = false;
    McEstimate monte_carlo;
};

/// Closed-form and Monte Carlo rates of every user of one topology.
std::vector<SingleTopologyRow> run_single_topology(const ExperimentConfig &cfg);
Table to_table(const std::vector<SingleTopologyRow> &rows);

struct BoundRow
{
    std::size_t v = 0;
    McEstimate upper_bound;
    McEstimate e_log_signal;
    McEstimate e_log_interference_lb;
};

std::vector<BoundRow> run_bound_table(const ExperimentConfig &cfg);
Table to_table(const std::vector<BoundRow> &rows);

Table run_vstar(const ExperimentConfig &cfg);

struct GroupingSweepResult
{
    std::vector<std::size_t> v;
    std::vector<McEstimate> average_rate;
    std::vector<double> n_groups_mean;
    std::vector<double> max_group_size_mean;
    std::vector<std::vector<double>> per_topology;
    std::vector<std::vector<std::size_t>> n_groups; ///< [v][t]
};

/// ZFBF rates under virtual-cell grouping per V.
GroupingSweepResult run_grouping_sweep(const ExperimentConfig &cfg);
Table to_table(const GroupingSweepResult &r);

struct ComparisonResult
{
    std::size_t v = 0;
    std::vector<RateReport> grouping;
    std::vector<RateReport> baseline;
    McEstimate grouping_min_rate;
    McEstimate baseline_min_rate;
    McEstimate grouping_spread;
    McEstimate baseline_spread;
};

/// Paired comparison on the same topologies: virtual-cell grouping at
/// cfg.v_min versus the sector baseline with cfg.n_clusters clusters.
ComparisonResult run_comparison(const ExperimentConfig &cfg);
Table to_table(const ComparisonResult &r);
Table summary_table(const ComparisonResult &r);

} // namespace vcdas

#endif
