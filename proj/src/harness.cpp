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
#include "vcdas/harness.hpp"

#include "vcdas/bounds.hpp"
#include "vcdas/grouping.hpp"
#include "vcdas/mrt.hpp"
#include "vcdas/vopt.hpp"
#include "vcdas/zfbf.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

namespace vcdas
{

namespace
{

McEstimate mean_of(const std::vector<double> &values)
{
    RunningStats s;
    for (double v : values)
        s.add(v);
    return s.estimate();
}

std::size_t parse_count(const std::string &text)
{
    std::size_t value = 0;
    const char *first = text.data();
    const char *last = first + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || text.empty())
        throw ConfigError(fmt::format("not a count: '{}'", text));
    return value;
}

const char *mode_name(Mode m)
{
    switch (m)
    {
    case Mode::mrt: return "mrt";
    case Mode::bound: return "bound";
    case Mode::vstar: return "vstar";
    case Mode::group: return "group";
    case Mode::zfbf: return "zfbf";
    case Mode::baseline: return "baseline";
    }
    return "unknown";
}

std::string format_double(double x)
{
    return fmt::format("{:.10g}", x);
}

} // namespace

double ExperimentConfig::snr() const
{
    return std::pow(10.0, snr_db / 10.0);
}

std::vector<std::size_t> ExperimentConfig::v_values() const
{
    std::vector<std::size_t> out;
    for (std::size_t v = v_min; v <= v_max; ++v)
        out.push_back(v);
    return out;
}

std::size_t ExperimentConfig::fading_samples() const
{
    if (n_fading_samples)
        return *n_fading_samples;
    const bool zf = mode == Mode::group || mode == Mode::zfbf || mode == Mode::baseline;
    return zf ? kDefaultZfbfSamples : kDefaultFadingSamples;
}

void ExperimentConfig::validate() const
{
    if (k < 1 || l < 1)
        throw ConfigError("K and L must be at least 1");
    if (v_min < 1 || v_min > v_max || v_max > l)
        throw ConfigError(fmt::format("V range {}..{} must lie within [1, L={}]", v_min, v_max, l));
    if (!std::isfinite(alpha) || !(alpha > 2.0))
        throw ConfigError("alpha must be finite and greater than 2");
    if (!std::isfinite(snr_db))
        throw ConfigError("snr-db must be finite");
    if (n_topologies < 1)
        throw ConfigError("need at least one topology");
    if (fading_samples() < 1000)
        throw ConfigError("need at least 1000 fading samples");
    if ((mode == Mode::bound) && k < 2)
        throw ConfigError("the upper bound needs K >= 2");
    if (mode == Mode::vstar && k < 3)
        throw ConfigError("vstar needs K >= 3");
    if (mode == Mode::baseline && (n_clusters < 1 || n_clusters > l))
        throw ConfigError("cluster count must lie within [1, L]");
}

std::pair<std::size_t, std::size_t> parse_v_range(const std::string &text)
{
    const auto dots = text.find("..");
    if (dots == std::string::npos)
    {
        const std::size_t v = parse_count(text);
        return {v, v};
    }
    const std::size_t a = parse_count(text.substr(0, dots));
    const std::size_t b = parse_count(text.substr(dots + 2));
    if (a > b)
        throw ConfigError(fmt::format("empty V range '{}'", text));
    return {a, b};
}

std::size_t worker_count()
{
    if (const char *env = std::getenv("VCDAS_WORKERS"))
    {
        try
        {
            const std::size_t n = parse_count(env);
            if (n >= 1)
                return n;
        }
        catch (const ConfigError &)
        {
        }
        throw ConfigError(fmt::format("VCDAS_WORKERS must be a positive integer, got '{}'", env));
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)> &fn, std::size_t workers)
{
    if (workers == 0)
        workers = worker_count();
    workers = std::min(workers, n);
    if (workers <= 1)
    {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&]
    {
        for (std::size_t i = next++; i < n; i = next++)
        {
            try
            {
                fn(i);
            }
            catch (...)
            {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                next = n;
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back(work);
    for (auto &t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

Topology experiment_topology(const ExperimentConfig &cfg, std::size_t t)
{
    return generate_topology(cfg.k, cfg.l, derive_seed(cfg.seed, {tag(StreamTag::topology), t}));
}

std::string table_to_csv(const Table &table)
{
    std::string out;
    for (std::size_t c = 0; c < table.columns.size(); ++c)
        out += (c ? "," : "") + table.columns[c];
    out += '\n';
    for (const auto &row : table.rows)
    {
        for (std::size_t c = 0; c < row.size(); ++c)
        {
            if (c)
                out += ',';
            std::visit(
                [&](const auto &v)
                {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, double>)
                        out += format_double(v);
                    else if constexpr (std::is_same_v<T, std::int64_t>)
                        out += std::to_string(v);
                    else
                        out += v;
                },
                row[c]);
        }
        out += '\n';
    }
    return out;
}

std::vector<std::pair<std::string, std::string>> config_echo(const ExperimentConfig &cfg)
{
    return {{"mode", mode_name(cfg.mode)},
            {"k", std::to_string(cfg.k)},
            {"l", std::to_string(cfg.l)},
            {"v", fmt::format("{}..{}", cfg.v_min, cfg.v_max)},
            {"alpha", format_double(cfg.alpha)},
            {"snr_db", format_double(cfg.snr_db)},
            {"topologies", std::to_string(cfg.n_topologies)},
            {"fading_samples", std::to_string(cfg.fading_samples())},
            {"seed", std::to_string(cfg.seed)},
            {"clusters", std::to_string(cfg.n_clusters)},
            {"instantaneous", cfg.instantaneous ? "true" : "false"}};
}

std::string table_to_json(const Table &table, const ExperimentConfig &cfg)
{
    nlohmann::ordered_json doc;
    nlohmann::ordered_json config = nlohmann::ordered_json::object();
    for (const auto &[key, value] : config_echo(cfg))
        config[key] = value;
    doc["config"] = config;
    doc["columns"] = table.columns;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto &row : table.rows)
    {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t c = 0; c < row.size(); ++c)
        {
            std::visit(
                [&](const auto &v)
                {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, double>)
                    {
                        if (std::isfinite(v))
                            obj[table.columns[c]] = v;
                        else
                            obj[table.columns[c]] = nullptr;
                    }
                    else
                        obj[table.columns[c]] = v;
                },
                row[c]);
        }
        rows.push_back(std::move(obj));
    }
    doc["rows"] = rows;
    return doc.dump(2) + "\n";
}

MrtSweepResult run_mrt_sweep(const ExperimentConfig &cfg)
{
    cfg.validate();
    const auto vs = cfg.v_values();
    MrtSweepResult r;
    r.v = vs;
    r.per_topology.assign(vs.size(), std::vector<double>(cfg.n_topologies, 0.0));

    parallel_for(cfg.n_topologies,
                 [&](std::size_t t)
                 {
                     const Topology topo = experiment_topology(cfg, t);
                     const LargeScaleGains gains = pairwise_gains(topo, cfg.alpha);
                     for (std::size_t i = 0; i < vs.size(); ++i)
                     {
                         const MrtContext ctx(gains, form_virtual_cells(topo, vs[i]), cfg.snr());
                         double sum = 0.0;
                         for (std::size_t k = 0; k < ctx.num_users(); ++k)
                             sum += ergodic_rate_closed_form(ctx, k);
                         r.per_topology[i][t] = sum / static_cast<double>(ctx.num_users());
                     }
                 });

    r.upper_bound.resize(vs.size());
    parallel_for(vs.size(),
                 [&](std::size_t i)
                 {
                     if (cfg.k < 2)
                     {
                         const double nan = std::numeric_limits<double>::quiet_NaN();
                         r.upper_bound[i] = {nan, nan};
                         return;
                     }
                     RandomStream rng = make_stream(cfg.seed, {tag(StreamTag::bound), vs[i]});
                     r.upper_bound[i] = estimate_upper_bound(cfg.k, cfg.l, vs[i], cfg.alpha, cfg.fading_samples(), rng);
                 });
    for (const auto &row : r.per_topology)
        r.average_rate.push_back(mean_of(row));
    return r;
}

Table to_table(const MrtSweepResult &r)
{
    Table t{{"v", "avg_rate", "stderr", "upper_bound", "ub_stderr"}, {}};
    for (std::size_t i = 0; i < r.v.size(); ++i)
        t.rows.push_back({static_cast<std::int64_t>(r.v[i]), r.average_rate[i].estimate,
                          r.average_rate[i].std_error, r.upper_bound[i].estimate, r.upper_bound[i].std_error});
    return t;
}

std::vector<SingleTopologyRow> run_single_topology(const ExperimentConfig &cfg)
{
    cfg.validate();
    const auto vs = cfg.v_values();
    const Topology topo = experiment_topology(cfg, 0);
    const LargeScaleGains gains = pairwise_gains(topo, cfg.alpha);
    std::vector<SingleTopologyRow> rows(vs.size() * cfg.k);
    parallel_for(rows.size(),
                 [&](std::size_t idx)
                 {
                     const std::size_t i = idx / cfg.k;
                     const std::size_t k = idx % cfg.k;
                     const MrtContext ctx(gains, form_virtual_cells(topo, vs[i]), cfg.snr());
                     SingleTopologyRow &row = rows[idx];
                     row.v = vs[i];
                     row.user = k;
                     const PartialFractionValue cf = ergodic_rate_closed_form_detail(ctx, k);
                     row.closed_form = cf.value;
                     row.fallback = cf.fallback;
                     RandomStream rng = make_stream(cfg.seed, {tag(StreamTag::fading), vs[i], k});
                     row.monte_carlo = ergodic_rate_mc(ctx, k, cfg.fading_samples(), rng);
                 });
    return rows;
}

Table to_table(const std::vector<SingleTopologyRow> &rows)
{
    Table t{{"v", "user", "closed_form", "mc_rate", "mc_stderr", "fallback"}, {}};
    for (const auto &r : rows)
        t.rows.push_back({static_cast<std::int64_t>(r.v), static_cast<std::int64_t>(r.user), r.closed_form,
                          r.monte_carlo.estimate, r.monte_carlo.std_error, std::int64_t{r.fallback ? 1 : 0}});
    return t;
}

std::vector<BoundRow> run_bound_table(const ExperimentConfig &cfg)
{
    cfg.validate();
    if (cfg.k < 2)
        throw ConfigError("the upper bound needs K >= 2");
    const auto vs = cfg.v_values();
    std::vector<BoundRow> rows(vs.size());
    parallel_for(vs.size(),
                 [&](std::size_t i)
                 {
                     rows[i].v = vs[i];
                     RandomStream rng = make_stream(cfg.seed, {tag(StreamTag::bound), vs[i]});
                     rows[i].upper_bound =
                         estimate_upper_bound(cfg.k, cfg.l, vs[i], cfg.alpha, cfg.fading_samples(), rng);
                     RandomStream rng2 = make_stream(cfg.seed, {tag(StreamTag::bound), vs[i], 1});
                     const EntropyTerms e =
                         estimate_entropy_terms(cfg.k, cfg.l, vs[i], cfg.alpha, cfg.fading_samples(), rng2);
                     rows[i].e_log_signal = e.e_log_signal;
                     rows[i].e_log_interference_lb = e.e_log_interference_lb;
                 });
    return rows;
}

Table to_table(const std::vector<BoundRow> &rows)
{
    Table t{{"v", "upper_bound", "ub_stderr", "e_log_signal", "e_log_signal_stderr", "e_log_interference_lb",
             "e_log_interference_lb_stderr"},
            {}};
    for (const auto &r : rows)
        t.rows.push_back({static_cast<std::int64_t>(r.v), r.upper_bound.estimate, r.upper_bound.std_error,
                          r.e_log_signal.estimate, r.e_log_signal.std_error, r.e_log_interference_lb.estimate,
                          r.e_log_interference_lb.std_error});
    return t;
}

Table run_vstar(const ExperimentConfig &cfg)
{
    cfg.validate();
    if (cfg.k < 3)
        throw ConfigError("vstar needs K >= 3");
    const VStarResult r = optimal_v_result(cfg.k, cfg.l);
    Table t{{"k", "l", "mean_nn_distance", "v_exact", "v_integer", "rule_v"}, {}};
    t.rows.push_back({static_cast<std::int64_t>(cfg.k), static_cast<std::int64_t>(cfg.l), r.mean_nn_distance,
                      r.v_exact, static_cast<std::int64_t>(r.v_integer),
                      static_cast<std::int64_t>(optimal_v(cfg.k, cfg.l))});
    return t;
}

GroupingSweepResult run_grouping_sweep(const ExperimentConfig &cfg)
{
    cfg.validate();
    const auto vs = cfg.v_values();
    const std::size_t n = cfg.fading_samples();
    GroupingSweepResult r;
    r.v = vs;
    r.per_topology.assign(vs.size(), std::vector<double>(cfg.n_topologies, 0.0));
    r.n_groups.assign(vs.size(), std::vector<std::size_t>(cfg.n_topologies, 0));
    std::vector<std::vector<std::size_t>> max_size(vs.size(), std::vector<std::size_t>(cfg.n_topologies, 0));
    ZfbfOptions options;
    options.instantaneous_interference = cfg.instantaneous;

    parallel_for(cfg.n_topologies * vs.size(),
                 [&](std::size_t idx)
                 {
                     const std::size_t t = idx / vs.size();
                     const std::size_t i = idx % vs.size();
                     const Topology topo = experiment_topology(cfg, t);
                     const LargeScaleGains gains = pairwise_gains(topo, cfg.alpha);
                     const GroupPartition p = group_users(form_virtual_cells(topo, vs[i]));
                     RandomStream rng = make_stream(cfg.seed, {tag(StreamTag::zfbf), t, vs[i]});
                     const RateReport rep = zfbf_user_rates(p, gains, cfg.snr(), n, n, rng, options);
                     r.per_topology[i][t] = rep.average_rate;
                     r.n_groups[i][t] = p.num_groups();
                     max_size[i][t] = p.max_group_size();
                 });

    for (std::size_t i = 0; i < vs.size(); ++i)
    {
        r.average_rate.push_back(mean_of(r.per_topology[i]));
        double ng = 0.0, ms = 0.0;
        for (std::size_t t = 0; t < cfg.n_topologies; ++t)
        {
            ng += static_cast<double>(r.n_groups[i][t]);
            ms += static_cast<double>(max_size[i][t]);
        }
        r.n_groups_mean.push_back(ng / static_cast<double>(cfg.n_topologies));
        r.max_group_size_mean.push_back(ms / static_cast<double>(cfg.n_topologies));
    }
    return r;
}

Table to_table(const GroupingSweepResult &r)
{
    Table t{{"v", "avg_rate", "stderr", "n_groups_mean", "max_group_size_mean"}, {}};
    for (std::size_t i = 0; i < r.v.size(); ++i)
        t.rows.push_back({static_cast<std::int64_t>(r.v[i]), r.average_rate[i].estimate,
                          r.average_rate[i].std_error, r.n_groups_mean[i], r.max_group_size_mean[i]});
    return t;
}

ComparisonResult run_comparison(const ExperimentConfig &cfg)
{
    ExperimentConfig c = cfg;
    c.mode = Mode::baseline;
    c.validate();
    const std::size_t n = c.fading_samples();
    ComparisonResult r;
    r.v = c.v_min;
    r.grouping.resize(c.n_topologies);
    r.baseline.resize(c.n_topologies);
    ZfbfOptions options;
    options.instantaneous_interference = c.instantaneous;

    parallel_for(c.n_topologies,
                 [&](std::size_t t)
                 {
                     const Topology topo = experiment_topology(c, t);
                     const LargeScaleGains gains = pairwise_gains(topo, c.alpha);
                     const GroupPartition grouped = group_users(form_virtual_cells(topo, c.v_min));
                     RandomStream rng_g = make_stream(c.seed, {tag(StreamTag::zfbf), t, c.v_min});
                     r.grouping[t] = zfbf_user_rates(grouped, gains, c.snr(), n, n, rng_g, options);
                     const GroupPartition sectors = baseline_partition(cluster_bs_baseline(topo, c.n_clusters));
                     RandomStream rng_b = make_stream(c.seed, {tag(StreamTag::baseline), t});
                     r.baseline[t] = zfbf_user_rates(sectors, gains, c.snr(), n, n, rng_b, options);
                 });

    std::vector<double> gmin, bmin, gspread, bspread;
    for (std::size_t t = 0; t < c.n_topologies; ++t)
    {
        gmin.push_back(r.grouping[t].min_rate());
        bmin.push_back(r.baseline[t].min_rate());
        gspread.push_back(r.grouping[t].max_rate() - r.grouping[t].min_rate());
        bspread.push_back(r.baseline[t].max_rate() - r.baseline[t].min_rate());
    }
    r.grouping_min_rate = mean_of(gmin);
    r.baseline_min_rate = mean_of(bmin);
    r.grouping_spread = mean_of(gspread);
    r.baseline_spread = mean_of(bspread);
    return r;
}

Table to_table(const ComparisonResult &r)
{
    Table t{{"topology", "user", "grouping_rate", "grouping_stderr", "baseline_rate", "baseline_stderr"}, {}};
    for (std::size_t i = 0; i < r.grouping.size(); ++i)
        for (std::size_t k = 0; k < r.grouping[i].user_rates.size(); ++k)
            t.rows.push_back({static_cast<std::int64_t>(i), static_cast<std::int64_t>(k),
                              r.grouping[i].user_rates[k], r.grouping[i].user_std_errors[k],
                              r.baseline[i].user_rates[k], r.baseline[i].user_std_errors[k]});
    return t;
}

Table summary_table(const ComparisonResult &r)
{
    Table t{{"scheme", "mean_min_rate", "min_rate_stderr", "mean_spread", "spread_stderr"}, {}};
    t.rows.push_back({std::string("grouping"), r.grouping_min_rate.estimate, r.grouping_min_rate.std_error,
                      r.grouping_spread.estimate, r.grouping_spread.std_error});
    t.rows.push_back({std::string("baseline"), r.baseline_min_rate.estimate, r.baseline_min_rate.std_error,
                      r.baseline_spread.estimate, r.baseline_spread.std_error});
    return t;
}

} // namespace vcdas
