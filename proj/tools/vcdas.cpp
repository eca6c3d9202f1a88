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
// Command line front end: every subcommand writes one table as CSV or JSON.

#include "vcdas/harness.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <fstream>
#include <iostream>
#include <map>

namespace
{

constexpr int kConfigErrorExit = 2;

struct Flags
{
    std::size_t k = 50;
    std::size_t l = 100;
    std::string v = "1";
    double alpha = 4.0;
    double snr_db = 10.0;
    std::size_t topologies = 200;
    std::size_t fading_samples = 0;
    std::uint64_t seed = 1;
    std::size_t clusters = 4;
    std::size_t index = 0;
    bool instantaneous = false;
    bool summary = false;
    std::string out;
    std::string format = "csv";
};

void add_common(CLI::App *cmd, Flags &f)
{
    cmd->add_option("--k", f.k, "number of users")->capture_default_str();
    cmd->add_option("--l", f.l, "number of BS antennas")->capture_default_str();
    cmd->add_option("--v", f.v, "virtual cell size, single value or a..b")->capture_default_str();
    cmd->add_option("--alpha", f.alpha, "path-loss exponent")->capture_default_str();
    cmd->add_option("--snr-db", f.snr_db, "transmit SNR in dB")->capture_default_str();
    cmd->add_option("--topologies", f.topologies, "topology realizations")->capture_default_str();
    cmd->add_option("--fading-samples", f.fading_samples,
                    "fading draws (default 200000, or 2000 per phase for ZFBF)");
    cmd->add_option("--seed", f.seed, "master seed")->capture_default_str();
    cmd->add_option("--out", f.out, "output file (default stdout)");
    cmd->add_option("--format", f.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
}

vcdas::ExperimentConfig to_config(const Flags &f, vcdas::Mode mode)
{
    vcdas::ExperimentConfig cfg;
    cfg.mode = mode;
    cfg.k = f.k;
    cfg.l = f.l;
    std::tie(cfg.v_min, cfg.v_max) = vcdas::parse_v_range(f.v);
    cfg.alpha = f.alpha;
    cfg.snr_db = f.snr_db;
    cfg.n_topologies = f.topologies;
    if (f.fading_samples > 0)
        cfg.n_fading_samples = f.fading_samples;
    cfg.seed = f.seed;
    cfg.n_clusters = f.clusters;
    cfg.instantaneous = f.instantaneous;
    cfg.out = f.out;
    cfg.format = f.format == "json" ? vcdas::OutputFormat::json : vcdas::OutputFormat::csv;
    cfg.validate();
    return cfg;
}

void emit(const std::string &text, const std::string &path)
{
    if (path.empty())
    {
        std::cout << text;
        return;
    }
    std::ofstream os(path);
    if (!os)
        throw vcdas::ConfigError(fmt::format("cannot open '{}' for writing", path));
    os << text;
}

std::string render(const vcdas::Table &t, const vcdas::ExperimentConfig &cfg)
{
    return cfg.format == vcdas::OutputFormat::json ? vcdas::table_to_json(t, cfg) : vcdas::table_to_csv(t);
}

vcdas::Table topology_table(const vcdas::Topology &topo)
{
    vcdas::Table t{{"role", "index", "x", "y"}, {}};
    for (std::size_t i = 0; i < topo.users.size(); ++i)
        t.rows.push_back({std::string("user"), static_cast<std::int64_t>(i), topo.users[i].x, topo.users[i].y});
    for (std::size_t i = 0; i < topo.bs.size(); ++i)
        t.rows.push_back({std::string("bs"), static_cast<std::int64_t>(i), topo.bs[i].x, topo.bs[i].y});
    return t;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"vcdas: downlink rate analysis for virtual-cell distributed antenna systems"};
    app.require_subcommand(1);

    Flags f;
    std::map<std::string, CLI::App *> cmds;
    cmds["mrt-sweep"] = app.add_subcommand("mrt-sweep", "average MRT rate and upper bound per V");
    cmds["single-topo"] = app.add_subcommand("single-topo", "closed-form vs Monte Carlo rates of one topology");
    cmds["bound"] = app.add_subcommand("bound", "upper bound and entropy terms per V");
    cmds["vstar"] = app.add_subcommand("vstar", "optimal virtual cell size");
    cmds["group-sweep"] = app.add_subcommand("group-sweep", "ZFBF rate and group statistics per V");
    cmds["compare"] = app.add_subcommand("compare", "virtual-cell grouping vs sector clustering");
    cmds["topo-dump"] = app.add_subcommand("topo-dump", "write one generated topology");
    for (auto &[name, cmd] : cmds)
        add_common(cmd, f);
    for (const char *name : {"group-sweep", "compare"})
        cmds[name]->add_flag("--instantaneous", f.instantaneous,
                             "use instantaneous instead of averaged inter-group interference");
    cmds["compare"]->add_option("--clusters", f.clusters, "baseline cluster count")->capture_default_str();
    cmds["compare"]->add_flag("--summary", f.summary, "write the min-rate/spread summary instead of per-user rates");
    cmds["topo-dump"]->add_option("--index", f.index, "topology index under the master seed")->capture_default_str();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return kConfigErrorExit;
    }

    try
    {
        using vcdas::Mode;
        if (cmds["mrt-sweep"]->parsed())
        {
            const auto cfg = to_config(f, Mode::mrt);
            emit(render(vcdas::to_table(vcdas::run_mrt_sweep(cfg)), cfg), cfg.out);
        }
        else if (cmds["single-topo"]->parsed())
        {
            const auto cfg = to_config(f, Mode::mrt);
            emit(render(vcdas::to_table(vcdas::run_single_topology(cfg)), cfg), cfg.out);
        }
        else if (cmds["bound"]->parsed())
        {
            const auto cfg = to_config(f, Mode::bound);
            emit(render(vcdas::to_table(vcdas::run_bound_table(cfg)), cfg), cfg.out);
        }
        else if (cmds["vstar"]->parsed())
        {
            const auto cfg = to_config(f, Mode::vstar);
            emit(render(vcdas::run_vstar(cfg), cfg), cfg.out);
        }
        else if (cmds["group-sweep"]->parsed())
        {
            const auto cfg = to_config(f, Mode::group);
            emit(render(vcdas::to_table(vcdas::run_grouping_sweep(cfg)), cfg), cfg.out);
        }
        else if (cmds["compare"]->parsed())
        {
            const auto cfg = to_config(f, Mode::baseline);
            const auto result = vcdas::run_comparison(cfg);
            emit(render(f.summary ? vcdas::summary_table(result) : vcdas::to_table(result), cfg), cfg.out);
        }
        else if (cmds["topo-dump"]->parsed())
        {
            const auto cfg = to_config(f, Mode::mrt);
            const auto topo = vcdas::experiment_topology(cfg, f.index);
            emit(cfg.format == vcdas::OutputFormat::json ? vcdas::topology_to_json(topo) + "\n"
                                                          : vcdas::table_to_csv(topology_table(topo)),
                 cfg.out);
        }
    }
    catch (const vcdas::ConfigError &e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigErrorExit;
    }
    catch (const std::invalid_argument &e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigErrorExit;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
