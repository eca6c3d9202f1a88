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

#include <doctest.h>
#include <json.hpp>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <sstream>

using namespace vcdas;

namespace
{

class WorkersEnv
{
public:
    explicit WorkersEnv(const char *value)
    {
        if (const char *old = std::getenv("VCDAS_WORKERS"))
            saved_ = old;
        if (value)
            setenv("VCDAS_WORKERS", value, 1);
        else
            unsetenv("VCDAS_WORKERS");
    }
    ~WorkersEnv()
    {
        if (saved_.empty())
            unsetenv("VCDAS_WORKERS");
        else
            setenv("VCDAS_WORKERS", saved_.c_str(), 1);
    }

private:
    std::string saved_;
};

ExperimentConfig small_mrt()
{
    ExperimentConfig cfg;
    cfg.mode = Mode::mrt;
    cfg.k = 8;
    cfg.l = 16;
    cfg.v_min = 1;
    cfg.v_max = 3;
    cfg.n_topologies = 6;
    cfg.n_fading_samples = 2000;
    cfg.seed = 42;
    return cfg;
}

std::vector<std::string> lines(const std::string &text)
{
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);)
        out.push_back(line);
    return out;
}

} // namespace

TEST_SUITE("harness")
{
    TEST_CASE("V range parsing")
    {
        CHECK(parse_v_range("4") == std::pair<std::size_t, std::size_t>{4, 4});
        CHECK(parse_v_range("1..8") == std::pair<std::size_t, std::size_t>{1, 8});
        CHECK_THROWS_AS(parse_v_range("8..1"), ConfigError);
        CHECK_THROWS_AS(parse_v_range("x"), ConfigError);
        CHECK_THROWS_AS(parse_v_range("1..x"), ConfigError);
        CHECK_THROWS_AS(parse_v_range("-3"), ConfigError);
        CHECK_THROWS_AS(parse_v_range(""), ConfigError);
    }

    TEST_CASE("configuration checks")
    {
        ExperimentConfig cfg = small_mrt();
        CHECK_NOTHROW(cfg.validate());
        CHECK(cfg.snr() == doctest::Approx(10.0));
        CHECK(cfg.v_values() == std::vector<std::size_t>{1, 2, 3});

        auto broken = [&](auto mutate)
        {
            ExperimentConfig c = small_mrt();
            mutate(c);
            return c;
        };
        CHECK_THROWS_AS(broken([](auto &c) { c.v_max = 17; }).validate(), ConfigError);
        CHECK_THROWS_AS(broken([](auto &c) { c.k = 0; }).validate(), ConfigError);
        CHECK_THROWS_AS(broken([](auto &c) { c.alpha = 2.0; }).validate(), ConfigError);
        CHECK_THROWS_AS(broken([](auto &c) { c.snr_db = NAN; }).validate(), ConfigError);
        CHECK_THROWS_AS(broken([](auto &c) { c.n_topologies = 0; }).validate(), ConfigError);
        CHECK_THROWS_AS(broken([](auto &c) { c.n_fading_samples = 999; }).validate(), ConfigError);
        CHECK_THROWS_AS(broken([](auto &c) { c.mode = Mode::bound; c.k = 1; }).validate(), ConfigError);
        CHECK_THROWS_AS(broken([](auto &c) { c.mode = Mode::vstar; c.k = 2; }).validate(), ConfigError);
        CHECK_THROWS_AS(broken([](auto &c) { c.mode = Mode::baseline; c.n_clusters = 17; }).validate(), ConfigError);
    }

    TEST_CASE("mode defaults for fading samples")
    {
        ExperimentConfig cfg;
        CHECK(cfg.fading_samples() == kDefaultFadingSamples);
        cfg.mode = Mode::group;
        CHECK(cfg.fading_samples() == kDefaultZfbfSamples);
        cfg.n_fading_samples = 5000;
        CHECK(cfg.fading_samples() == 5000);
    }

    TEST_CASE("worker count from the environment")
    {
        {
            WorkersEnv env("3");
            CHECK(worker_count() == 3);
        }
        {
            WorkersEnv env("0");
            CHECK_THROWS_AS(worker_count(), ConfigError);
        }
        {
            WorkersEnv env("two");
            CHECK_THROWS_AS(worker_count(), ConfigError);
        }
        {
            WorkersEnv env(nullptr);
            CHECK(worker_count() >= 1);
        }
    }

    TEST_CASE("parallel_for visits each index once")
    {
        std::vector<std::atomic<int>> hits(1000);
        parallel_for(hits.size(), [&](std::size_t i) { hits[i].fetch_add(1); }, 4);
        for (const auto &h : hits)
            CHECK(h.load() == 1);
        CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) { if (i == 7) throw std::runtime_error("x"); }, 3),
                        std::runtime_error);
    }

    TEST_CASE("topologies depend on the master seed and index only")
    {
        ExperimentConfig a = small_mrt();
        ExperimentConfig b = small_mrt();
        b.v_max = 1;
        b.mode = Mode::group;
        CHECK(experiment_topology(a, 3) == experiment_topology(b, 3));
        CHECK(!(experiment_topology(a, 3) == experiment_topology(a, 4)));
        b.seed = 43;
        CHECK(!(experiment_topology(a, 3) == experiment_topology(b, 3)));
    }

    TEST_CASE("MRT sweep is deterministic and worker independent")
    {
        const ExperimentConfig cfg = small_mrt();
        MrtSweepResult one, many;
        {
            WorkersEnv env("1");
            one = run_mrt_sweep(cfg);
        }
        {
            WorkersEnv env("4");
            many = run_mrt_sweep(cfg);
        }
        REQUIRE(one.v == many.v);
        for (std::size_t i = 0; i < one.v.size(); ++i)
        {
            CHECK(one.average_rate[i].estimate == many.average_rate[i].estimate);
            CHECK(one.upper_bound[i].estimate == many.upper_bound[i].estimate);
            CHECK(one.per_topology[i] == many.per_topology[i]);
        }
        ExperimentConfig other = cfg;
        other.seed = 43;
        CHECK(run_mrt_sweep(other).average_rate[0].estimate != one.average_rate[0].estimate);
    }

    TEST_CASE("topology standard error shrinks like one over sqrt(T)")
    {
        ExperimentConfig cfg = small_mrt();
        cfg.v_max = 1;
        cfg.n_topologies = 50;
        const double se50 = run_mrt_sweep(cfg).average_rate[0].std_error;
        cfg.n_topologies = 800;
        const double se800 = run_mrt_sweep(cfg).average_rate[0].std_error;
        CHECK(se50 / se800 == doctest::Approx(4.0).epsilon(0.35));
    }

    TEST_CASE("CSV layout")
    {
        const Table t = to_table(run_mrt_sweep(small_mrt()));
        const std::string csv = table_to_csv(t);
        const auto rows = lines(csv);
        REQUIRE(rows.size() == 4);
        CHECK(rows[0] == "v,avg_rate,stderr,upper_bound,ub_stderr");
        CHECK(rows[1].rfind("1,", 0) == 0);

        Table fixed;
        fixed.columns = {"a", "b", "c"};
        fixed.rows = {{std::int64_t{3}, 1.0 / 3.0, std::string("x")}, {std::int64_t{-1}, 1e-20, std::string("y")}};
        CHECK(table_to_csv(fixed) == "a,b,c\n3,0.3333333333,x\n-1,1e-20,y\n");
    }

    TEST_CASE("JSON layout")
    {
        Table fixed;
        fixed.columns = {"v", "rate"};
        fixed.rows = {{std::int64_t{1}, 2.5}, {std::int64_t{2}, std::nan("")}};
        const auto doc = nlohmann::json::parse(table_to_json(fixed, small_mrt()));
        CHECK(doc.at("columns").size() == 2);
        CHECK(doc.at("rows").size() == 2);
        CHECK(doc.at("rows").at(0).at("rate").get<double>() == 2.5);
        CHECK(doc.at("rows").at(1).at("rate").is_null());
        CHECK(doc.at("config").contains("seed"));
    }

    TEST_CASE("single topology with one user")
    {
        ExperimentConfig cfg;
        cfg.mode = Mode::mrt;
        cfg.k = 1;
        cfg.l = 6;
        cfg.v_min = 1;
        cfg.v_max = 3;
        cfg.n_topologies = 1;
        cfg.n_fading_samples = 20000;
        const auto rows = run_single_topology(cfg);
        REQUIRE(rows.size() == 3);
        for (const auto &r : rows)
        {
            CHECK(r.user == 0);
            CHECK(std::isfinite(r.closed_form));
            CHECK(std::abs(r.closed_form - r.monte_carlo.estimate) < 5.0 * r.monte_carlo.std_error + 1e-3);
        }
        CHECK(lines(table_to_csv(to_table(rows))).size() == 4);
    }

    TEST_CASE("MRT sweep with one user has no bound")
    {
        ExperimentConfig cfg = small_mrt();
        cfg.k = 1;
        const auto r = run_mrt_sweep(cfg);
        CHECK(std::isnan(r.upper_bound[0].estimate));
    }

    TEST_CASE("bound table and vstar tables")
    {
        ExperimentConfig cfg = small_mrt();
        cfg.mode = Mode::bound;
        const auto rows = run_bound_table(cfg);
        REQUIRE(rows.size() == 3);
        for (const auto &r : rows)
            CHECK(r.upper_bound.estimate > 0.0);
        CHECK(to_table(rows).columns.size() == 7);

        cfg.mode = Mode::vstar;
        cfg.k = 50;
        cfg.l = 1000;
        cfg.v_max = 1;
        const Table v = run_vstar(cfg);
        REQUIRE(v.rows.size() == 1);
        CHECK(std::get<std::int64_t>(v.rows[0][5]) == 4);
    }

    TEST_CASE("grouping sweep merges groups as V grows")
    {
        ExperimentConfig cfg;
        cfg.mode = Mode::group;
        cfg.k = 8;
        cfg.l = 16;
        cfg.v_min = 1;
        cfg.v_max = 4;
        cfg.n_topologies = 3;
        cfg.n_fading_samples = 1000;
        const auto r = run_grouping_sweep(cfg);
        REQUIRE(r.n_groups.size() == 4);
        for (std::size_t t = 0; t < 3; ++t)
            for (std::size_t i = 1; i < 4; ++i)
                CHECK(r.n_groups[i][t] <= r.n_groups[i - 1][t]);
        for (const auto &e : r.average_rate)
            CHECK(e.estimate >= 0.0);
        CHECK(lines(table_to_csv(to_table(r))).size() == 5);
    }

    TEST_CASE("comparison tables")
    {
        ExperimentConfig cfg;
        cfg.mode = Mode::baseline;
        cfg.k = 6;
        cfg.l = 12;
        cfg.v_min = cfg.v_max = 2;
        cfg.n_topologies = 2;
        cfg.n_fading_samples = 1000;
        const auto r = run_comparison(cfg);
        CHECK(r.grouping.size() == 2);
        CHECK(r.baseline.size() == 2);
        CHECK(to_table(r).rows.size() == 12);
        CHECK(summary_table(r).rows.size() == 2);
    }
}
