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
#include "vcdas/bounds.hpp"
#include "vcdas/geometry.hpp"
#include "vcdas/grouping.hpp"
#include "vcdas/harness.hpp"
#include "vcdas/mrt.hpp"
#include "vcdas/specfun.hpp"
#include "vcdas/vopt.hpp"
#include "vcdas/zfbf.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace vcdas;

namespace
{

py::object cell_to_python(const Cell &c)
{
    return std::visit([](const auto &v) -> py::object { return py::cast(v); }, c);
}

py::dict table_to_dict(const Table &t)
{
    py::list rows;
    for (const auto &row : t.rows)
    {
        py::list r;
        for (const auto &c : row)
            r.append(cell_to_python(c));
        rows.append(r);
    }
    py::dict out;
    out["columns"] = t.columns;
    out["rows"] = rows;
    return out;
}

template <class Fn>
py::dict run_with_mode(ExperimentConfig cfg, Mode mode, Fn fn)
{
    cfg.mode = mode;
    Table t;
    {
        py::gil_scoped_release release;
        t = fn(cfg);
    }
    return table_to_dict(t);
}

py::tuple estimate_tuple(const McEstimate &e)
{
    return py::make_tuple(e.estimate, e.std_error);
}

} // namespace

PYBIND11_MODULE(_vcdas, m)
{
    m.doc() = "Virtual-cell DAS downlink rate analysis";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    m.def("exp_e1", &exp_e1, py::arg("z"), "e^z E1(z)");
    m.def("upper_incomplete_gamma", &upper_incomplete_gamma, py::arg("s"), py::arg("x"));
    m.def("mean_nearest_user_distance", &mean_nearest_user_distance, py::arg("k"));
    m.def("optimal_v_exact", &optimal_v_exact, py::arg("k"), py::arg("l"));
    m.def("optimal_v", &optimal_v, py::arg("k"), py::arg("l"));
    m.def(
        "mrt_power_fractions", [](const std::vector<double> &gains) { return mrt_power_fractions(gains); },
        py::arg("cell_gains"));

    py::class_<Topology>(m, "Topology")
        .def_property_readonly("users",
                               [](const Topology &t)
                               {
                                   std::vector<std::pair<double, double>> out;
                                   for (const auto &p : t.users)
                                       out.emplace_back(p.x, p.y);
                                   return out;
                               })
        .def_property_readonly("antennas",
                               [](const Topology &t)
                               {
                                   std::vector<std::pair<double, double>> out;
                                   for (const auto &p : t.bs)
                                       out.emplace_back(p.x, p.y);
                                   return out;
                               })
        .def_readonly("seed", &Topology::seed)
        .def_property_readonly("num_users", &Topology::num_users)
        .def_property_readonly("num_antennas", &Topology::num_antennas)
        .def("to_json", &topology_to_json)
        .def_static("from_json", &topology_from_json, py::arg("text"))
        .def("__eq__", [](const Topology &a, const Topology &b) { return a == b; });

    m.def(
        "generate_topology",
        [](std::size_t k, std::size_t l, std::uint64_t seed) { return generate_topology(k, l, seed); },
        py::arg("k"), py::arg("l"), py::arg("seed"));
    m.def(
        "pairwise_gains", [](const Topology &t, double alpha) { return pairwise_gains(t, alpha).gamma; },
        py::arg("topology"), py::arg("alpha") = 4.0, "K x L amplitude gains");
    m.def(
        "form_virtual_cells", [](const Topology &t, std::size_t v) { return form_virtual_cells(t, v).cells; },
        py::arg("topology"), py::arg("v"));
    m.def(
        "group_users",
        [](const Topology &t, std::size_t v)
        {
            const GroupPartition p = group_users(form_virtual_cells(t, v));
            return py::make_tuple(p.groups, p.antenna_sets);
        },
        py::arg("topology"), py::arg("v"), "(groups, antenna_sets)");
    m.def(
        "mrt_rates",
        [](const Topology &t, std::size_t v, double alpha, double snr_db)
        {
            const MrtContext ctx(pairwise_gains(t, alpha), form_virtual_cells(t, v), std::pow(10.0, snr_db / 10.0));
            std::vector<double> out;
            for (std::size_t k = 0; k < ctx.num_users(); ++k)
                out.push_back(ergodic_rate_closed_form(ctx, k));
            return out;
        },
        py::arg("topology"), py::arg("v"), py::arg("alpha") = 4.0, py::arg("snr_db") = 10.0,
        "Closed-form MRT ergodic rate of every user");
    m.def(
        "zf_precoders",
        [](const Eigen::MatrixXcd &h)
        {
            const ZfPrecoders p = zf_precoders(h);
            const char *status = p.status == ZfStatus::ok                 ? "ok"
                                 : p.status == ZfStatus::too_few_antennas ? "too_few_antennas"
                                                                          : "rank_deficient";
            return py::make_tuple(p.w, p.unscaled_norms, status);
        },
        py::arg("channel"), "(w, unscaled_norms, status)");
    m.def(
        "estimate_upper_bound",
        [](std::size_t k, std::size_t l, std::size_t v, double alpha, std::size_t n, std::uint64_t seed)
        {
            RandomStream rng(seed);
            return estimate_tuple(estimate_upper_bound(k, l, v, alpha, n, rng));
        },
        py::arg("k"), py::arg("l"), py::arg("v"), py::arg("alpha") = 4.0, py::arg("n_samples") = 200000,
        py::arg("seed") = 1, "(estimate, std_error)");

    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def(py::init<>())
        .def_readwrite("k", &ExperimentConfig::k)
        .def_readwrite("l", &ExperimentConfig::l)
        .def_readwrite("v_min", &ExperimentConfig::v_min)
        .def_readwrite("v_max", &ExperimentConfig::v_max)
        .def_readwrite("alpha", &ExperimentConfig::alpha)
        .def_readwrite("snr_db", &ExperimentConfig::snr_db)
        .def_readwrite("n_topologies", &ExperimentConfig::n_topologies)
        .def_readwrite("n_fading_samples", &ExperimentConfig::n_fading_samples)
        .def_readwrite("seed", &ExperimentConfig::seed)
        .def_readwrite("n_clusters", &ExperimentConfig::n_clusters)
        .def_readwrite("instantaneous", &ExperimentConfig::instantaneous)
        .def("set_v", [](ExperimentConfig &c, const std::string &range)
             { std::tie(c.v_min, c.v_max) = parse_v_range(range); }, py::arg("range"), "\"4\" or \"1..8\"");

    m.def("mrt_sweep", [](const ExperimentConfig &c)
          { return run_with_mode(c, Mode::mrt, [](const auto &x) { return to_table(run_mrt_sweep(x)); }); });
    m.def("single_topology", [](const ExperimentConfig &c)
          { return run_with_mode(c, Mode::mrt, [](const auto &x) { return to_table(run_single_topology(x)); }); });
    m.def("bound_table", [](const ExperimentConfig &c)
          { return run_with_mode(c, Mode::bound, [](const auto &x) { return to_table(run_bound_table(x)); }); });
    m.def("vstar", [](const ExperimentConfig &c)
          { return run_with_mode(c, Mode::vstar, [](const auto &x) { return run_vstar(x); }); });
    m.def("grouping_sweep", [](const ExperimentConfig &c)
          { return run_with_mode(c, Mode::group, [](const auto &x) { return to_table(run_grouping_sweep(x)); }); });
    m.def("comparison", [](const ExperimentConfig &c)
          { return run_with_mode(c, Mode::baseline, [](const auto &x) { return to_table(run_comparison(x)); }); });
    m.def("comparison_summary",
          [](const ExperimentConfig &c)
          {
              return run_with_mode(c, Mode::baseline, [](const auto &x) { return summary_table(run_comparison(x)); });
          });
}
