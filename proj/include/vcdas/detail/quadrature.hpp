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
#ifndef VCDAS_DETAIL_QUADRATURE_HPP
#define VCDAS_DETAIL_QUADRATURE_HPP

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>

namespace vcdas::detail
{

template <class F>
double integrate_log_axis(F &&f, double log_lo, double log_hi)
{
    auto g = [&](double s)
    {
        const double t = std::exp(s);
        return f(t) * t;
    };
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, log_lo, log_hi, 20, 1e-13);
}

} // namespace vcdas::detail

#endif
