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
#ifndef VCDAS_RANDOM_HPP
#define VCDAS_RANDOM_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace vcdas
{

/// Seeded random stream used everywhere an operation needs randomness.
using RandomStream = std::mt19937_64;

/// splitmix64 finalizer, a bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z)
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-based seed splitting: the same (master, path) always yields the
/// same sub-seed, independent of the order in which sub-streams are created.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path);

inline RandomStream make_stream(std::uint64_t master, std::initializer_list<std::uint64_t> path)
{
    return RandomStream(derive_seed(master, path));
}

/// Stream tags keep sub-seeds of different subsystems apart.
enum class StreamTag : std::uint64_t
{
    topology = 1,
    fading = 2,
    bound = 3,
    zfbf = 4,
    baseline = 5,
};

constexpr std::uint64_t tag(StreamTag t) { return static_cast<std::uint64_t>(t); }

inline double uniform01(RandomStream &rng)
{
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

/// Unit-variance circularly symmetric complex Gaussian, CN(0, 1).
class ComplexGaussian
{
public:
    std::complex<double> operator()(RandomStream &rng)
    {
        const double re = normal_(rng);
        const double im = normal_(rng);
        return {re, im};
    }

private:
    std::normal_distribution<double> normal_{0.0, std::sqrt(0.5)};
};

} // namespace vcdas

#endif
