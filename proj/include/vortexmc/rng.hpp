/*
   Copyright 2026 the vortexmc authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cmath>
#include <cstdint>

namespace vmc {

/// Counter-based random streams: every variate is a pure function of
/// (master seed, purpose, run, step, index), so ensembles reproduce
/// bit-identically regardless of worker count or completion order.
namespace rng {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t combine(std::uint64_t h, std::uint64_t v) {
    return splitmix64(h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
}

// Stream purposes; keeps e.g. initial-condition draws disjoint from the
// Brownian increments of the same run.
enum class Purpose : std::uint64_t {
    InitialIntensity = 1,
    InitialPosition = 2,
    TransportNoise = 3,
    GalerkinInit = 4,
    GalerkinNoise = 5,
};

class CounterStream {
public:
    CounterStream(std::uint64_t master_seed, Purpose purpose, std::uint64_t run)
        : base_(combine(combine(splitmix64(master_seed),
                                static_cast<std::uint64_t>(purpose)),
                        run)) {}

    std::uint64_t bits(std::uint64_t step, std::uint64_t index,
                       std::uint64_t lane = 0) const {
        return combine(combine(combine(base_, step), index), lane);
    }

    /// Uniform in [0,1).
    double uniform(std::uint64_t step, std::uint64_t index,
                   std::uint64_t lane = 0) const {
        return static_cast<double>(bits(step, index, lane) >> 11) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller; lane pairs are drawn internally.
    double normal(std::uint64_t step, std::uint64_t index) const {
        // u1 in (0,1] so the log is finite.
        const double u1 =
            (static_cast<double>(bits(step, index, 0) >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = uniform(step, index, 1);
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * 3.14159265358979323846 * u2);
    }

private:
    std::uint64_t base_;
};

}  // namespace rng
}  // namespace vmc
