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

#include <Eigen/Dense>
#include <compare>
#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace vmc {

/// Nonzero lattice vector indexing one trigonometric basis function.
/// The sign class decides cosine vs sine: k is "positive" iff k1 > 0 or
/// (k1 = 0 and k2 > 0); negation flips the class.
struct WaveVector {
    int k1 = 0;
    int k2 = 0;

    constexpr bool positive() const { return k1 > 0 || (k1 == 0 && k2 > 0); }
    constexpr int norm_sq() const { return k1 * k1 + k2 * k2; }
    constexpr WaveVector perp() const { return {k2, -k1}; }  // k^perp
    constexpr WaveVector operator-() const { return {-k1, -k2}; }
    constexpr WaveVector operator+(WaveVector o) const {
        return {k1 + o.k1, k2 + o.k2};
    }
    constexpr WaveVector operator-(WaveVector o) const {
        return {k1 - o.k1, k2 - o.k2};
    }

    Eigen::Vector2d as_vec() const {
        return {static_cast<double>(k1), static_cast<double>(k2)};
    }

    // Lexicographic on (k1, k2); the canonical ordering of Lambda_n.
    friend constexpr auto operator<=>(WaveVector, WaveVector) = default;
};

inline WaveVector require_nonzero(WaveVector k, const char* who) {
    if (k.k1 == 0 && k.k2 == 0)
        throw std::invalid_argument(std::string(who) + ": zero wave vector");
    return k;
}

/// All nonzero lattice vectors with |k| <= n, in lexicographic order.
/// n = 0 yields the empty set.
inline std::vector<WaveVector> lambda_set(int n) {
    if (n < 0) throw std::invalid_argument("lambda_set: n < 0");
    std::vector<WaveVector> out;
    for (int a = -n; a <= n; ++a)
        for (int b = -n; b <= n; ++b) {
            if (a == 0 && b == 0) continue;
            if (a * a + b * b <= n * n) out.push_back({a, b});
        }
    return out;
}

/// eps_n = (sum_{k in Lambda_n} |k|^-2)^{-1/2}, the transport-noise scaling.
inline double eps_n(int n) {
    if (n < 1) throw std::invalid_argument("eps_n: n must be >= 1");
    double sum = 0.0;
    for (const auto& k : lambda_set(n)) sum += 1.0 / k.norm_sq();
    return 1.0 / std::sqrt(sum);
}

/// Noise cutoff: the index set Lambda_n and its scaling eps_n.
struct SpectralCutoff {
    int n;
    std::vector<WaveVector> modes;
    double eps;

    explicit SpectralCutoff(int n_) : n(n_), modes(lambda_set(n_)), eps(eps_n(n_)) {}
};

}  // namespace vmc
