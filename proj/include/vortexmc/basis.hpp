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
#include <span>

#include "vortexmc/wave_vector.hpp"

namespace vmc {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSqrt2 = 1.41421356237309504880;

/// e_k(x) = sqrt(2) cos(2 pi k.x) for the positive class,
///          sqrt(2) sin(2 pi k.x) for the negative class.
inline double e_k_eval(WaveVector k, const Eigen::Vector2d& x) {
    const double phase = 2.0 * kPi * (k.k1 * x[0] + k.k2 * x[1]);
    return kSqrt2 * (k.positive() ? std::cos(phase) : std::sin(phase));
}

/// grad e_k(x) = 2 pi k e_{-k}(x), uniformly over both classes.
inline Eigen::Vector2d e_k_grad(WaveVector k, const Eigen::Vector2d& x) {
    return 2.0 * kPi * e_k_eval(-k, x) * k.as_vec();
}

/// Hessian of e_k: -4 pi^2 (k tensor k) e_k(x).
inline Eigen::Matrix2d e_k_hess(WaveVector k, const Eigen::Vector2d& x) {
    const Eigen::Vector2d kv = k.as_vec();
    return -4.0 * kPi * kPi * e_k_eval(k, x) * (kv * kv.transpose());
}

/// Transport field sigma_k(x) = (1/sqrt(2)) (k^perp / |k|^2) e_k(x).
inline Eigen::Vector2d sigma_k_eval(WaveVector k, const Eigen::Vector2d& x) {
    require_nonzero(k, "sigma_k_eval");
    return (e_k_eval(k, x) / (kSqrt2 * k.norm_sq())) * k.perp().as_vec();
}

/// C_{k,l} = k^perp . l / |k|^2.
inline double c_coeff(WaveVector k, WaveVector l) {
    require_nonzero(k, "c_coeff");
    require_nonzero(l, "c_coeff");
    return static_cast<double>(k.k2 * l.k1 - k.k1 * l.k2) / k.norm_sq();
}

/// Exact integral over T^2 of a product of basis functions, by expanding
/// every factor into complex exponentials and keeping the zero-frequency
/// coefficient. No quadrature. Up to 8 factors; the empty product is 1.
double trig_product_integral(std::span<const WaveVector> factors);

inline double trig_product_integral(std::initializer_list<WaveVector> factors) {
    return trig_product_integral(std::span<const WaveVector>(factors.begin(), factors.size()));
}

/// Tabulated cos/sin of 2 pi j x for j = 0..n, one axis; lets e_k at a fixed
/// point be evaluated for a whole Lambda_n with O(n) trig calls.
class BasisTable {
public:
    BasisTable(int n, const Eigen::Vector2d& x) : n_(n), c_(2 * (n + 1)), s_(2 * (n + 1)) {
        for (int axis = 0; axis < 2; ++axis)
            for (int j = 0; j <= n; ++j) {
                const double a = 2.0 * kPi * j * x[axis];
                c_[axis * (n + 1) + j] = std::cos(a);
                s_[axis * (n + 1) + j] = std::sin(a);
            }
    }

    double e_k(WaveVector k) const {
        const double c1 = c_[std::abs(k.k1)];
        const double s1 = k.k1 < 0 ? -s_[std::abs(k.k1)] : s_[std::abs(k.k1)];
        const double c2 = c_[(n_ + 1) + std::abs(k.k2)];
        const double s2 = k.k2 < 0 ? -s_[(n_ + 1) + std::abs(k.k2)] : s_[(n_ + 1) + std::abs(k.k2)];
        const double cos_ph = c1 * c2 - s1 * s2;
        const double sin_ph = s1 * c2 + c1 * s2;
        return kSqrt2 * (k.positive() ? cos_ph : sin_ph);
    }

private:
    int n_;
    std::vector<double> c_, s_;
};

}  // namespace vmc
