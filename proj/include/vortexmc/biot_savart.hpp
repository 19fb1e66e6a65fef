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
#include <vector>

#include "vortexmc/basis.hpp"
#include "vortexmc/spectral_field.hpp"

namespace vmc {

/// Wrap a displacement to the fundamental cell [-1/2, 1/2)^2.
inline Eigen::Vector2d wrap_displacement(Eigen::Vector2d d) {
    for (int i = 0; i < 2; ++i) {
        d[i] -= std::floor(d[i] + 0.5);
        if (d[i] >= 0.5) d[i] -= 1.0;  // guard against floor rounding at +1/2
    }
    return d;
}

/// Wrap a point to the torus cell [0,1)^2.
inline Eigen::Vector2d wrap_point(Eigen::Vector2d x) {
    for (int i = 0; i < 2; ++i) {
        x[i] -= std::floor(x[i]);
        if (x[i] >= 1.0) x[i] -= 1.0;
        if (x[i] < 0.0) x[i] += 1.0;
    }
    return x;
}

/// Torus distance between two points.
inline double torus_distance(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    return wrap_displacement(a - b).norm();
}

struct KernelConfig {
    int fourier_cutoff = 32;  // modes |k| <= M_K in the kernel synthesis
    int grid_resolution = 0;  // 0 = no interpolation table; else >= 4 * M_K
};

/// Periodic Biot-Savart kernel K = grad^perp G with Delta G = delta - 1,
/// synthesized as a truncated sine series
///   K(x) = sum_{k in Z^2_+, |k| <= M_K} (k^perp / (pi |k|^2)) sin(2 pi k.x).
/// K(0) = (0,0) by the self-interaction convention. With grid_resolution set,
/// eval() reads a bilinear table; eval_direct() always sums the series.
class BiotSavartKernel {
public:
    explicit BiotSavartKernel(KernelConfig cfg);

    const KernelConfig& config() const { return cfg_; }

    Eigen::Vector2d eval_direct(const Eigen::Vector2d& displacement) const;
    Eigen::Vector2d eval(const Eigen::Vector2d& displacement) const;

    /// Periodic Green function of the same truncation,
    ///   G(x) = -sum_{k in Z^2_+, |k| <= M_K} cos(2 pi k.x) / (2 pi^2 |k|^2),
    /// so that K = (d2 G, -d1 G). Used for the interaction Hamiltonian.
    double green(const Eigen::Vector2d& displacement) const;

    /// H_phi(x,y) = (1/2) K(x-y) . (grad phi(x) - grad phi(y)) with phi = e_l;
    /// zero on the diagonal, symmetric in (x,y).
    double h_phi(WaveVector l, const Eigen::Vector2d& x, const Eigen::Vector2d& y) const;

    /// u(x) = sum_l coeff_l (K * e_l)(x), with the closed-form single-mode
    /// convolution (K * e_l) = -(l^perp / (2 pi |l|^2)) e_{-l}.
    Eigen::Vector2d velocity_from_spectral(const SpectralField& field,
                                           const Eigen::Vector2d& x) const;

    /// Closed-form Jacobian du_i/dx_j of the synthesized velocity.
    Eigen::Matrix2d velocity_jacobian(const SpectralField& field,
                                      const Eigen::Vector2d& x) const;

private:
    struct Mode {
        int k1, k2;
        double w1, w2;  // k^perp / (pi |k|^2)
    };

    KernelConfig cfg_;
    std::vector<Mode> modes_;  // positive class, |k| <= M_K
    int table_n_ = 0;
    std::vector<Eigen::Vector2d> table_;  // row-major on [0,1)^2

    Eigen::Vector2d table_lookup(const Eigen::Vector2d& wrapped) const;
};

}  // namespace vmc
