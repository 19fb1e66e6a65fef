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

#include "vortexmc/biot_savart.hpp"

#include <stdexcept>

namespace vmc {

BiotSavartKernel::BiotSavartKernel(KernelConfig cfg) : cfg_(cfg) {
    if (cfg.fourier_cutoff < 1)
        throw std::invalid_argument("BiotSavartKernel: fourier_cutoff must be >= 1");
    if (cfg.grid_resolution != 0 && cfg.grid_resolution < 4 * cfg.fourier_cutoff)
        throw std::invalid_argument("BiotSavartKernel: grid_resolution must be >= 4 * fourier_cutoff");

    for (const auto& k : lambda_set(cfg.fourier_cutoff)) {
        if (!k.positive()) continue;
        const double inv = 1.0 / (kPi * k.norm_sq());
        modes_.push_back({k.k1, k.k2, k.k2 * inv, -k.k1 * inv});
    }

    if (cfg.grid_resolution > 0) {
        const int R = cfg.grid_resolution;
        table_n_ = R;
        table_.assign(static_cast<std::size_t>(R) * R, Eigen::Vector2d::Zero());
        // sin(2 pi k.x) at grid points only takes R distinct phases.
        std::vector<double> sin_tab(R);
        for (int t = 0; t < R; ++t) sin_tab[t] = std::sin(2.0 * kPi * t / R);
        for (int i = 0; i < R; ++i)
            for (int j = 0; j < R; ++j) {
                Eigen::Vector2d v = Eigen::Vector2d::Zero();
                for (const auto& m : modes_) {
                    int t = (m.k1 * i + m.k2 * j) % R;
                    if (t < 0) t += R;
                    const double s = sin_tab[t];
                    v[0] += m.w1 * s;
                    v[1] += m.w2 * s;
                }
                table_[static_cast<std::size_t>(i) * R + j] = v;
            }
    }
}

Eigen::Vector2d BiotSavartKernel::eval_direct(const Eigen::Vector2d& displacement) const {
    const Eigen::Vector2d x = wrap_displacement(displacement);
    if (x[0] == 0.0 && x[1] == 0.0) return Eigen::Vector2d::Zero();
    Eigen::Vector2d v = Eigen::Vector2d::Zero();
    for (const auto& m : modes_) {
        const double s = std::sin(2.0 * kPi * (m.k1 * x[0] + m.k2 * x[1]));
        v[0] += m.w1 * s;
        v[1] += m.w2 * s;
    }
    return v;
}

Eigen::Vector2d BiotSavartKernel::table_lookup(const Eigen::Vector2d& wrapped) const {
    const int R = table_n_;
    const Eigen::Vector2d p = wrap_point(wrapped);  // table is periodic on [0,1)^2
    const double gx = p[0] * R, gy = p[1] * R;
    const int i0 = static_cast<int>(gx) % R, j0 = static_cast<int>(gy) % R;
    const int i1 = (i0 + 1) % R, j1 = (j0 + 1) % R;
    const double fx = gx - std::floor(gx), fy = gy - std::floor(gy);
    const auto& a = table_[static_cast<std::size_t>(i0) * R + j0];
    const auto& b = table_[static_cast<std::size_t>(i1) * R + j0];
    const auto& c = table_[static_cast<std::size_t>(i0) * R + j1];
    const auto& d = table_[static_cast<std::size_t>(i1) * R + j1];
    return (1 - fx) * (1 - fy) * a + fx * (1 - fy) * b + (1 - fx) * fy * c + fx * fy * d;
}

Eigen::Vector2d BiotSavartKernel::eval(const Eigen::Vector2d& displacement) const {
    const Eigen::Vector2d x = wrap_displacement(displacement);
    if (x[0] == 0.0 && x[1] == 0.0) return Eigen::Vector2d::Zero();
    if (table_n_ > 0) return table_lookup(x);
    return eval_direct(x);
}

double BiotSavartKernel::green(const Eigen::Vector2d& displacement) const {
    const Eigen::Vector2d x = wrap_displacement(displacement);
    double g = 0.0;
    for (const auto& m : modes_) {
        const double w = 2.0 * kPi * kPi * (m.k1 * m.k1 + m.k2 * m.k2);
        g -= std::cos(2.0 * kPi * (m.k1 * x[0] + m.k2 * x[1])) / w;
    }
    return g;
}

double BiotSavartKernel::h_phi(WaveVector l, const Eigen::Vector2d& x,
                               const Eigen::Vector2d& y) const {
    const Eigen::Vector2d d = wrap_displacement(x - y);
    if (d[0] == 0.0 && d[1] == 0.0) return 0.0;
    const Eigen::Vector2d grad_diff = e_k_grad(l, x) - e_k_grad(l, y);
    return 0.5 * eval(d).dot(grad_diff);
}

Eigen::Vector2d BiotSavartKernel::velocity_from_spectral(const SpectralField& field,
                                                         const Eigen::Vector2d& x) const {
    if (field.cutoff() > cfg_.fourier_cutoff)
        throw std::invalid_argument("velocity_from_spectral: field support exceeds kernel cutoff");
    Eigen::Vector2d u = Eigen::Vector2d::Zero();
    const auto& modes = field.modes();
    for (std::size_t i = 0; i < modes.size(); ++i) {
        const WaveVector l = modes[i];
        const double c = field.coeffs()[static_cast<Eigen::Index>(i)];
        if (c == 0.0) continue;
        u -= (c * e_k_eval(-l, x) / (2.0 * kPi * l.norm_sq())) * l.perp().as_vec();
    }
    return u;
}

Eigen::Matrix2d BiotSavartKernel::velocity_jacobian(const SpectralField& field,
                                                    const Eigen::Vector2d& x) const {
    if (field.cutoff() > cfg_.fourier_cutoff)
        throw std::invalid_argument("velocity_jacobian: field support exceeds kernel cutoff");
    Eigen::Matrix2d jac = Eigen::Matrix2d::Zero();
    const auto& modes = field.modes();
    for (std::size_t i = 0; i < modes.size(); ++i) {
        const WaveVector l = modes[i];
        const double c = field.coeffs()[static_cast<Eigen::Index>(i)];
        if (c == 0.0) continue;
        const Eigen::Vector2d amp = -(c / (2.0 * kPi * l.norm_sq())) * l.perp().as_vec();
        // grad e_{-l}(x) = -2 pi l e_l(x)
        const Eigen::Vector2d g = -2.0 * kPi * e_k_eval(l, x) * l.as_vec();
        jac += amp * g.transpose();
    }
    return jac;
}

}  // namespace vmc
