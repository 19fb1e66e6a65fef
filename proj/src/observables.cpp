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

#include "vortexmc/observables.hpp"

#include <cmath>
#include <stdexcept>

#include "vortexmc/basis.hpp"

namespace vmc {

double pair(const VortexState& state, WaveVector l) {
    require_nonzero(l, "pair");
    const int n = state.size();
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += state.intensities[i] * e_k_eval(l, state.positions.col(i));
    return sum / std::sqrt(static_cast<double>(n));
}

SpectralField spectral_coeffs(const VortexState& state, int cutoff) {
    SpectralField field(cutoff);
    const int n = state.size();
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    const auto& modes = field.modes();
    for (int i = 0; i < n; ++i) {
        BasisTable table(cutoff, state.positions.col(i));
        const double xi = state.intensities[i];
        for (std::size_t j = 0; j < modes.size(); ++j)
            field.coeffs()[static_cast<Eigen::Index>(j)] += xi * table.e_k(modes[j]);
    }
    field.coeffs() *= scale;
    return field;
}

double sobolev_norm(const SpectralField& field, double s) {
    if (s <= 0.0) throw std::invalid_argument("sobolev_norm: s must be positive");
    double sum = 0.0;
    const auto& modes = field.modes();
    for (std::size_t j = 0; j < modes.size(); ++j) {
        const double c = field.coeffs()[static_cast<Eigen::Index>(j)];
        sum += c * c * std::pow(1.0 + modes[j].norm_sq(), -s);
    }
    return std::sqrt(sum);
}

double quadratic_form(const VortexState& state, WaveVector l, const BiotSavartKernel& kernel) {
    const int n = state.size();
    double sum = 0.0;
    for (int r = 0; r < n; ++r)
        for (int s = r + 1; s < n; ++s)
            sum += 2.0 * state.intensities[r] * state.intensities[s] *
                   kernel.h_phi(l, state.positions.col(r), state.positions.col(s));
    return sum / n;
}

double pair_product(const VortexState& state, WaveVector k, WaveVector l) {
    const int n = state.size();
    double sum = 0.0;
    for (int i = 0; i < n; ++i)
        sum += state.intensities[i] * e_k_eval(k, state.positions.col(i)) *
               e_k_eval(l, state.positions.col(i));
    return sum / std::sqrt(static_cast<double>(n));
}

double r_statistic(const VortexState& state, WaveVector l, WaveVector m, int n) {
    require_nonzero(l, "r_statistic");
    require_nonzero(m, "r_statistic");
    const double delta = (l == m) ? 1.0 : 0.0;
    const int nv = state.size();
    const double scale = 1.0 / std::sqrt(static_cast<double>(nv));

    // Per-atom basis tables cover Lambda_n; e_l, e_m are evaluated directly.
    const auto modes = lambda_set(n);
    std::vector<double> akl(modes.size(), 0.0), akm(modes.size(), 0.0);
    for (int i = 0; i < nv; ++i) {
        BasisTable table(n, state.positions.col(i));
        const double el = e_k_eval(l, state.positions.col(i));
        const double em = e_k_eval(m, state.positions.col(i));
        const double xi = state.intensities[i];
        for (std::size_t j = 0; j < modes.size(); ++j) {
            const double ek = table.e_k(modes[j]);
            akl[j] += xi * ek * el;
            akm[j] += xi * ek * em;
        }
    }
    double sum = 0.0;
    for (std::size_t j = 0; j < modes.size(); ++j) {
        const double c = c_coeff(modes[j], l) * c_coeff(modes[j], m);
        if (c == 0.0) continue;
        sum += c * (akl[j] * scale * akm[j] * scale - delta);
    }
    return sum;
}

double CylindricalFunction::derivative_check(const Eigen::VectorXd& v, double h) const {
    const Eigen::Index d = v.size();
    const Eigen::VectorXd g = grad(v);
    const Eigen::MatrixXd hs = hess(v);
    double worst = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) {
        Eigen::VectorXd vp = v, vm = v;
        vp[i] += h;
        vm[i] -= h;
        worst = std::max(worst, std::abs((f(vp) - f(vm)) / (2 * h) - g[i]));
        for (Eigen::Index j = 0; j < d; ++j) {
            Eigen::VectorXd vpp = vp, vpm = vm;
            vpp[j] += h;
            vpm[j] += h;
            Eigen::VectorXd vmp = vp, vmm = vm;
            vmp[j] -= h;
            vmm[j] -= h;
            const double fd = (f(vpp) - f(vpm) - f(vmp) + f(vmm)) / (4 * h * h);
            worst = std::max(worst, std::abs(fd - hs(i, j)));
        }
    }
    return worst;
}

double generator_apply(const CylindricalFunction& F, const SpectralField& field,
                       const std::function<double(WaveVector)>& quad_form) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(F.index_set.size()));
    for (std::size_t i = 0; i < F.index_set.size(); ++i)
        v[static_cast<Eigen::Index>(i)] = field.at(F.index_set[i]);  // throws outside cutoff

    const Eigen::VectorXd g = F.grad(v);
    const Eigen::MatrixXd h = F.hess(v);
    double out = 0.0;
    for (std::size_t i = 0; i < F.index_set.size(); ++i) {
        const WaveVector l = F.index_set[i];
        const auto ii = static_cast<Eigen::Index>(i);
        out += 4.0 * kPi * kPi * l.norm_sq() * (h(ii, ii) - g[ii] * v[ii]);
        out += g[ii] * quad_form(l);
    }
    return out;
}

double generator_apply(const CylindricalFunction& F, const SpectralField& field,
                       const VortexState& state, const BiotSavartKernel& kernel) {
    return generator_apply(F, field, [&](WaveVector l) {
        return quadratic_form(state, l, kernel);
    });
}

}  // namespace vmc
