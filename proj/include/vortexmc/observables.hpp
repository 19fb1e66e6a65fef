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
#include <functional>
#include <vector>

#include "vortexmc/biot_savart.hpp"
#include "vortexmc/spectral_field.hpp"
#include "vortexmc/vortex.hpp"

namespace vmc {

/// <omega^N, e_l> = N^{-1/2} sum_i xi_i e_l(X_i).
double pair(const VortexState& state, WaveVector l);

/// All coefficients <omega^N, e_l> for l in Lambda_M.
SpectralField spectral_coeffs(const VortexState& state, int cutoff);

/// Truncated negative-Sobolev surrogate
/// (sum_{l in Lambda_M} (1+|l|^2)^{-s} coeff_l^2)^{1/2}.
double sobolev_norm(const SpectralField& field, double s);

/// <omega tensor omega, H_{e_l}> = (1/N) sum_{r != s} xi_r xi_s H_{e_l}(X_r, X_s).
double quadratic_form(const VortexState& state, WaveVector l, const BiotSavartKernel& kernel);

/// <omega, e_k e_l> = N^{-1/2} sum_i xi_i e_k(X_i) e_l(X_i), computed on atoms.
double pair_product(const VortexState& state, WaveVector k, WaveVector l);

/// R_{l,m}(omega) = sum_{k in Lambda_n} C_{k,l} C_{k,m}
///                  (<omega, e_k e_l> <omega, e_k e_m> - delta_{l,m}).
double r_statistic(const VortexState& state, WaveVector l, WaveVector m, int n);

/// F(omega) = f(<omega, e_l>; l in Lambda) with user-supplied gradient and
/// Hessian in the coordinates, in the order of `index_set`.
struct CylindricalFunction {
    std::vector<WaveVector> index_set;
    std::function<double(const Eigen::VectorXd&)> f;
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> grad;
    std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> hess;

    /// Max deviation of the supplied grad/hess from central finite
    /// differences at v; a sanity check for hand-written derivatives.
    double derivative_check(const Eigen::VectorXd& v, double h = 1e-4) const;
};

/// L_inf F = 4 pi^2 sum_l |l|^2 [f_{l,l} - f_l <omega,e_l>]
///           + sum_l f_l <omega tensor omega, H_{e_l}>,
/// with the quadratic form supplied per mode (particle: quadratic_form;
/// Galerkin: the spectral nonlinearity).
double generator_apply(const CylindricalFunction& F, const SpectralField& field,
                       const std::function<double(WaveVector)>& quad_form);

/// Particle-state convenience: the quadratic form is evaluated on atoms.
double generator_apply(const CylindricalFunction& F, const SpectralField& field,
                       const VortexState& state, const BiotSavartKernel& kernel);

}  // namespace vmc
