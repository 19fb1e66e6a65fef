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

#include <optional>
#include <vector>

#include "vortexmc/wave_vector.hpp"

namespace vmc {

/// Symmetric kernel f(x,y) as a finite sum of separable basis products
/// c * e_p(x) e_q(y); an absent factor stands for the constant 1 (so the
/// single term {1, nullopt, nullopt} is f == 1). Construction symmetrizes.
class SymmetricKernelSpec {
public:
    struct Term {
        double coeff;
        std::optional<WaveVector> x_factor;
        std::optional<WaveVector> y_factor;
    };

    static SymmetricKernelSpec from_terms(std::vector<Term> terms);
    static SymmetricKernelSpec constant(double c);
    /// c * e_a(x) e_b(y), symmetrized.
    static SymmetricKernelSpec product(double c, WaveVector a, WaveVector b);

    const std::vector<Term>& terms() const { return terms_; }
    SymmetricKernelSpec scaled(double s) const;

    double eval(const Eigen::Vector2d& x, const Eigen::Vector2d& y) const;

    double diag_integral() const;         // int f(x,x) dx
    double diag_square_integral() const;  // int f(x,x)^2 dx
    double double_square_integral() const;  // int int f(x,y)^2 dx dy

private:
    std::vector<Term> terms_;
};

/// Exact Gaussian-ensemble second moment of <omega^N tensor omega^N, f>:
///   (3/N) int f(x,x)^2 + ((N-1)/N) (int f(x,x))^2 + (2(N-1)/N) int int f^2,
/// all integrals exact in the trigonometric representation.
double exact_second_moment(const SymmetricKernelSpec& f, int n_vortices);

/// Exact E[R_{l,m}^2] over the initial ensemble of n_vortices vortices, via
/// the separate S-term (l != m) / J-term (l = m) decompositions. max_n guards
/// the |Lambda_n|^2 pair sum.
double exact_r_second_moment(WaveVector l, WaveVector m, int n, int n_vortices,
                             int max_n = 16);

/// Same moment by a single generic Isserlis-Wick pairing expansion; an
/// independent route used to cross-check the case-split path.
double exact_r_second_moment_wick(WaveVector l, WaveVector m, int n, int n_vortices,
                                  int max_n = 16);

}  // namespace vmc
