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

#include "vortexmc/wick.hpp"

#include <cmath>
#include <stdexcept>

#include "vortexmc/basis.hpp"

namespace vmc {
namespace {

// Integral of a product of basis factors where each factor is optional
// (absent = the constant 1).
double integral(std::initializer_list<std::optional<WaveVector>> factors) {
    WaveVector buf[8];
    std::size_t m = 0;
    for (const auto& f : factors)
        if (f) buf[m++] = *f;
    return trig_product_integral(std::span<const WaveVector>(buf, m));
}

void check_budget(int n, int max_n) {
    if (n < 1) throw std::invalid_argument("exact_r_second_moment: n must be >= 1");
    if (n > max_n)
        throw std::invalid_argument(
            "exact_r_second_moment: cutoff n = " + std::to_string(n) +
            " exceeds the pair-sum budget (max_n = " + std::to_string(max_n) +
            "); raise max_n explicitly if the |Lambda_n|^2 cost is acceptable");
}

}  // namespace

SymmetricKernelSpec SymmetricKernelSpec::from_terms(std::vector<Term> terms) {
    SymmetricKernelSpec spec;
    spec.terms_.reserve(2 * terms.size());
    for (const auto& t : terms) {
        spec.terms_.push_back({0.5 * t.coeff, t.x_factor, t.y_factor});
        spec.terms_.push_back({0.5 * t.coeff, t.y_factor, t.x_factor});
    }
    return spec;
}

SymmetricKernelSpec SymmetricKernelSpec::constant(double c) {
    return from_terms({{c, std::nullopt, std::nullopt}});
}

SymmetricKernelSpec SymmetricKernelSpec::product(double c, WaveVector a, WaveVector b) {
    return from_terms({{c, a, b}});
}

SymmetricKernelSpec SymmetricKernelSpec::scaled(double s) const {
    SymmetricKernelSpec out = *this;
    for (auto& t : out.terms_) t.coeff *= s;
    return out;
}

double SymmetricKernelSpec::eval(const Eigen::Vector2d& x, const Eigen::Vector2d& y) const {
    double sum = 0.0;
    for (const auto& t : terms_)
        sum += t.coeff * (t.x_factor ? e_k_eval(*t.x_factor, x) : 1.0) *
               (t.y_factor ? e_k_eval(*t.y_factor, y) : 1.0);
    return sum;
}

double SymmetricKernelSpec::diag_integral() const {
    double sum = 0.0;
    for (const auto& t : terms_) sum += t.coeff * integral({t.x_factor, t.y_factor});
    return sum;
}

double SymmetricKernelSpec::diag_square_integral() const {
    double sum = 0.0;
    for (const auto& a : terms_)
        for (const auto& b : terms_)
            sum += a.coeff * b.coeff *
                   integral({a.x_factor, a.y_factor, b.x_factor, b.y_factor});
    return sum;
}

double SymmetricKernelSpec::double_square_integral() const {
    double sum = 0.0;
    for (const auto& a : terms_)
        for (const auto& b : terms_)
            sum += a.coeff * b.coeff * integral({a.x_factor, b.x_factor}) *
                   integral({a.y_factor, b.y_factor});
    return sum;
}

double exact_second_moment(const SymmetricKernelSpec& f, int n_vortices) {
    if (n_vortices < 1) throw std::invalid_argument("exact_second_moment: n_vortices must be >= 1");
    const double n = n_vortices;
    const double diag = f.diag_integral();
    return 3.0 / n * f.diag_square_integral() + (n - 1.0) / n * diag * diag +
           2.0 * (n - 1.0) / n * f.double_square_integral();
}

double exact_r_second_moment(WaveVector l, WaveVector m, int n, int n_vortices, int max_n) {
    check_budget(n, max_n);
    if (n_vortices < 1) throw std::invalid_argument("exact_r_second_moment: n_vortices >= 1");
    require_nonzero(l, "exact_r_second_moment");
    require_nonzero(m, "exact_r_second_moment");

    const auto modes = lambda_set(n);
    const double nv = n_vortices;
    const double one_minus = 1.0 - 1.0 / nv;

    if (l != m) {
        // E R^2 = S1 + S2 + S3, one term per Wick pairing.
        double s1 = 0.0, s2 = 0.0, s3 = 0.0;
        std::vector<double> ck(modes.size()), diag4(modes.size());
        for (std::size_t i = 0; i < modes.size(); ++i) {
            ck[i] = c_coeff(modes[i], l) * c_coeff(modes[i], m);
            diag4[i] = trig_product_integral({modes[i], modes[i], l, m});  // int e_k^2 e_l e_m
        }
        for (std::size_t i = 0; i < modes.size(); ++i) {
            if (ck[i] == 0.0) continue;
            const WaveVector k = modes[i];
            for (std::size_t j = 0; j < modes.size(); ++j) {
                if (ck[j] == 0.0) continue;
                const WaveVector kp = modes[j];
                const double w = ck[i] * ck[j];
                const double i8 =
                    trig_product_integral({k, k, kp, kp, l, l, m, m}) / nv;
                s1 += w * (one_minus * diag4[i] * diag4[j] + i8);
                s2 += w * (one_minus * trig_product_integral({k, kp, l, l}) *
                               trig_product_integral({k, kp, m, m}) +
                           i8);
                const double cross = trig_product_integral({k, kp, l, m});
                s3 += w * (one_minus * cross * cross + i8);
            }
        }
        return s1 + s2 + s3;
    }

    // l = m: E R^2 = sum_{k,k'} C_{k,l}^2 C_{k',l}^2 (J1 + J2) - (1/4) eps^-4 |l|^4.
    std::vector<double> c2(modes.size()), diag(modes.size());
    double c2_sum = 0.0;
    for (std::size_t i = 0; i < modes.size(); ++i) {
        const double c = c_coeff(modes[i], l);
        c2[i] = c * c;
        c2_sum += c2[i];
        diag[i] = trig_product_integral({modes[i], modes[i], l, l});  // int e_k^2 e_l^2
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < modes.size(); ++i) {
        if (c2[i] == 0.0) continue;
        const WaveVector k = modes[i];
        for (std::size_t j = 0; j < modes.size(); ++j) {
            if (c2[j] == 0.0) continue;
            const WaveVector kp = modes[j];
            const double i8 = trig_product_integral({k, k, kp, kp, l, l, l, l});
            const double cross = trig_product_integral({k, kp, l, l});
            const double j1 = one_minus * diag[i] * diag[j] + i8 / nv;
            const double j2 = 2.0 * one_minus * cross * cross + 2.0 * i8 / nv;
            sum += c2[i] * c2[j] * (j1 + j2);
        }
    }
    // sum_k C_{k,l}^2 = (1/2) eps_n^-2 |l|^2, so the subtracted square is c2_sum^2.
    return sum - c2_sum * c2_sum;
}

double exact_r_second_moment_wick(WaveVector l, WaveVector m, int n, int n_vortices, int max_n) {
    check_budget(n, max_n);
    if (n_vortices < 1) throw std::invalid_argument("exact_r_second_moment_wick: n_vortices >= 1");
    const auto modes = lambda_set(n);
    const double nv = n_vortices;
    const double one_minus = 1.0 - 1.0 / nv;
    const double delta = (l == m) ? 1.0 : 0.0;

    std::vector<double> ck(modes.size()), mean_a(modes.size());
    for (std::size_t i = 0; i < modes.size(); ++i) {
        ck[i] = c_coeff(modes[i], l) * c_coeff(modes[i], m);
        mean_a[i] = trig_product_integral({modes[i], modes[i], l, m});  // E A_k
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < modes.size(); ++i) {
        if (ck[i] == 0.0) continue;
        const WaveVector k = modes[i];
        for (std::size_t j = 0; j < modes.size(); ++j) {
            if (ck[j] == 0.0) continue;
            const WaveVector kp = modes[j];
            // A_k = <w, e_k e_l><w, e_k e_m>; pairings of the four factors
            // f1 = e_k e_l, f2 = e_k e_m, f3 = e_k' e_l, f4 = e_k' e_m.
            const double p12_34 = mean_a[i] * mean_a[j];
            const double p13_24 = trig_product_integral({k, kp, l, l}) *
                                  trig_product_integral({k, kp, m, m});
            const double p14_23 = trig_product_integral({k, kp, l, m}) *
                                  trig_product_integral({k, kp, m, l});
            const double i8 = trig_product_integral({k, k, kp, kp, l, l, m, m});
            const double e_ak_akp = one_minus * (p12_34 + p13_24 + p14_23) + 3.0 * i8 / nv;
            sum += ck[i] * ck[j] *
                   (e_ak_akp - delta * (mean_a[i] + mean_a[j]) + delta * delta);
        }
    }
    return sum;
}

}  // namespace vmc
