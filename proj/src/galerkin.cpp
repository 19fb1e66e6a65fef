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

#include "vortexmc/galerkin.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vortexmc/basis.hpp"

namespace vmc {

SpectralField init_white_noise(int cutoff, std::uint64_t master_seed, std::uint64_t run) {
    SpectralField field(cutoff);
    rng::CounterStream stream(master_seed, rng::Purpose::GalerkinInit, run);
    for (Eigen::Index i = 0; i < field.coeffs().size(); ++i)
        field.coeffs()[i] = stream.normal(0, static_cast<std::uint64_t>(i));
    return field;
}

GalerkinSolver::GalerkinSolver(GalerkinConfig cfg)
    : cfg_(cfg), modes_(lambda_set(cfg.cutoff)),
      noise_stream_(cfg.master_seed, rng::Purpose::GalerkinNoise, cfg.run) {
    if (cfg.cutoff < 1) throw std::invalid_argument("GalerkinSolver: cutoff must be >= 1");
    if (cfg.dt <= 0.0) throw std::invalid_argument("GalerkinSolver: dt must be positive");
    // Stability guard for the explicit bilinear substep.
    if (cfg.nonlinearity && cfg.dt * 4.0 * kPi * kPi * cfg.cutoff * cfg.cutoff >= 1.0)
        throw std::invalid_argument("GalerkinSolver: dt * 4 pi^2 M^2 must be < 1");

    decay_.reserve(modes_.size());
    noise_std_.reserve(modes_.size());
    for (const auto& l : modes_) {
        const double lambda = 4.0 * kPi * kPi * l.norm_sq();
        const double d = std::exp(-lambda * cfg.dt);
        decay_.push_back(d);
        noise_std_.push_back(std::sqrt(1.0 - d * d));
    }

    // Triad table: B_l = sum_{m,p} omega_m omega_p C_{m,p} int e_{-m} e_{-p} e_l.
    // The integral vanishes unless l is one of +-(m+p), +-(m-p).
    SpectralField layout(cfg.cutoff);
    for (std::size_t im = 0; im < modes_.size(); ++im) {
        for (std::size_t ip = 0; ip < modes_.size(); ++ip) {
            const WaveVector m = modes_[im], p = modes_[ip];
            const double c = c_coeff(m, p);
            if (c == 0.0) continue;
            WaveVector candidates[4] = {m + p, -(m + p), m - p, p - m};
            for (const auto& l : candidates) {
                if (l.k1 == 0 && l.k2 == 0) continue;
                if (l.norm_sq() > cfg.cutoff * cfg.cutoff) continue;
                bool seen = false;
                for (const auto& prev : candidates) {
                    if (&prev == &l) break;
                    if (prev == l) seen = true;
                }
                if (seen) continue;
                const double integ = trig_product_integral({-m, -p, l});
                if (integ == 0.0) continue;
                triads_.push_back({static_cast<std::uint32_t>(im), static_cast<std::uint32_t>(ip),
                                   static_cast<std::uint32_t>(layout.index_of(l)), c * integ});
            }
        }
    }
}

SpectralField GalerkinSolver::nonlinear_term(const SpectralField& field) const {
    if (field.cutoff() != cfg_.cutoff)
        throw std::invalid_argument("nonlinear_term: field cutoff mismatch");
    SpectralField out(cfg_.cutoff);
    const auto& w = field.coeffs();
    auto& b = out.coeffs();
    for (const auto& t : triads_) b[t.l] += t.coeff * w[t.m] * w[t.p];
    return out;
}

void GalerkinSolver::step(SpectralField& field, std::uint64_t step_index) const {
    auto& w = field.coeffs();
    if (cfg_.nonlinearity) {
        const SpectralField b = nonlinear_term(field);
        w += cfg_.dt * b.coeffs();
    }
    for (std::size_t i = 0; i < modes_.size(); ++i) {
        const auto ii = static_cast<Eigen::Index>(i);
        double v = w[ii] * decay_[i];
        if (cfg_.noise) v += noise_std_[i] * noise_stream_.normal(step_index, i);
        w[ii] = v;
    }
    if (!w.allFinite())
        throw std::runtime_error("GalerkinSolver::step: non-finite coefficients at step " +
                                 std::to_string(step_index));
}

}  // namespace vmc
