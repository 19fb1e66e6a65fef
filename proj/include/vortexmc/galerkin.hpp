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

#include <cstdint>
#include <vector>

#include "vortexmc/rng.hpp"
#include "vortexmc/spectral_field.hpp"

namespace vmc {

struct GalerkinConfig {
    int cutoff = 5;  // modes Lambda_M
    double dt = 2e-4;
    std::uint64_t master_seed = 0;
    std::uint64_t run = 0;
    bool nonlinearity = true;
    bool noise = true;
};

/// omega_l iid N(0,1) on Lambda_M: a sample of the truncated white noise.
SpectralField init_white_noise(int cutoff, std::uint64_t master_seed, std::uint64_t run);

/// Truncated spectral solver for the vorticity-form stochastic Navier-Stokes
/// equation: per mode
///   d omega_l = (B_l - 4 pi^2 |l|^2 omega_l) dt + 2 sqrt2 pi |l| d beta_l,
/// stepped by exact Ornstein-Uhlenbeck for the linear+noise part composed
/// with explicit Euler for the bilinear term B. The noise amplitude makes
/// the linearized per-mode stationary variance exactly 1.
class GalerkinSolver {
public:
    explicit GalerkinSolver(GalerkinConfig cfg);

    const GalerkinConfig& config() const { return cfg_; }

    /// B_l = -<u(omega) . grad omega, e_l> by exact triad convolution over
    /// Lambda_M pairs; bilinear in the field, enstrophy-orthogonal.
    SpectralField nonlinear_term(const SpectralField& field) const;

    /// One step; throws on non-finite values.
    void step(SpectralField& field, std::uint64_t step_index) const;

    /// Copy with a different run id (fresh noise stream, same triad table).
    GalerkinSolver with_run(std::uint64_t run) const {
        GalerkinSolver copy = *this;
        copy.cfg_.run = run;
        copy.noise_stream_ = rng::CounterStream(cfg_.master_seed, rng::Purpose::GalerkinNoise, run);
        return copy;
    }

private:
    struct Triad {
        std::uint32_t m, p, l;
        double coeff;  // C_{m,p} * int e_{-m} e_{-p} e_l
    };

    GalerkinConfig cfg_;
    std::vector<WaveVector> modes_;
    std::vector<Triad> triads_;
    std::vector<double> decay_;      // exp(-4 pi^2 |l|^2 dt)
    std::vector<double> noise_std_;  // sqrt(1 - decay^2)
    rng::CounterStream noise_stream_;
};

}  // namespace vmc
