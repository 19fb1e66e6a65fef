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
#include <cstdint>

#include "vortexmc/biot_savart.hpp"
#include "vortexmc/rng.hpp"
#include "vortexmc/wave_vector.hpp"

namespace vmc {

/// N intensities and N torus positions; the empirical vorticity is
/// omega^N = N^{-1/2} sum_i xi_i delta_{X_i}. Intensities never change along
/// a trajectory. `displacement` accumulates unwrapped motion for MSD
/// diagnostics.
struct VortexState {
    Eigen::VectorXd intensities;
    Eigen::Matrix2Xd positions;     // columns in [0,1)^2
    Eigen::Matrix2Xd displacement;  // cumulative, unwrapped
    double time = 0.0;

    int size() const { return static_cast<int>(intensities.size()); }
};

/// xi_i iid N(0,1), X_i iid uniform on the torus, families independent.
VortexState sample_initial(int n_vortices, std::uint64_t master_seed, std::uint64_t run);

enum class Integrator { EulerMaruyama, Heun };

struct NoiseConfig {
    int cutoff = 8;  // the n of Lambda_n; 0 disables the transport noise
    std::uint64_t master_seed = 0;
    std::uint64_t run = 0;
    double dt = 1e-3;
    Integrator integrator = Integrator::EulerMaruyama;
    double collision_threshold = 1e-5;  // torus distance flagged as near-collision
};

/// Minimum torus distance over all pairs; requires N >= 2.
double min_pair_distance(const VortexState& state);

/// One N-vortex trajectory under interaction drift and common transport
/// noise. Every vortex in a step sees the same Brownian increments, drawn
/// from the counter stream at (master_seed, run, step, mode).
class VortexSimulator {
public:
    VortexSimulator(const BiotSavartKernel& kernel, NoiseConfig cfg);

    /// b_i = N^{-1/2} sum_{j != i} xi_j K(X_i - X_j). Throws on an exactly
    /// coincident pair, naming the indices.
    Eigen::Matrix2Xd interaction_drift(const VortexState& state) const;

    /// Advance by dt using the configured integrator. `step_index` addresses
    /// the noise increments; replaying the same indices replays the noise.
    void step(VortexState& state, std::uint64_t step_index);

    const NoiseConfig& config() const { return cfg_; }
    const std::vector<WaveVector>& noise_modes() const { return modes_; }
    double eps() const { return eps_; }

    bool degenerate() const { return degenerate_; }
    std::uint64_t near_collision_steps() const { return near_collisions_; }
    void reset_diagnostics() {
        degenerate_ = false;
        near_collisions_ = 0;
    }

private:
    const BiotSavartKernel& kernel_;
    NoiseConfig cfg_;
    std::vector<WaveVector> modes_;           // Lambda_n, lexicographic
    std::vector<Eigen::Vector2d> mode_dirs_;  // k^perp / |k|^2 per mode
    double eps_ = 0.0;
    rng::CounterStream noise_stream_;

    bool degenerate_ = false;
    std::uint64_t near_collisions_ = 0;

    void draw_increments(std::uint64_t step_index, std::vector<double>& dw) const;
    Eigen::Vector2d noise_displacement(const Eigen::Vector2d& x,
                                       const std::vector<double>& dw) const;
};

}  // namespace vmc
