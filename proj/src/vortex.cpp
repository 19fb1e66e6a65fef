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

#include "vortexmc/vortex.hpp"

#include <stdexcept>
#include <string>

namespace vmc {

VortexState sample_initial(int n_vortices, std::uint64_t master_seed, std::uint64_t run) {
    if (n_vortices < 1) throw std::invalid_argument("sample_initial: n_vortices must be >= 1");
    rng::CounterStream xi_stream(master_seed, rng::Purpose::InitialIntensity, run);
    rng::CounterStream pos_stream(master_seed, rng::Purpose::InitialPosition, run);

    VortexState state;
    state.intensities.resize(n_vortices);
    state.positions.resize(2, n_vortices);
    state.displacement = Eigen::Matrix2Xd::Zero(2, n_vortices);
    for (int i = 0; i < n_vortices; ++i) {
        state.intensities[i] = xi_stream.normal(0, static_cast<std::uint64_t>(i));
        state.positions(0, i) = pos_stream.uniform(0, static_cast<std::uint64_t>(i), 0);
        state.positions(1, i) = pos_stream.uniform(0, static_cast<std::uint64_t>(i), 1);
    }
    return state;
}

double min_pair_distance(const VortexState& state) {
    const int n = state.size();
    if (n < 2) throw std::invalid_argument("min_pair_distance: need at least two vortices");
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            best = std::min(best, torus_distance(state.positions.col(i), state.positions.col(j)));
    return best;
}

VortexSimulator::VortexSimulator(const BiotSavartKernel& kernel, NoiseConfig cfg)
    : kernel_(kernel), cfg_(cfg), modes_(lambda_set(cfg.cutoff)),
      eps_(cfg.cutoff >= 1 ? eps_n(cfg.cutoff) : 0.0),
      noise_stream_(cfg.master_seed, rng::Purpose::TransportNoise, cfg.run) {
    if (cfg.dt <= 0.0) throw std::invalid_argument("VortexSimulator: dt must be positive");
    mode_dirs_.reserve(modes_.size());
    for (const auto& k : modes_)
        mode_dirs_.push_back(k.perp().as_vec() / static_cast<double>(k.norm_sq()));
}

Eigen::Matrix2Xd VortexSimulator::interaction_drift(const VortexState& state) const {
    const int n = state.size();
    Eigen::Matrix2Xd drift = Eigen::Matrix2Xd::Zero(2, n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const Eigen::Vector2d d =
                wrap_displacement(state.positions.col(i) - state.positions.col(j));
            if (d[0] == 0.0 && d[1] == 0.0) {
                // A coincident pair only matters if it actually interacts.
                if (state.intensities[i] != 0.0 || state.intensities[j] != 0.0)
                    throw std::runtime_error("interaction_drift: coincident vortices " +
                                             std::to_string(i) + " and " + std::to_string(j));
                continue;
            }
            const Eigen::Vector2d kij = kernel_.eval(d);  // K(X_i - X_j) = -K(X_j - X_i)
            drift.col(i) += state.intensities[j] * kij;
            drift.col(j) -= state.intensities[i] * kij;
        }
    }
    return drift * scale;
}

void VortexSimulator::draw_increments(std::uint64_t step_index, std::vector<double>& dw) const {
    const double sdt = std::sqrt(cfg_.dt);
    dw.resize(modes_.size());
    for (std::size_t k = 0; k < modes_.size(); ++k)
        dw[k] = sdt * noise_stream_.normal(step_index, k);
}

Eigen::Vector2d VortexSimulator::noise_displacement(const Eigen::Vector2d& x,
                                                    const std::vector<double>& dw) const {
    // 2 sqrt2 eps sum_k sigma_k(x) dW_k = 2 eps sum_k (k^perp/|k|^2) e_k(x) dW_k
    if (modes_.empty()) return Eigen::Vector2d::Zero();
    BasisTable table(cfg_.cutoff, x);
    Eigen::Vector2d out = Eigen::Vector2d::Zero();
    for (std::size_t k = 0; k < modes_.size(); ++k)
        out += (table.e_k(modes_[k]) * dw[k]) * mode_dirs_[k];
    return 2.0 * eps_ * out;
}

void VortexSimulator::step(VortexState& state, std::uint64_t step_index) {
    const int n = state.size();
    std::vector<double> dw;
    draw_increments(step_index, dw);

    const Eigen::Matrix2Xd drift = n > 1 ? interaction_drift(state)
                                         : Eigen::Matrix2Xd::Zero(2, n);
    Eigen::Matrix2Xd move(2, n);
    for (int i = 0; i < n; ++i)
        move.col(i) = drift.col(i) * cfg_.dt + noise_displacement(state.positions.col(i), dw);

    if (cfg_.integrator == Integrator::Heun) {
        VortexState predictor = state;
        for (int i = 0; i < n; ++i)
            predictor.positions.col(i) = wrap_point(state.positions.col(i) + move.col(i));
        const Eigen::Matrix2Xd drift2 = n > 1 ? interaction_drift(predictor)
                                              : Eigen::Matrix2Xd::Zero(2, n);
        for (int i = 0; i < n; ++i) {
            const Eigen::Vector2d move2 =
                drift2.col(i) * cfg_.dt + noise_displacement(predictor.positions.col(i), dw);
            move.col(i) = 0.5 * (move.col(i) + move2);
        }
    }

    for (int i = 0; i < n; ++i) {
        state.positions.col(i) = wrap_point(state.positions.col(i) + move.col(i));
        state.displacement.col(i) += move.col(i);
    }
    state.time += cfg_.dt;

    if (n >= 2 && min_pair_distance(state) < cfg_.collision_threshold) {
        ++near_collisions_;
        degenerate_ = true;
    }
}

}  // namespace vmc
