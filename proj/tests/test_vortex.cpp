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

#include <doctest.h>

#include <cmath>

#include "vortexmc/vortex.hpp"

using namespace vmc;
using Eigen::Vector2d;

TEST_CASE("initial samples are deterministic per (seed, run) and valid") {
    const auto a = sample_initial(16, 99, 3);
    const auto b = sample_initial(16, 99, 3);
    const auto c = sample_initial(16, 99, 4);
    CHECK(a.size() == 16);
    CHECK(a.intensities == b.intensities);
    CHECK(a.positions == b.positions);
    CHECK(a.intensities != c.intensities);
    for (int i = 0; i < a.size(); ++i) {
        CHECK(a.positions(0, i) >= 0.0);
        CHECK(a.positions(0, i) < 1.0);
        CHECK(a.positions(1, i) >= 0.0);
        CHECK(a.positions(1, i) < 1.0);
    }
    CHECK(a.displacement.isZero());
    CHECK(a.time == 0.0);
}

TEST_CASE("initial intensities are standard normal in bulk") {
    double sum = 0.0, sum_sq = 0.0;
    const int runs = 500, n = 16;
    for (int r = 0; r < runs; ++r) {
        const auto s = sample_initial(n, 1234, static_cast<std::uint64_t>(r));
        sum += s.intensities.sum();
        sum_sq += s.intensities.squaredNorm();
    }
    const double count = runs * n;
    CHECK(sum / count == doctest::Approx(0.0).epsilon(0).scale(1).epsilon(0.05));
    CHECK(sum_sq / count == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("interaction drift throws on a coincident pair") {
    BiotSavartKernel kernel({.fourier_cutoff = 8});
    VortexSimulator sim(kernel, {.cutoff = 0, .master_seed = 1});
    auto state = sample_initial(4, 5, 0);
    state.positions.col(2) = state.positions.col(0);
    CHECK_THROWS_AS(sim.interaction_drift(state), std::runtime_error);
}

TEST_CASE("two opposite vortices translate together (dipole drift)") {
    // xi = (c, -c) at distance d: each vortex is advected by the other with
    // the same velocity, so the interaction drift columns must be equal.
    BiotSavartKernel kernel({.fourier_cutoff = 32});
    VortexSimulator sim(kernel, {.cutoff = 0, .master_seed = 1});
    VortexState state;
    state.intensities = Eigen::VectorXd(2);
    state.intensities << 1.5, -1.5;
    state.positions = Eigen::Matrix2Xd(2, 2);
    state.positions.col(0) = Vector2d(0.3, 0.5);
    state.positions.col(1) = Vector2d(0.3 + 0.1, 0.5);
    state.displacement = Eigen::Matrix2Xd::Zero(2, 2);
    const auto drift = sim.interaction_drift(state);
    CHECK((drift.col(0) - drift.col(1)).norm() < 1e-12);
    // and the motion is perpendicular to the separation axis
    CHECK(std::abs(drift(0, 0)) < 1e-12);
}

TEST_CASE("zero-noise dynamics conserve the interaction Hamiltonian") {
    // H = sum_{i<j} xi_i xi_j G(X_i - X_j) is conserved by the drift-only
    // flow; with Heun stepping the drift over a short horizon it should move
    // only at O(dt^2) per step.
    BiotSavartKernel kernel({.fourier_cutoff = 16});
    NoiseConfig cfg{.cutoff = 0, .master_seed = 77, .run = 0, .dt = 1e-4,
                    .integrator = Integrator::Heun};
    VortexSimulator sim(kernel, cfg);
    auto state = sample_initial(8, 77, 0);

    auto hamiltonian = [&](const VortexState& s) {
        double h = 0.0;
        for (int i = 0; i < s.size(); ++i)
            for (int j = i + 1; j < s.size(); ++j)
                h += s.intensities[i] * s.intensities[j] *
                     kernel.green(s.positions.col(i) - s.positions.col(j));
        return h;
    };

    const double h0 = hamiltonian(state);
    for (std::uint64_t k = 0; k < 200; ++k) sim.step(state, k);
    CHECK(state.time == doctest::Approx(200 * cfg.dt));
    CHECK(hamiltonian(state) == doctest::Approx(h0).epsilon(0).scale(1).epsilon(1e-5));
    CHECK_FALSE(sim.degenerate());
}

TEST_CASE("noise is common across vortices") {
    // With zero intensities there is no drift, so every vortex moves purely by
    // the transport noise; two vortices at the same location must follow
    // identical paths.
    BiotSavartKernel kernel({.fourier_cutoff = 8});
    NoiseConfig cfg{.cutoff = 4, .master_seed = 11, .run = 2, .dt = 1e-3,
                    .collision_threshold = 0.0};
    VortexSimulator sim(kernel, cfg);
    VortexState state;
    state.intensities = Eigen::VectorXd::Zero(3);
    state.positions = Eigen::Matrix2Xd(2, 3);
    state.positions.col(0) = Vector2d(0.2, 0.7);
    state.positions.col(1) = Vector2d(0.2, 0.7);
    state.positions.col(2) = Vector2d(0.6, 0.1);
    state.displacement = Eigen::Matrix2Xd::Zero(2, 3);
    for (std::uint64_t k = 0; k < 100; ++k) sim.step(state, k);
    CHECK((state.positions.col(0) - state.positions.col(1)).norm() == 0.0);
    CHECK((state.positions.col(0) - state.positions.col(2)).norm() > 0.0);
}

TEST_CASE("steps replay exactly for the same (seed, run, step) addressing") {
    BiotSavartKernel kernel({.fourier_cutoff = 8});
    NoiseConfig cfg{.cutoff = 4, .master_seed = 21, .run = 5, .dt = 1e-3};
    VortexSimulator sim_a(kernel, cfg), sim_b(kernel, cfg);
    auto sa = sample_initial(6, 21, 5);
    auto sb = sa;
    for (std::uint64_t k = 0; k < 50; ++k) {
        sim_a.step(sa, k);
        sim_b.step(sb, k);
    }
    CHECK(sa.positions == sb.positions);
    CHECK(sa.displacement == sb.displacement);

    NoiseConfig other = cfg;
    other.run = 6;
    VortexSimulator sim_c(kernel, other);
    auto sc = sample_initial(6, 21, 5);
    sim_c.step(sc, 0);
    VortexState s0 = sample_initial(6, 21, 5);
    sim_a.reset_diagnostics();
    VortexSimulator sim_a2(kernel, cfg);
    sim_a2.step(s0, 0);
    CHECK(sc.positions != s0.positions);
}

TEST_CASE("single-vortex mean-square displacement matches 4t in bulk") {
    // One vortex, no interaction: dX = 2 sqrt(2) eps_n sum sigma_k dW^k and
    // the covariance identity gives E|X_t - X_0|^2 = 4t. A small ensemble
    // keeps this test fast; the tight version lives in the acceptance suite.
    BiotSavartKernel kernel({.fourier_cutoff = 4});
    const double dt = 1e-3, t_final = 0.02;
    const int runs = 400;
    const auto steps = static_cast<std::uint64_t>(t_final / dt + 0.5);
    double sum = 0.0, sum_sq = 0.0;
    for (int r = 0; r < runs; ++r) {
        NoiseConfig cfg{.cutoff = 6, .master_seed = 404,
                        .run = static_cast<std::uint64_t>(r), .dt = dt};
        VortexSimulator sim(kernel, cfg);
        auto state = sample_initial(1, 404, static_cast<std::uint64_t>(r));
        for (std::uint64_t k = 0; k < steps; ++k) sim.step(state, k);
        const double msd = state.displacement.col(0).squaredNorm();
        sum += msd;
        sum_sq += msd * msd;
    }
    const double mean = sum / runs;
    const double se = std::sqrt((sum_sq / runs - mean * mean) / runs);
    CHECK(std::abs(mean - 4.0 * t_final) < 4.0 * se);
}

TEST_CASE("near-collision flags the trajectory as degenerate") {
    BiotSavartKernel kernel({.fourier_cutoff = 8});
    NoiseConfig cfg{.cutoff = 0, .master_seed = 3, .dt = 1e-6,
                    .collision_threshold = 1e-2};
    VortexSimulator sim(kernel, cfg);
    VortexState state;
    state.intensities = Eigen::VectorXd::Ones(2);
    state.positions = Eigen::Matrix2Xd(2, 2);
    state.positions.col(0) = Vector2d(0.5, 0.5);
    state.positions.col(1) = Vector2d(0.5 + 5e-3, 0.5);
    state.displacement = Eigen::Matrix2Xd::Zero(2, 2);
    sim.step(state, 0);
    CHECK(sim.degenerate());
    CHECK(sim.near_collision_steps() >= 1);
    sim.reset_diagnostics();
    CHECK_FALSE(sim.degenerate());
}

TEST_CASE("Heun and Euler agree to first order over one step") {
    BiotSavartKernel kernel({.fourier_cutoff = 16});
    const double dt = 1e-4;
    NoiseConfig euler{.cutoff = 0, .master_seed = 8, .dt = dt,
                      .integrator = Integrator::EulerMaruyama};
    NoiseConfig heun = euler;
    heun.integrator = Integrator::Heun;
    VortexSimulator se(kernel, euler), sh(kernel, heun);
    auto a = sample_initial(8, 8, 0);
    auto b = a;
    se.step(a, 0);
    sh.step(b, 0);
    const double gap = (a.positions - b.positions).norm();
    CHECK(gap > 0.0);
    CHECK(gap < 1e-5);  // corrector changes the position at O(dt^2)
}
