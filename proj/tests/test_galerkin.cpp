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

#include "vortexmc/galerkin.hpp"
#include "vortexmc/basis.hpp"

using namespace vmc;

TEST_CASE("white-noise initialization is deterministic and standard normal") {
    const auto a = init_white_noise(4, 7, 0);
    const auto b = init_white_noise(4, 7, 0);
    CHECK(a.coeffs() == b.coeffs());
    CHECK(init_white_noise(4, 7, 1).coeffs() != a.coeffs());

    double sum = 0.0, sum_sq = 0.0;
    const int runs = 800;
    const auto modes = static_cast<double>(lambda_set(4).size());
    for (int r = 0; r < runs; ++r) {
        const auto f = init_white_noise(4, 19, static_cast<std::uint64_t>(r));
        sum += f.coeffs().sum();
        sum_sq += f.coeffs().squaredNorm();
    }
    const double count = runs * modes;
    CHECK(std::abs(sum / count) < 0.02);
    CHECK(sum_sq / count == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("stability guard rejects too-large time steps") {
    GalerkinConfig cfg{.cutoff = 5, .dt = 1e-2, .master_seed = 1};
    CHECK_THROWS_AS(GalerkinSolver{cfg}, std::invalid_argument);
    cfg.nonlinearity = false;  // pure OU has no step restriction
    CHECK_NOTHROW(GalerkinSolver{cfg});
}

TEST_CASE("nonlinear term is enstrophy-orthogonal") {
    GalerkinSolver solver({.cutoff = 5, .dt = 2e-4, .master_seed = 3});
    for (std::uint64_t run = 0; run < 20; ++run) {
        const auto field = init_white_noise(5, 3, run);
        const auto b = solver.nonlinear_term(field);
        CHECK(std::abs(field.coeffs().dot(b.coeffs())) < 1e-10);
    }
}

TEST_CASE("nonlinear term matches a quadrature of -u . grad omega") {
    // Synthesize u and omega on a grid and project u . grad omega onto e_l.
    const int M = 3;
    GalerkinSolver solver({.cutoff = M, .dt = 2e-4, .master_seed = 5});
    const auto field = init_white_noise(M, 5, 2);
    const auto b = solver.nonlinear_term(field);

    const int R = 64;
    const auto modes = lambda_set(M);
    for (const auto& l : modes) {
        double proj = 0.0;
        for (int i = 0; i < R; ++i)
            for (int j = 0; j < R; ++j) {
                const Eigen::Vector2d x(static_cast<double>(i) / R,
                                        static_cast<double>(j) / R);
                Eigen::Vector2d u = Eigen::Vector2d::Zero();
                Eigen::Vector2d grad_w = Eigen::Vector2d::Zero();
                for (const auto& m : modes) {
                    const double c = field.at(m);
                    u -= (c * e_k_eval(-m, x) / (2.0 * kPi * m.norm_sq())) *
                         m.perp().as_vec();
                    grad_w += c * e_k_grad(m, x);
                }
                proj += -u.dot(grad_w) * e_k_eval(l, x);
            }
        proj /= R * R;
        // Projection keeps only modes inside Lambda_M; the quadrature sees the
        // full product, but e_l picks out exactly the retained frequency.
        CHECK(b.at(l) == doctest::Approx(proj).epsilon(0).scale(1).epsilon(1e-8));
    }
}

TEST_CASE("steps are deterministic per run and differ across runs") {
    GalerkinSolver solver({.cutoff = 4, .dt = 2e-4, .master_seed = 11, .run = 0});
    auto f1 = init_white_noise(4, 11, 0);
    auto f2 = init_white_noise(4, 11, 0);
    for (std::uint64_t k = 0; k < 25; ++k) {
        solver.step(f1, k);
        solver.step(f2, k);
    }
    CHECK(f1.coeffs() == f2.coeffs());

    auto other = solver.with_run(1);
    auto f3 = init_white_noise(4, 11, 0);
    for (std::uint64_t k = 0; k < 25; ++k) other.step(f3, k);
    CHECK(f1.coeffs() != f3.coeffs());
}

TEST_CASE("pure OU relaxes to unit variance from zero") {
    // With the nonlinearity off, each mode is an independent OU process with
    // stationary variance 1; from omega_0 = 0 the variance at time t is
    // 1 - exp(-8 pi^2 |l|^2 t).
    GalerkinConfig cfg{.cutoff = 2, .dt = 1e-3, .master_seed = 23,
                       .nonlinearity = false};
    const int runs = 2000;
    const double t = 0.05;
    const auto steps = static_cast<std::uint64_t>(t / cfg.dt + 0.5);
    const auto modes = lambda_set(2);
    std::vector<double> sum_sq(modes.size(), 0.0);
    GalerkinSolver proto(cfg);
    for (int r = 0; r < runs; ++r) {
        auto solver = proto.with_run(static_cast<std::uint64_t>(r));
        SpectralField f(2);
        for (std::uint64_t k = 0; k < steps; ++k) solver.step(f, k);
        for (std::size_t i = 0; i < modes.size(); ++i) {
            const double v = f.at(modes[i]);
            sum_sq[i] += v * v;
        }
    }
    for (std::size_t i = 0; i < modes.size(); ++i) {
        const double lam = 4.0 * kPi * kPi * modes[i].norm_sq();
        const double expected = 1.0 - std::exp(-2.0 * lam * t);
        const double var = sum_sq[i] / runs;
        // chi^2 spread: SE of the sample variance is var * sqrt(2/runs)
        const double se = expected * std::sqrt(2.0 / runs);
        CHECK(std::abs(var - expected) < 4.0 * se);
    }
}

TEST_CASE("OU step from stationarity keeps variance exactly calibrated") {
    GalerkinConfig cfg{.cutoff = 3, .dt = 5e-4, .master_seed = 31,
                       .nonlinearity = false};
    const int runs = 4000;
    GalerkinSolver proto(cfg);
    const auto modes = lambda_set(3);
    std::vector<double> sum_sq(modes.size(), 0.0);
    for (int r = 0; r < runs; ++r) {
        auto solver = proto.with_run(static_cast<std::uint64_t>(r));
        auto f = init_white_noise(3, 31, static_cast<std::uint64_t>(r));
        for (std::uint64_t k = 0; k < 20; ++k) solver.step(f, k);
        for (std::size_t i = 0; i < modes.size(); ++i) {
            const double v = f.at(modes[i]);
            sum_sq[i] += v * v;
        }
    }
    for (std::size_t i = 0; i < modes.size(); ++i) {
        const double var = sum_sq[i] / runs;
        CHECK(var == doctest::Approx(1.0).epsilon(4.0 * std::sqrt(2.0 / runs)));
    }
}
