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

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "vortexmc/biot_savart.hpp"

using namespace vmc;
using Eigen::Vector2d;

namespace {
std::mt19937 gen(7);
Vector2d random_point() {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return {u(gen), u(gen)};
}
}  // namespace

TEST_CASE("wrapping helpers") {
    const Vector2d d = wrap_displacement({1.3, -0.7});
    CHECK(d[0] == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(d[1] == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(wrap_displacement({0.5, -0.5})[0] == doctest::Approx(-0.5));
    const Vector2d p = wrap_point({-0.25, 2.75});
    CHECK(p[0] == doctest::Approx(0.75));
    CHECK(p[1] == doctest::Approx(0.75));
    CHECK(torus_distance({0.05, 0.0}, {0.95, 0.0}) == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("kernel configuration validation") {
    CHECK_THROWS_AS(BiotSavartKernel({.fourier_cutoff = 0}), std::invalid_argument);
    CHECK_THROWS_AS(BiotSavartKernel({.fourier_cutoff = 16, .grid_resolution = 32}),
                    std::invalid_argument);
}

TEST_CASE("kernel antisymmetry and periodicity") {
    BiotSavartKernel kernel({.fourier_cutoff = 12});
    for (int rep = 0; rep < 20; ++rep) {
        const Vector2d x = random_point() - Vector2d(0.5, 0.5);
        const Vector2d pos = kernel.eval_direct(x);
        const Vector2d neg = kernel.eval_direct(-x);
        CHECK(pos[0] == doctest::Approx(-neg[0]).epsilon(1e-13));
        CHECK(pos[1] == doctest::Approx(-neg[1]).epsilon(1e-13));
        const Vector2d shifted = kernel.eval_direct(x + Vector2d(3.0, -2.0));
        CHECK((pos - shifted).norm() < 1e-10);
    }
    CHECK(kernel.eval_direct({0.0, 0.0}).norm() == 0.0);
}

TEST_CASE("kernel is divergence-free") {
    BiotSavartKernel kernel({.fourier_cutoff = 10});
    const double h = 1e-5;
    for (int rep = 0; rep < 10; ++rep) {
        const Vector2d x = random_point();
        const double div =
            (kernel.eval_direct(x + Vector2d(h, 0))[0] -
             kernel.eval_direct(x - Vector2d(h, 0))[0] +
             kernel.eval_direct(x + Vector2d(0, h))[1] -
             kernel.eval_direct(x - Vector2d(0, h))[1]) /
            (2 * h);
        CHECK(std::abs(div) < 1e-5);
    }
}

TEST_CASE("kernel equals perpendicular gradient of the Green function") {
    BiotSavartKernel kernel({.fourier_cutoff = 8});
    const double h = 1e-6;
    for (int rep = 0; rep < 10; ++rep) {
        const Vector2d x = random_point();
        const double g2 =
            (kernel.green(x + Vector2d(0, h)) - kernel.green(x - Vector2d(0, h))) / (2 * h);
        const double g1 =
            (kernel.green(x + Vector2d(h, 0)) - kernel.green(x - Vector2d(h, 0))) / (2 * h);
        const Vector2d k = kernel.eval_direct(x);
        CHECK(k[0] == doctest::Approx(g2).epsilon(0).scale(1).epsilon(1e-6));
        CHECK(k[1] == doctest::Approx(-g1).epsilon(0).scale(1).epsilon(1e-6));
    }
}

TEST_CASE("single-mode convolution recovers the vorticity via the curl") {
    BiotSavartKernel kernel({.fourier_cutoff = 8});
    const double h = 1e-5;
    for (const auto& l : lambda_set(6)) {
        SpectralField field(6);
        field.at(l) = 1.0;
        double max_err = 0.0;
        // curl u = d2 u1 - d1 u2 should reproduce e_l (mean-zero part)
        for (int gi = 0; gi < 8; ++gi)
            for (int gj = 0; gj < 8; ++gj) {
                const Vector2d x(gi / 8.0 + 0.037, gj / 8.0 + 0.061);
                const double curl =
                    (kernel.velocity_from_spectral(field, x + Vector2d(0, h))[0] -
                     kernel.velocity_from_spectral(field, x - Vector2d(0, h))[0] -
                     kernel.velocity_from_spectral(field, x + Vector2d(h, 0))[1] +
                     kernel.velocity_from_spectral(field, x - Vector2d(h, 0))[1]) /
                    (2 * h);
                max_err = std::max(max_err, std::abs(curl - e_k_eval(l, x)));
            }
        CHECK(max_err < 1e-4);
    }
}

TEST_CASE("spectral velocity matches direct kernel convolution by quadrature") {
    // For a single mode l: integral K(x-y) e_l(y) dy == velocity_from_spectral.
    BiotSavartKernel kernel({.fourier_cutoff = 8});
    const WaveVector l{2, 1};
    SpectralField field(3);
    field.at(l) = 1.0;
    const int R = 128;
    for (int rep = 0; rep < 4; ++rep) {
        const Vector2d x = random_point();
        Vector2d conv = Vector2d::Zero();
        for (int i = 0; i < R; ++i)
            for (int j = 0; j < R; ++j) {
                const Vector2d y(static_cast<double>(i) / R, static_cast<double>(j) / R);
                conv += kernel.eval_direct(x - y) * e_k_eval(l, y);
            }
        conv /= R * R;
        const Vector2d closed = kernel.velocity_from_spectral(field, x);
        CHECK((conv - closed).norm() < 1e-8);
    }
}

TEST_CASE("velocity Jacobian matches finite differences") {
    BiotSavartKernel kernel({.fourier_cutoff = 8});
    SpectralField field(3);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    for (const auto& l : lambda_set(3)) field.at(l) = coeff(gen);
    const double h = 1e-6;
    for (int rep = 0; rep < 5; ++rep) {
        const Vector2d x = random_point();
        const Eigen::Matrix2d jac = kernel.velocity_jacobian(field, x);
        for (int j = 0; j < 2; ++j) {
            Vector2d xp = x, xm = x;
            xp[j] += h;
            xm[j] -= h;
            const Vector2d fd =
                (kernel.velocity_from_spectral(field, xp) -
                 kernel.velocity_from_spectral(field, xm)) /
                (2 * h);
            CHECK((jac.col(j) - fd).norm() < 1e-6);
        }
    }
}

TEST_CASE("near-field strength approaches 1/(2 pi r)") {
    // The truncated series oscillates around 1/(2 pi r) with amplitude decaying
    // in M_K * r, so the radii here keep M_K * r >= 10.
    BiotSavartKernel kernel({.fourier_cutoff = 512});
    std::uniform_real_distribution<double> rad(0.02, 0.05);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi);
    for (int rep = 0; rep < 20; ++rep) {
        const double r = rad(gen), a = ang(gen);
        const Vector2d x(r * std::cos(a), r * std::sin(a));
        const double strength = kernel.eval_direct(x).norm() * r;
        CHECK(strength == doctest::Approx(1.0 / (2.0 * kPi)).epsilon(0.10));
        // tangential orientation: K(x) . x ~ 0 relative to |K||x|
        CHECK(std::abs(kernel.eval_direct(x).dot(x)) / strength < 0.10);
    }
}

TEST_CASE("interpolation table agrees with the direct sum") {
    BiotSavartKernel direct({.fourier_cutoff = 16});
    BiotSavartKernel tabled({.fourier_cutoff = 16, .grid_resolution = 512});
    double max_err = 0.0;
    for (int rep = 0; rep < 200; ++rep) {
        const Vector2d x = random_point() - Vector2d(0.5, 0.5);
        max_err = std::max(max_err, (direct.eval(x) - tabled.eval(x)).norm());
    }
    CHECK(max_err < 5e-3);
    // Table nodes are exact.
    for (int rep = 0; rep < 50; ++rep) {
        std::uniform_int_distribution<int> node(0, 511);
        const Vector2d x(node(gen) / 512.0, node(gen) / 512.0);
        CHECK((direct.eval_direct(x) - tabled.eval(x)).norm() < 1e-10);
    }
}

TEST_CASE("h_phi is symmetric and vanishes on the diagonal") {
    BiotSavartKernel kernel({.fourier_cutoff = 8});
    const WaveVector l{1, 2};
    for (int rep = 0; rep < 10; ++rep) {
        const Vector2d x = random_point(), y = random_point();
        CHECK(kernel.h_phi(l, x, y) ==
              doctest::Approx(kernel.h_phi(l, y, x)).epsilon(0).scale(1).epsilon(1e-12));
        CHECK(kernel.h_phi(l, x, x) == 0.0);
    }
}
