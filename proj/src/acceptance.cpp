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

#include "vortexmc/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <sstream>

#include "vortexmc/basis.hpp"
#include "vortexmc/biot_savart.hpp"
#include "vortexmc/ensemble.hpp"
#include "vortexmc/galerkin.hpp"
#include "vortexmc/observables.hpp"
#include "vortexmc/rng.hpp"
#include "vortexmc/vortex.hpp"
#include "vortexmc/wick.hpp"

namespace vmc {
namespace {

using Eigen::Vector2d;

std::string fmt(double v) {
    std::ostringstream out;
    out.precision(4);
    out << v;
    return out.str();
}

/// Deterministic quasi-random points for the identity sweeps.
Vector2d check_point(std::uint64_t seed, std::uint64_t index) {
    rng::CounterStream s(seed, rng::Purpose::InitialPosition, 0);
    return {s.uniform(0, index, 0), s.uniform(0, index, 1)};
}

struct SampleStats {
    double mean = 0.0, se_mean = 0.0;
    double var = 0.0, se_var = 0.0;
    std::size_t count = 0;
};

SampleStats sample_stats(const std::vector<double>& xs) {
    SampleStats s;
    s.count = xs.size();
    if (xs.empty()) return s;
    for (double v : xs) s.mean += v;
    s.mean /= xs.size();
    double m2 = 0.0, m4 = 0.0;
    for (double v : xs) {
        const double d = v - s.mean;
        m2 += d * d;
        m4 += d * d * d * d;
    }
    m2 /= xs.size();
    m4 /= xs.size();
    s.var = m2;
    s.se_mean = std::sqrt(m2 / xs.size());
    // standard error of the sample variance from the empirical 4th moment
    s.se_var = std::sqrt(std::max(0.0, m4 - m2 * m2) / xs.size());
    return s;
}

/// 5-point central first derivative.
template <typename F>
double deriv5(F&& f, double x, double h) {
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

// ---------------------------------------------------------------- check 1

CheckResult check_covariance_identities() {
    CheckResult r{1, "exact covariance and advection identities", false, ""};
    const double tol = 1e-10;
    double worst = 0.0;

    for (int n = 1; n <= 16; ++n) {
        const auto modes = lambda_set(n);
        const double expected = 0.25 / (eps_n(n) * eps_n(n));
        for (std::uint64_t p = 0; p < 100; ++p) {
            const Vector2d x = check_point(101, p);
            Eigen::Matrix2d sum = Eigen::Matrix2d::Zero();
            for (const auto& k : modes) {
                const Vector2d s = sigma_k_eval(k, x);
                sum += s * s.transpose();
            }
            const Eigen::Matrix2d err = sum - expected * Eigen::Matrix2d::Identity();
            worst = std::max(worst,
                             err.cwiseAbs().maxCoeff() / std::max(1.0, expected));
        }
    }

    for (int n = 1; n <= 32; ++n) {
        const auto modes = lambda_set(n);
        const double inv_eps_sq = 1.0 / (eps_n(n) * eps_n(n));
        for (const auto& l : lambda_set(5)) {
            double sum = 0.0;
            for (const auto& k : modes) {
                const double c = c_coeff(k, l);
                sum += c * c;
            }
            const double expected = 0.5 * inv_eps_sq * l.norm_sq();
            worst = std::max(worst, std::abs(sum - expected) / std::max(1.0, expected));
        }
    }

    for (const auto& k : lambda_set(8))
        for (const auto& l : lambda_set(5))
            for (std::uint64_t p = 0; p < 10; ++p) {
                const Vector2d x = check_point(103, p);
                const double lhs = sigma_k_eval(k, x).dot(e_k_grad(l, x));
                const double rhs = kSqrt2 * kPi * c_coeff(k, l) * e_k_eval(k, x) *
                                   e_k_eval(-l, x);
                worst = std::max(worst, std::abs(lhs - rhs));
            }

    r.pass = worst <= tol;
    r.detail = "max deviation " + fmt(worst) + " (tol 1e-10)";
    return r;
}

// ---------------------------------------------------------------- check 2

CheckResult check_kernel() {
    CheckResult r{2, "Biot-Savart kernel: curl recovery, antisymmetry, near field",
                  false, ""};
    BiotSavartKernel kernel({.fourier_cutoff = 32});

    // Curl recovery on a 64x64 grid for every retained mode with |l| <= 6.
    double curl_err = 0.0;
    const double h = 1e-4;
    for (const auto& l : lambda_set(6)) {
        SpectralField field(6);
        field.at(l) = 1.0;
        for (int gi = 0; gi < 64; ++gi)
            for (int gj = 0; gj < 64; ++gj) {
                const Vector2d x(gi / 64.0, gj / 64.0);
                const double d1u2 = deriv5(
                    [&](double t) {
                        return kernel.velocity_from_spectral(field, {t, x[1]})[1];
                    },
                    x[0], h);
                const double d2u1 = deriv5(
                    [&](double t) {
                        return kernel.velocity_from_spectral(field, {x[0], t})[0];
                    },
                    x[1], h);
                curl_err = std::max(curl_err,
                                    std::abs((d2u1 - d1u2) - e_k_eval(l, x)));
            }
    }

    // Antisymmetry, exact term by term.
    bool antisym = true;
    for (std::uint64_t p = 0; p < 100; ++p) {
        const Vector2d x = check_point(211, p) - Vector2d(0.5, 0.5);
        const Vector2d a = kernel.eval_direct(x);
        const Vector2d b = kernel.eval_direct(-x);
        if (a[0] != -b[0] || a[1] != -b[1]) antisym = false;
    }

    // Near field: |K(x)||x| within 10% of 1/(2 pi) over |x| in [0.005, 0.02].
    // The truncated series oscillates with amplitude decaying in M_K * |x|, so
    // this check runs the sum at M_K = 2048 where the window is resolved.
    BiotSavartKernel fine({.fourier_cutoff = 2048});
    double ratio_lo = 1e300, ratio_hi = -1e300;
    for (int ri = 0; ri < 16; ++ri) {
        const double rad = 0.005 + (0.02 - 0.005) * ri / 15.0;
        for (int ai = 0; ai < 8; ++ai) {
            const double ang = 2.0 * kPi * ai / 8 + 0.123;
            const Vector2d x(rad * std::cos(ang), rad * std::sin(ang));
            const double ratio = fine.eval_direct(x).norm() * rad * 2.0 * kPi;
            ratio_lo = std::min(ratio_lo, ratio);
            ratio_hi = std::max(ratio_hi, ratio);
        }
    }

    r.pass = curl_err <= 1e-8 && antisym && ratio_lo >= 0.9 && ratio_hi <= 1.1;
    r.detail = "curl err " + fmt(curl_err) + " (tol 1e-8), antisymmetry " +
               (antisym ? "exact" : "VIOLATED") + ", |K||x| * 2pi in [" +
               fmt(ratio_lo) + ", " + fmt(ratio_hi) + "] (window [0.9, 1.1])";
    return r;
}

// ---------------------------------------------------------------- check 3

CheckResult check_product_integrals() {
    CheckResult r{3, "trigonometric product integrals vs quadrature", false, ""};
    const auto pool = lambda_set(3);
    rng::CounterStream pick(31, rng::Purpose::InitialIntensity, 0);
    double worst = 0.0;
    const int grid = 256;
    for (std::uint64_t rep = 0; rep < 50; ++rep) {
        const int m = 1 + static_cast<int>(pick.bits(rep, 0) % 4);
        std::vector<WaveVector> ks;
        for (int i = 0; i < m; ++i)
            ks.push_back(pool[pick.bits(rep, static_cast<std::uint64_t>(i) + 1) %
                              pool.size()]);
        const double exact = trig_product_integral(std::span<const WaveVector>(ks));
        double quad = 0.0;
        for (int i = 0; i < grid; ++i)
            for (int j = 0; j < grid; ++j) {
                const Vector2d x(static_cast<double>(i) / grid,
                                 static_cast<double>(j) / grid);
                double p = 1.0;
                for (const auto& k : ks) p *= e_k_eval(k, x);
                quad += p;
            }
        quad /= static_cast<double>(grid) * grid;
        worst = std::max(worst, std::abs(exact - quad));
    }
    r.pass = worst <= 1e-8;
    r.detail = "max |exact - quadrature| " + fmt(worst) + " (tol 1e-8), 50 products";
    return r;
}

// ---------------------------------------------------------------- check 4

CheckResult check_single_vortex_diffusivity() {
    CheckResult r{4, "single-vortex mean-square displacement = 4t", false, ""};
    BiotSavartKernel kernel({.fourier_cutoff = 4});
    const double dt = 1e-4, t = 0.01;
    const auto steps = static_cast<std::uint64_t>(std::llround(t / dt));
    const int runs = 20000;
    std::vector<double> msd;
    msd.reserve(runs);
    for (int run = 0; run < runs; ++run) {
        NoiseConfig cfg{.cutoff = 8, .master_seed = 4001,
                        .run = static_cast<std::uint64_t>(run), .dt = dt};
        VortexSimulator sim(kernel, cfg);
        auto state = sample_initial(1, 4001, static_cast<std::uint64_t>(run));
        for (std::uint64_t k = 0; k < steps; ++k) sim.step(state, k);
        msd.push_back(state.displacement.col(0).squaredNorm());
    }
    const auto s = sample_stats(msd);
    const double target = 4.0 * t;
    r.pass = std::abs(s.mean - target) <= 3.0 * s.se_mean;
    r.detail = "E|X_t - X_0|^2 = " + fmt(s.mean) + " vs 4t = " + fmt(target) +
               " (3 SE = " + fmt(3.0 * s.se_mean) + ", 20000 runs)";
    return r;
}

// ---------------------------------------------------------------- check 5

CheckResult check_stationarity() {
    CheckResult r{5, "white-noise stationarity of the particle ensemble", false, ""};
    BiotSavartKernel kernel({.fourier_cutoff = 32, .grid_resolution = 256});
    const double dt = 1e-3;
    const int runs = 2000, n_vortices = 64, noise_n = 8;
    const std::vector<std::uint64_t> sample_steps{0, 250, 500};
    const std::vector<WaveVector> probes{{1, 0}, {0, 1}, {1, 1}, {2, 0}};

    // samples[time][mode][run]
    std::vector<std::vector<std::vector<double>>> samples(
        sample_steps.size(), std::vector<std::vector<double>>(probes.size()));
    int degenerate = 0;

    for (int run = 0; run < runs; ++run) {
        NoiseConfig cfg{.cutoff = noise_n, .master_seed = 5001,
                        .run = static_cast<std::uint64_t>(run), .dt = dt};
        VortexSimulator sim(kernel, cfg);
        auto state = sample_initial(n_vortices, 5001, static_cast<std::uint64_t>(run));
        std::vector<std::vector<double>> recorded(sample_steps.size(),
                                                  std::vector<double>(probes.size()));
        bool failed = false;
        try {
            std::uint64_t next_sample = 0;
            for (std::uint64_t k = 0; k <= 500; ++k) {
                if (next_sample < sample_steps.size() && sample_steps[next_sample] == k) {
                    for (std::size_t m = 0; m < probes.size(); ++m)
                        recorded[next_sample][m] = pair(state, probes[m]);
                    ++next_sample;
                }
                if (k < 500) sim.step(state, k);
            }
        } catch (const std::runtime_error&) {
            failed = true;
        }
        if (failed || sim.degenerate()) {
            ++degenerate;
            continue;
        }
        for (std::size_t t = 0; t < sample_steps.size(); ++t)
            for (std::size_t m = 0; m < probes.size(); ++m)
                samples[t][m].push_back(recorded[t][m]);
    }

    bool pass = true;
    double worst_mean_z = 0.0, worst_var_z = 0.0;
    for (std::size_t t = 0; t < sample_steps.size(); ++t)
        for (std::size_t m = 0; m < probes.size(); ++m) {
            const auto s = sample_stats(samples[t][m]);
            const double mean_z = std::abs(s.mean) / s.se_mean;
            const double var_z = std::abs(s.var - 1.0) / s.se_var;
            worst_mean_z = std::max(worst_mean_z, mean_z);
            worst_var_z = std::max(worst_var_z, var_z);
            if (mean_z > 3.0 || var_z > 3.0) pass = false;
        }
    r.pass = pass;
    r.detail = "worst |mean|/SE " + fmt(worst_mean_z) + ", worst |var-1|/SE " +
               fmt(worst_var_z) + " (both must be <= 3) over 4 modes x 3 times, " +
               std::to_string(degenerate) + " degenerate runs excluded";
    return r;
}

// ---------------------------------------------------------------- check 6

CheckResult check_gaussian_second_moment() {
    CheckResult r{6, "exact Gaussian second-moment formula", false, ""};
    const auto one = SymmetricKernelSpec::constant(1.0);
    bool const_ok = true;
    for (int n : {1, 2, 3, 4, 16, 64, 1024})
        if (exact_second_moment(one, n) != 3.0) const_ok = false;

    const WaveVector a{1, 0};
    const auto f = SymmetricKernelSpec::product(1.0, a, a);
    bool mc_ok = true;
    std::string mc_detail;
    for (int n : {4, 16}) {
        const double exact = exact_second_moment(f, n);
        const int runs = 1000000;
        std::vector<double> qs;
        qs.reserve(runs);
        for (int run = 0; run < runs; ++run) {
            const auto s =
                sample_initial(n, 6001 + n, static_cast<std::uint64_t>(run));
            const double v = pair(s, a);
            qs.push_back(v * v * v * v);  // <omega x omega, f>^2 = <omega,e_a>^4
        }
        const auto st = sample_stats(qs);
        const bool ok = std::abs(st.mean - exact) <= 3.0 * st.se_mean;
        mc_ok = mc_ok && ok;
        mc_detail += " N=" + std::to_string(n) + ": MC " + fmt(st.mean) + " vs exact " +
                     fmt(exact) + " (3 SE " + fmt(3.0 * st.se_mean) + ")";
    }
    r.pass = const_ok && mc_ok;
    r.detail = std::string("f==1 gives exactly 3: ") + (const_ok ? "yes" : "NO") +
               ";" + mc_detail + ", 1e6 samples each";
    return r;
}

// ---------------------------------------------------------------- check 7

CheckResult check_r_statistic_moment() {
    CheckResult r{7, "exact E[R^2] vs Monte Carlo and boundedness in N", false, ""};
    const std::vector<std::pair<WaveVector, WaveVector>> pairs{
        {{1, 0}, {0, 1}}, {{1, 0}, {1, 0}}};
    const std::vector<int> sizes{4, 8, 16};
    bool pass = true;
    std::string detail;

    for (const auto& [l, m] : pairs) {
        std::vector<double> exact_values;
        for (int n : sizes) {
            const double exact = exact_r_second_moment(l, m, n, n);
            const double cross = exact_r_second_moment_wick(l, m, n, n);
            if (std::abs(exact - cross) > 1e-9 * std::max(1.0, std::abs(exact)))
                pass = false;
            exact_values.push_back(exact);

            const int runs = n <= 8 ? 150000 : 60000;
            std::vector<double> sq;
            sq.reserve(runs);
            for (int run = 0; run < runs; ++run) {
                const auto s =
                    sample_initial(n, 7001 + n, static_cast<std::uint64_t>(run));
                const double v = r_statistic(s, l, m, n);
                sq.push_back(v * v);
            }
            const auto st = sample_stats(sq);
            const bool ok = std::abs(st.mean - exact) <= 3.0 * st.se_mean;
            pass = pass && ok;
            detail += " (" + std::to_string(l.k1) + "," + std::to_string(l.k2) + ")x(" +
                      std::to_string(m.k1) + "," + std::to_string(m.k2) + ") N=" +
                      std::to_string(n) + ": exact " + fmt(exact) + " MC " +
                      fmt(st.mean) + " 3SE " + fmt(3.0 * st.se_mean) + ";";
        }

        // Boundedness in N, certified one of two ways.
        // (a) Envelope: fit C0 + C1 (log N)^2 / N through the first two
        //     values; every later value must stay at or below the envelope.
        // (b) Geometric increments: the values rise toward a finite limit,
        //     with each dyadic increment at most 0.8x the previous one, so
        //     the limit is bounded by the last value plus the geometric tail.
        auto phi = [](int n) {
            const double ln = std::log(static_cast<double>(n));
            return ln * ln / n;
        };
        const double c1 = (exact_values[1] - exact_values[0]) /
                          (phi(sizes[1]) - phi(sizes[0]));
        const double c0 = exact_values[0] - c1 * phi(sizes[0]);
        bool envelope_ok = true;
        for (std::size_t i = 2; i < sizes.size(); ++i)
            envelope_ok = envelope_ok &&
                          exact_values[i] <= c0 + c1 * phi(sizes[i]) + 1e-9;
        const double inc1 = exact_values[1] - exact_values[0];
        const double inc2 = exact_values[2] - exact_values[1];
        const bool geometric_ok = inc1 > 0.0 && inc2 >= 0.0 && inc2 <= 0.8 * inc1;
        pass = pass && (envelope_ok || geometric_ok);
        detail += " C0=" + fmt(c0) + " C1=" + fmt(c1) +
                  (envelope_ok ? " envelope ok;" : "") +
                  (geometric_ok ? " geometric increments ok;" : "");
    }
    r.pass = pass;
    r.detail = detail;
    return r;
}

// ---------------------------------------------------------------- check 8

CheckResult check_increment_scaling() {
    CheckResult r{8, "fourth moment of mode increments scales like (t-s)^2",
                  false, ""};
    BiotSavartKernel kernel({.fourier_cutoff = 32, .grid_resolution = 256});
    const double dt = 1e-3;
    const int runs = 5000, n_vortices = 64, noise_n = 8;
    const std::vector<std::uint64_t> steps{10, 20, 40, 80};  // t-s = 0.01 .. 0.08
    const WaveVector l{1, 0};

    std::vector<std::vector<double>> incr4(steps.size());
    int degenerate = 0;
    for (int run = 0; run < runs; ++run) {
        NoiseConfig cfg{.cutoff = noise_n, .master_seed = 8001,
                        .run = static_cast<std::uint64_t>(run), .dt = dt};
        VortexSimulator sim(kernel, cfg);
        auto state = sample_initial(n_vortices, 8001, static_cast<std::uint64_t>(run));
        const double base = pair(state, l);
        std::vector<double> recorded(steps.size());
        bool failed = false;
        try {
            std::size_t next = 0;
            for (std::uint64_t k = 0; k < 80; ++k) {
                sim.step(state, k);
                if (next < steps.size() && steps[next] == k + 1) {
                    const double d = pair(state, l) - base;
                    recorded[next] = d * d * d * d;
                    ++next;
                }
            }
        } catch (const std::runtime_error&) {
            failed = true;
        }
        if (failed || sim.degenerate()) {
            ++degenerate;
            continue;
        }
        for (std::size_t i = 0; i < steps.size(); ++i)
            incr4[i].push_back(recorded[i]);
    }

    // The mode coordinate relaxes at rate lambda = 4 pi^2 |l|^2 ~ 39.5, so
    // over these lags lambda*tau runs from 0.4 to 3.2 and the increment
    // variance saturates at twice the stationary variance: the raw ratio
    // E[d^4]/tau^2 necessarily falls with tau. The (t-s)^2 law is therefore
    // checked two ways: (a) every raw ratio is bounded by the small-lag
    // constant 3 (8 pi^2 |l|^2)^2 (the Gaussian value of the bounding C),
    // and (b) after dividing out the stationary Gaussian saturation factor
    // 3 [2(1 - e^{-lambda tau})]^2 / tau^2, the ratios are flat within the
    // stated factor 3.
    const double lambda = 4.0 * kPi * kPi * l.norm_sq();
    const double c_small_lag = 3.0 * std::pow(8.0 * kPi * kPi * l.norm_sq(), 2);
    double lo = 1e300, hi = -1e300;
    bool bounded = true;
    std::string values;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const double tau = static_cast<double>(steps[i]) * dt;
        const double ratio = sample_stats(incr4[i]).mean / (tau * tau);
        bounded = bounded && ratio <= c_small_lag;
        const double saturation =
            3.0 * std::pow(2.0 * (1.0 - std::exp(-lambda * tau)), 2) / (tau * tau);
        const double normalized = ratio / saturation;
        lo = std::min(lo, normalized);
        hi = std::max(hi, normalized);
        values += " " + fmt(ratio) + " (norm " + fmt(normalized) + ")";
    }
    r.pass = bounded && hi / lo < 3.0;
    r.detail = "E[d^4]/(t-s)^2 =" + values + ", all <= C = " + fmt(c_small_lag) +
               ": " + (bounded ? "yes" : "no") + ", saturation-normalized spread " +
               fmt(hi / lo) + " (must be < 3), " + std::to_string(degenerate) +
               " degenerate runs excluded";
    return r;
}

// ---------------------------------------------------------------- check 9

CheckResult check_galerkin_invariance() {
    CheckResult r{9, "Galerkin oracle: orthogonality and white-noise invariance",
                  false, ""};
    // (a) enstrophy orthogonality of the bilinear term, per evaluation.
    GalerkinSolver probe({.cutoff = 5, .dt = 2e-4, .master_seed = 9001});
    double worst_dot = 0.0;
    for (std::uint64_t run = 0; run < 100; ++run) {
        const auto f = init_white_noise(5, 9001, run);
        const auto b = probe.nonlinear_term(f);
        worst_dot = std::max(worst_dot, std::abs(f.coeffs().dot(b.coeffs())));
    }
    const bool ortho_ok = worst_dot <= 1e-10;

    // (b) white-noise marginal: per-mode variance stays within 5% of 1. The
    // variance is estimated over the window t in [0.5, 1.0] (samples 0.02
    // apart decorrelate even the slowest mode) to push the Monte Carlo error
    // well below the 5% band.
    const int runs = 500;
    const double dt = 2e-4;
    const auto modes = lambda_set(5);
    std::vector<double> sum_sq(modes.size(), 0.0);
    std::size_t count = 0;
    GalerkinSolver proto({.cutoff = 5, .dt = dt, .master_seed = 9002});
    const auto total_steps = static_cast<std::uint64_t>(std::llround(1.0 / dt));
    const auto window_start = total_steps / 2;
    const std::uint64_t every = 100;  // 0.02 time units
    for (int run = 0; run < runs; ++run) {
        auto solver = proto.with_run(static_cast<std::uint64_t>(run));
        auto field = init_white_noise(5, 9002, static_cast<std::uint64_t>(run));
        for (std::uint64_t k = 0; k < total_steps; ++k) {
            solver.step(field, k);
            if (k + 1 >= window_start && (k + 1) % every == 0) {
                for (std::size_t i = 0; i < modes.size(); ++i) {
                    const double v = field.coeffs()[static_cast<Eigen::Index>(i)];
                    sum_sq[i] += v * v;
                }
                ++count;
            }
        }
    }
    double var_lo = 1e300, var_hi = -1e300;
    for (std::size_t i = 0; i < modes.size(); ++i) {
        const double var = sum_sq[i] / static_cast<double>(count == 0 ? 1 : count);
        var_lo = std::min(var_lo, var);
        var_hi = std::max(var_hi, var);
    }
    const bool marginal_ok = var_lo >= 0.95 && var_hi <= 1.05;

    // (c) OU-only relaxation from zero to unit variance, within 3 SE, pooling
    // modes that share |l|^2 (they are exchangeable).
    GalerkinConfig ou_cfg{.cutoff = 5, .dt = 1e-3, .master_seed = 9003,
                          .nonlinearity = false};
    GalerkinSolver ou_proto(ou_cfg);
    const int ou_runs = 2000;
    const auto ou_steps = static_cast<std::uint64_t>(std::llround(0.2 / ou_cfg.dt));
    std::map<int, std::vector<double>> by_norm;  // |l|^2 -> squared samples
    for (int run = 0; run < ou_runs; ++run) {
        auto solver = ou_proto.with_run(static_cast<std::uint64_t>(run));
        SpectralField f(5);
        for (std::uint64_t k = 0; k < ou_steps; ++k) solver.step(f, k);
        for (std::size_t i = 0; i < modes.size(); ++i)
            by_norm[modes[i].norm_sq()].push_back(
                f.coeffs()[static_cast<Eigen::Index>(i)] *
                f.coeffs()[static_cast<Eigen::Index>(i)]);
    }
    bool ou_ok = true;
    double worst_ou_z = 0.0;
    for (const auto& [norm_sq, sq] : by_norm) {
        const auto st = sample_stats(sq);
        const double z = std::abs(st.mean - 1.0) / st.se_mean;
        worst_ou_z = std::max(worst_ou_z, z);
        if (z > 3.0) ou_ok = false;
    }

    r.pass = ortho_ok && marginal_ok && ou_ok;
    r.detail = "max |<omega, B(omega)>| " + fmt(worst_dot) +
               " (tol 1e-10); per-mode variance in [" + fmt(var_lo) + ", " +
               fmt(var_hi) + "] (window [0.95, 1.05]); OU relaxation worst z " +
               fmt(worst_ou_z) + " (<= 3)";
    return r;
}

// ---------------------------------------------------------------- check 10

CheckResult check_martingale() {
    CheckResult r{10, "martingale property and quadratic-variation slope", false, ""};
    // (a) Galerkin: M_t = F(omega_t) - F(omega_0) - int_0^t (L F)(omega_s) ds
    // must be mean zero for F = <omega, e_l> and F = <omega, e_l>^2.
    const WaveVector l{1, 0};
    const double lambda = 4.0 * kPi * kPi * l.norm_sq();
    const double qv_rate = 8.0 * kPi * kPi * l.norm_sq();
    const double dt = 2e-4;
    const auto steps = static_cast<std::uint64_t>(std::llround(0.1 / dt));
    const int runs = 1500;
    GalerkinSolver proto({.cutoff = 5, .dt = dt, .master_seed = 10001});
    std::vector<double> m_lin, m_sq;
    m_lin.reserve(runs);
    m_sq.reserve(runs);
    for (int run = 0; run < runs; ++run) {
        auto solver = proto.with_run(static_cast<std::uint64_t>(run));
        auto field = init_white_noise(5, 10001, static_cast<std::uint64_t>(run));
        const double w0 = field.at(l);
        double int_lin = 0.0, int_sq = 0.0;
        for (std::uint64_t k = 0; k < steps; ++k) {
            const double w = field.at(l);
            const double b = solver.nonlinear_term(field).at(l);
            const double gen_lin = b - lambda * w;          // L <omega, e_l>
            const double gen_sq = 2.0 * w * gen_lin + qv_rate;  // L <omega, e_l>^2
            int_lin += dt * gen_lin;
            int_sq += dt * gen_sq;
            solver.step(field, k);
        }
        const double wt = field.at(l);
        m_lin.push_back(wt - w0 - int_lin);
        m_sq.push_back(wt * wt - w0 * w0 - int_sq);
    }
    const auto st_lin = sample_stats(m_lin);
    const auto st_sq = sample_stats(m_sq);
    const bool mart_ok = std::abs(st_lin.mean) <= 3.0 * st_lin.se_mean &&
                         std::abs(st_sq.mean) <= 3.0 * st_sq.se_mean;

    // (b) particle quadratic variation: the realized variance of <omega, e_l>
    // accumulates at rate 8 pi^2 |l|^2, within 10%.
    BiotSavartKernel kernel({.fourier_cutoff = 32, .grid_resolution = 256});
    const double pdt = 1e-3;
    const int pruns = 400;
    const std::uint64_t psteps = 100;  // t = 0.1
    bool qv_ok = true;
    std::string qv_detail;
    for (const WaveVector probe : {WaveVector{1, 0}, WaveVector{1, 1}}) {
        std::vector<double> slopes;
        for (int run = 0; run < pruns; ++run) {
            NoiseConfig cfg{.cutoff = 8, .master_seed = 10002,
                            .run = static_cast<std::uint64_t>(run), .dt = pdt};
            VortexSimulator sim(kernel, cfg);
            auto state =
                sample_initial(64, 10002, static_cast<std::uint64_t>(run));
            double prev = pair(state, probe);
            double qv = 0.0;
            bool failed = false;
            try {
                for (std::uint64_t k = 0; k < psteps; ++k) {
                    sim.step(state, k);
                    const double cur = pair(state, probe);
                    qv += (cur - prev) * (cur - prev);
                    prev = cur;
                }
            } catch (const std::runtime_error&) {
                failed = true;
            }
            if (failed || sim.degenerate()) continue;
            slopes.push_back(qv / (static_cast<double>(psteps) * pdt));
        }
        const double slope = sample_stats(slopes).mean;
        const double target = 8.0 * kPi * kPi * probe.norm_sq();
        if (std::abs(slope - target) > 0.10 * target) qv_ok = false;
        qv_detail += " (" + std::to_string(probe.k1) + "," +
                     std::to_string(probe.k2) + "): " + fmt(slope) + " vs " +
                     fmt(target) + ";";
    }

    r.pass = mart_ok && qv_ok;
    r.detail = "E[M_t] linear " + fmt(st_lin.mean) + " (3 SE " +
               fmt(3.0 * st_lin.se_mean) + "), square " + fmt(st_sq.mean) +
               " (3 SE " + fmt(3.0 * st_sq.se_mean) + "); QV slope" + qv_detail +
               " (within 10%)";
    return r;
}

// ---------------------------------------------------------------- check 11

CheckResult check_autocovariance_consistency() {
    CheckResult r{11, "particle vs Galerkin stationary autocovariance", false, ""};
    const std::vector<double> lags{0.05, 0.1, 0.2};
    std::vector<double> sample_times;
    for (int i = 0; i <= 10; ++i) sample_times.push_back(0.05 * i);

    ExperimentConfig particle;
    particle.name = "headline-particle";
    particle.system = "particle";
    particle.vortex_count = 256;
    particle.noise_cutoff = 16;
    particle.dt = 1e-3;
    particle.t_final = 0.5;
    particle.sample_times = sample_times;
    particle.autocov_lags = lags;
    particle.ensemble_size = 1000;
    particle.master_seed = 11001;
    particle.observables = {"mode:1,0"};

    ExperimentConfig galerkin;
    galerkin.name = "headline-galerkin";
    galerkin.system = "galerkin";
    galerkin.galerkin_cutoff = 6;
    galerkin.dt = 5e-4;
    galerkin.t_final = 0.5;
    galerkin.sample_times = sample_times;
    galerkin.autocov_lags = lags;
    galerkin.ensemble_size = 1000;
    galerkin.master_seed = 11002;
    galerkin.observables = {"mode:1,0"};

    const auto sa = run_ensemble(particle);
    const auto sb = run_ensemble(galerkin);
    const auto report = compare_autocovariance(sa, sb, lags, 3.0, 0.1);

    std::string detail;
    for (const auto& row : report.rows)
        detail += " lag " + fmt(row.lag) + ": particle " + fmt(row.value_a) +
                  " galerkin " + fmt(row.value_b) + " diff " + fmt(row.difference) +
                  " (3 SE " + fmt(3.0 * row.combined_se) + ", abs tol 0.1);";
    r.pass = report.all_pass;
    r.detail = detail + " degenerate particle runs: " +
               std::to_string(sa.degenerate_runs);
    return r;
}

using CheckFn = CheckResult (*)();

constexpr CheckFn kChecks[] = {
    check_covariance_identities, check_kernel,
    check_product_integrals,     check_single_vortex_diffusivity,
    check_stationarity,          check_gaussian_second_moment,
    check_r_statistic_moment,    check_increment_scaling,
    check_galerkin_invariance,   check_martingale,
    check_autocovariance_consistency,
};

void log_result(std::ostream& log, const CheckResult& res) {
    log << "[" << (res.id < 10 ? " " : "") << res.id << "] "
        << (res.pass ? "PASS" : "FAIL") << " " << res.name << " — " << res.detail
        << "\n"
        << std::flush;
}

}  // namespace

std::vector<CheckResult> run_acceptance(std::ostream& log,
                                        const std::vector<int>& only) {
    std::vector<CheckResult> results;
    for (int id = 1; id <= static_cast<int>(std::size(kChecks)); ++id) {
        if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end())
            continue;
        CheckResult res = kChecks[id - 1]();
        log_result(log, res);
        results.push_back(std::move(res));
    }
    return results;
}

bool run_identity_checks(std::ostream& log) {
    const auto results = run_acceptance(log, {1, 2, 3});
    return std::all_of(results.begin(), results.end(),
                       [](const CheckResult& r) { return r.pass; });
}

}  // namespace vmc
