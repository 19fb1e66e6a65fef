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

// vortexmc: simulate interacting point vortices under common transport noise
// on the 2-torus and verify their statistics against exact spectral oracles.
//
// Exit codes: 0 success, 1 check/test failure, 2 usage error, 3 numerical
// failure.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "vortexmc/acceptance.hpp"
#include "vortexmc/biot_savart.hpp"
#include "vortexmc/ensemble.hpp"
#include "vortexmc/vortex.hpp"
#include "vortexmc/wick.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct EnsembleArgs {
    std::string config_file;
    std::optional<std::uint64_t> seed;
    std::optional<int> ensemble_size;
    std::optional<int> vortex_count;
    std::optional<int> noise_cutoff;
    std::optional<int> galerkin_cutoff;
    std::optional<double> dt;
    std::optional<double> t_final;
    std::vector<double> sample_times;
    std::vector<double> autocov_lags;
    std::vector<std::string> observables;
    std::optional<std::string> integrator;
    std::optional<int> workers;
    std::string output;
    std::string trajectory_csv;  // particle only
};

void add_ensemble_flags(CLI::App* cmd, EnsembleArgs& args, bool particle) {
    cmd->add_option("--config", args.config_file,
                    "config file (flat key = value); flags override it");
    cmd->add_option("--seed", args.seed, "master seed (required)");
    cmd->add_option("--runs", args.ensemble_size, "ensemble size");
    if (particle) {
        cmd->add_option("--vortices", args.vortex_count, "number of vortices N");
        cmd->add_option("--noise-cutoff", args.noise_cutoff,
                        "transport-noise cutoff n (0 disables noise)");
        cmd->add_option("--integrator", args.integrator, "euler | heun");
        cmd->add_option("--trajectory-csv", args.trajectory_csv,
                        "dump run 0 as CSV rows t,i,xi,x1,x2");
    } else {
        cmd->add_option("--cutoff", args.galerkin_cutoff, "spectral cutoff M");
    }
    cmd->add_option("--dt", args.dt, "time step");
    cmd->add_option("--t-final", args.t_final, "final time");
    cmd->add_option("--sample-times", args.sample_times, "sample times")
        ->delimiter(',');
    cmd->add_option("--lags", args.autocov_lags, "autocovariance lags")
        ->delimiter(',');
    cmd->add_option("--observables", args.observables,
                    "mode:k1,k2 | mode_sq:k1,k2 | msd | min_dist | sobolev:s,M")
        ->delimiter(';');
    cmd->add_option("--workers", args.workers, "worker threads");
    cmd->add_option("--out", args.output,
                    "output prefix (<out>.summary.json, <out>.series.csv)");
}

vmc::ExperimentConfig build_config(const EnsembleArgs& args, bool particle) {
    vmc::ExperimentConfig cfg;
    if (!args.config_file.empty())
        cfg = vmc::ExperimentConfig::from_file(args.config_file);
    cfg.system = particle ? "particle" : "galerkin";
    if (!args.seed) throw CLI::ValidationError("--seed", "a master seed is required");
    cfg.master_seed = *args.seed;
    if (args.ensemble_size) cfg.ensemble_size = *args.ensemble_size;
    if (args.vortex_count) cfg.vortex_count = *args.vortex_count;
    if (args.noise_cutoff) cfg.noise_cutoff = *args.noise_cutoff;
    if (args.galerkin_cutoff) cfg.galerkin_cutoff = *args.galerkin_cutoff;
    if (args.dt) cfg.dt = *args.dt;
    if (args.t_final) cfg.t_final = *args.t_final;
    if (!args.sample_times.empty()) cfg.sample_times = args.sample_times;
    if (!args.autocov_lags.empty()) cfg.autocov_lags = args.autocov_lags;
    if (!args.observables.empty()) cfg.observables = args.observables;
    if (args.integrator) cfg.integrator = *args.integrator;
    if (args.workers) cfg.workers = *args.workers;
    if (!args.output.empty()) cfg.output_path = args.output;
    if (cfg.sample_times.empty()) cfg.sample_times = {0.0, cfg.t_final};
    if (cfg.observables.empty()) cfg.observables = {"mode:1,0"};
    return cfg;
}

void print_summary(const vmc::EnsembleSummary& summary) {
    std::printf("degenerate runs: %lld\n",
                static_cast<long long>(summary.degenerate_runs));
    for (const auto& [name, per_time] : summary.stats)
        for (std::size_t t = 0; t < per_time.size(); ++t) {
            const auto& m = per_time[t];
            std::printf("t=%-8g %-16s mean % .6e (se %.2e)  var % .6e\n",
                        summary.sample_times[t], name.c_str(), m.mean, m.se,
                        m.variance);
        }
    for (const auto& [name, per_lag] : summary.autocov)
        for (std::size_t i = 0; i < per_lag.size(); ++i)
            std::printf("lag=%-6g %-16s autocov % .6e (se %.2e)\n",
                        summary.lags[i], name.c_str(), per_lag[i].mean,
                        per_lag[i].se);
}

void dump_trajectory(const vmc::ExperimentConfig& cfg, const std::string& path) {
    vmc::BiotSavartKernel kernel({cfg.kernel_cutoff, cfg.kernel_grid});
    vmc::NoiseConfig nc;
    nc.cutoff = cfg.noise_cutoff;
    nc.master_seed = cfg.master_seed;
    nc.run = 0;
    nc.dt = cfg.dt;
    nc.integrator = cfg.integrator == "heun" ? vmc::Integrator::Heun
                                             : vmc::Integrator::EulerMaruyama;
    vmc::VortexSimulator sim(kernel, nc);
    auto state = vmc::sample_initial(cfg.vortex_count, cfg.master_seed, 0);

    std::FILE* out = std::fopen(path.c_str(), "w");
    if (!out) throw std::runtime_error("cannot write trajectory CSV: " + path);
    std::fprintf(out, "t,i,xi,x1,x2\n");
    auto emit = [&] {
        for (int i = 0; i < state.size(); ++i)
            std::fprintf(out, "%.10g,%d,%.17g,%.17g,%.17g\n", state.time, i,
                         state.intensities[i], state.positions(0, i),
                         state.positions(1, i));
    };
    std::vector<std::uint64_t> sample_steps;
    for (double t : cfg.sample_times)
        sample_steps.push_back(static_cast<std::uint64_t>(std::llround(t / cfg.dt)));
    const auto last = *std::max_element(sample_steps.begin(), sample_steps.end());
    for (std::uint64_t k = 0; k <= last; ++k) {
        if (std::find(sample_steps.begin(), sample_steps.end(), k) !=
            sample_steps.end())
            emit();
        if (k < last) sim.step(state, k);
    }
    std::fclose(out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"point-vortex Monte Carlo and spectral verification toolkit"};
    app.require_subcommand(1);

    auto* identities =
        app.add_subcommand("identities", "run the exact algebra and kernel checks");

    EnsembleArgs sim_args, gal_args;
    auto* simulate =
        app.add_subcommand("simulate", "run a particle-system ensemble");
    add_ensemble_flags(simulate, sim_args, true);
    auto* galerkin =
        app.add_subcommand("galerkin", "run a spectral-oracle ensemble");
    add_ensemble_flags(galerkin, gal_args, false);

    auto* moments = app.add_subcommand(
        "moments", "print exact Gaussian-ensemble moments of the R statistic");
    std::vector<int> lvec{1, 0}, mvec{0, 1};
    int moments_n = 8, moments_vortices = 8, moments_budget = 16;
    moments->add_option("--l", lvec, "first mode l (two integers)")
        ->expected(2);
    moments->add_option("--m", mvec, "second mode m (two integers)")
        ->expected(2);
    moments->add_option("--n", moments_n, "noise cutoff n");
    moments->add_option("--vortices", moments_vortices, "number of vortices N");
    moments->add_option("--max-n", moments_budget, "cutoff budget guard");

    auto* compare = app.add_subcommand(
        "compare", "compare stationary autocovariances of two summaries");
    std::string summary_a, summary_b;
    std::vector<double> compare_lags;
    double se_mult = 3.0, abs_tol = 0.0;
    compare->add_option("first", summary_a, "first .summary.json")->required();
    compare->add_option("second", summary_b, "second .summary.json")->required();
    compare->add_option("--lags", compare_lags, "lags to compare (default: all shared)")
        ->delimiter(',');
    compare->add_option("--se-mult", se_mult, "standard-error multiplier");
    compare->add_option("--abs-tol", abs_tol, "absolute tolerance floor");

    auto* accept =
        app.add_subcommand("accept", "run the full acceptance suite (slow)");
    std::vector<int> accept_only;
    accept->add_option("--only", accept_only, "run only these check numbers")
        ->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (identities->parsed()) {
            return vmc::run_identity_checks(std::cout) ? kExitPass : kExitFail;
        }
        if (simulate->parsed() || galerkin->parsed()) {
            const bool particle = simulate->parsed();
            const auto& args = particle ? sim_args : gal_args;
            const auto cfg = build_config(args, particle);
            cfg.validate();
            const auto summary = vmc::run_ensemble(cfg);
            print_summary(summary);
            if (particle && !args.trajectory_csv.empty())
                dump_trajectory(cfg, args.trajectory_csv);
            return kExitPass;
        }
        if (moments->parsed()) {
            const vmc::WaveVector l{lvec[0], lvec[1]}, m{mvec[0], mvec[1]};
            const double split = vmc::exact_r_second_moment(
                l, m, moments_n, moments_vortices, moments_budget);
            const double wick = vmc::exact_r_second_moment_wick(
                l, m, moments_n, moments_vortices, moments_budget);
            std::printf("E[R^2] l=(%d,%d) m=(%d,%d) n=%d N=%d\n", l.k1, l.k2, m.k1,
                        m.k2, moments_n, moments_vortices);
            std::printf("  case-split route: %.15g\n", split);
            std::printf("  wick-sum route:   %.15g\n", wick);
            const bool agree =
                std::abs(split - wick) <= 1e-9 * std::max(1.0, std::abs(split));
            std::printf("  routes agree: %s\n", agree ? "yes" : "NO");
            return agree ? kExitPass : kExitNumerical;
        }
        if (compare->parsed()) {
            const auto a = vmc::EnsembleSummary::load(summary_a);
            const auto b = vmc::EnsembleSummary::load(summary_b);
            std::vector<double> lags = compare_lags.empty() ? a.lags : compare_lags;
            const auto report =
                vmc::compare_autocovariance(a, b, lags, se_mult, abs_tol);
            for (const auto& row : report.rows)
                std::printf("%-16s lag %-8g  a % .6e  b % .6e  diff % .3e  "
                            "se %.3e  %s\n",
                            row.observable.c_str(), row.lag, row.value_a,
                            row.value_b, row.difference, row.combined_se,
                            row.pass ? "PASS" : "FAIL");
            return report.all_pass ? kExitPass : kExitFail;
        }
        if (accept->parsed()) {
            const auto results = vmc::run_acceptance(std::cout, accept_only);
            const bool all = std::all_of(results.begin(), results.end(),
                                         [](const auto& r) { return r.pass; });
            std::printf("%zu/%zu checks passed\n",
                        static_cast<std::size_t>(std::count_if(
                            results.begin(), results.end(),
                            [](const auto& r) { return r.pass; })),
                        results.size());
            return all ? kExitPass : kExitFail;
        }
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return kExitNumerical;
    }
    return kExitUsage;
}
