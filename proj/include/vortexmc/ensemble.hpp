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
#include <map>
#include <string>
#include <vector>

namespace vmc {

/// One reproducible Monte Carlo experiment: which system to run, at what
/// resolution, what to record, and the master seed everything derives from.
struct ExperimentConfig {
    std::string name = "experiment";
    std::string system = "particle";  // "particle" | "galerkin"
    int vortex_count = 64;
    int noise_cutoff = 8;
    int galerkin_cutoff = 5;
    int kernel_cutoff = 32;
    int kernel_grid = 256;  // 0 = no interpolation table
    double dt = 1e-3;
    double t_final = 0.5;
    std::vector<double> sample_times;  // snapped to the dt grid; must lie in [0, t_final]
    std::vector<double> autocov_lags;  // multiples of the sample spacing
    int ensemble_size = 100;
    std::uint64_t master_seed = 1;
    std::vector<std::string> observables;  // mode:k1,k2 | mode_sq:k1,k2 | msd | min_dist | sobolev:s,M
    std::string integrator = "euler";      // "euler" | "heun"
    int workers = 1;
    std::string output_path;  // optional: <path>.summary.json, <path>.series.csv

    void validate() const;  // throws naming the offending field

    std::string to_text() const;  // flat key = value, bit-exact round trip
    /// Like to_text() but without execution-only fields (workers, output
    /// path) that cannot change the results; this is what hash() digests
    /// and what summaries embed.
    std::string identity_text() const;
    static ExperimentConfig from_text(const std::string& text);
    static ExperimentConfig from_file(const std::string& path);
    std::uint64_t hash() const;
};

/// Moments of one observable across runs at one sample time (or one lag).
struct Moments {
    std::int64_t count = 0;
    double mean = 0.0;
    double variance = 0.0;
    double fourth = 0.0;  // raw E[x^4]
    double se = 0.0;      // batch-means standard error of the mean
};

struct EnsembleSummary {
    std::string config_text;
    std::uint64_t config_hash = 0;
    std::uint64_t master_seed = 0;
    std::int64_t degenerate_runs = 0;
    std::vector<double> sample_times;
    std::vector<double> lags;
    // observable name -> one Moments per sample time
    std::map<std::string, std::vector<Moments>> stats;
    // observable name -> one Moments per lag (per-run time-averaged products)
    std::map<std::string, std::vector<Moments>> autocov;

    std::string to_json() const;
    static EnsembleSummary from_json(const std::string& text);
    void save(const std::string& path) const;
    static EnsembleSummary load(const std::string& path);
};

/// Runs the full ensemble; deterministic in master_seed regardless of the
/// worker count. Degenerate runs (near-collision or numerical blowup) are
/// excluded from the statistics and counted.
EnsembleSummary run_ensemble(const ExperimentConfig& cfg);

struct ComparisonRow {
    std::string observable;
    double lag = 0.0;
    double value_a = 0.0, value_b = 0.0;
    double difference = 0.0;
    double combined_se = 0.0;
    bool pass = false;
};

struct ComparisonReport {
    std::vector<ComparisonRow> rows;
    bool all_pass = true;
};

/// Per lag: difference of stationary autocovariances with a pass/fail at
/// max(se_multiplier * combined SE, abs_tolerance).
ComparisonReport compare_autocovariance(const EnsembleSummary& a, const EnsembleSummary& b,
                                        const std::vector<double>& lags,
                                        double se_multiplier = 3.0,
                                        double abs_tolerance = 0.0);

/// Batch-means moments of a sample vector (runs in completion-independent
/// index order).
Moments compute_moments(const std::vector<double>& samples);

}  // namespace vmc
