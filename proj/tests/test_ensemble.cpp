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
#include <cstdio>
#include <fstream>

#include "vortexmc/ensemble.hpp"

using namespace vmc;

namespace {

ExperimentConfig small_particle_config() {
    ExperimentConfig cfg;
    cfg.name = "unit";
    cfg.system = "particle";
    cfg.vortex_count = 8;
    cfg.noise_cutoff = 4;
    cfg.kernel_cutoff = 16;
    cfg.kernel_grid = 64;
    cfg.dt = 1e-3;
    cfg.t_final = 0.02;
    cfg.sample_times = {0.0, 0.01, 0.02};
    cfg.ensemble_size = 24;
    cfg.master_seed = 42;
    cfg.observables = {"mode:1,0", "mode_sq:0,1", "msd", "min_dist", "sobolev:1.5,3"};
    return cfg;
}

}  // namespace

TEST_CASE("config validation names the offending field") {
    auto cfg = small_particle_config();
    cfg.vortex_count = 0;
    try {
        cfg.validate();
        FAIL("expected a validation error");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("vortex_count") != std::string::npos);
    }

    cfg = small_particle_config();
    cfg.system = "spectral";
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

    cfg = small_particle_config();
    cfg.sample_times = {0.5};  // beyond t_final
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

    cfg = small_particle_config();
    cfg.observables = {"vorticity:1,0"};
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("config text round trip is bit exact") {
    auto cfg = small_particle_config();
    cfg.dt = 0.1 + 1e-17;  // not representable prettily
    const auto text = cfg.to_text();
    const auto back = ExperimentConfig::from_text(text);
    CHECK(back.to_text() == text);
    CHECK(back.hash() == cfg.hash());
    CHECK(back.dt == cfg.dt);
    CHECK(back.observables == cfg.observables);

    auto other = cfg;
    other.master_seed += 1;
    CHECK(other.hash() != cfg.hash());
}

TEST_CASE("ensemble summaries are reproducible and worker-count independent") {
    auto cfg = small_particle_config();
    cfg.workers = 1;
    const auto a = run_ensemble(cfg);
    cfg.workers = 8;
    const auto b = run_ensemble(cfg);
    CHECK(a.to_json() == b.to_json());
    CHECK(a.config_hash == b.config_hash);
}

TEST_CASE("summary statistics have the right shape and sane values") {
    const auto cfg = small_particle_config();
    const auto s = run_ensemble(cfg);
    CHECK(s.sample_times.size() == 3);
    CHECK(s.stats.size() == 5);
    for (const auto& [name, series] : s.stats) {
        CHECK(series.size() == 3);
        for (const auto& m : series) CHECK(m.count + s.degenerate_runs == 24);
    }
    // msd starts at zero and grows
    const auto& msd = s.stats.at("msd");
    CHECK(msd[0].mean == 0.0);
    CHECK(msd[2].mean > msd[1].mean);
    CHECK(msd[1].mean > 0.0);
    // min_dist is a positive distance below the half-diagonal
    const auto& md = s.stats.at("min_dist");
    CHECK(md[0].mean > 0.0);
    CHECK(md[0].mean < std::sqrt(0.5));
    // mode_sq is nonnegative
    CHECK(s.stats.at("mode_sq:0,1")[1].mean >= 0.0);
}

TEST_CASE("galerkin ensembles run and record autocovariance") {
    ExperimentConfig cfg;
    cfg.name = "unit-galerkin";
    cfg.system = "galerkin";
    cfg.galerkin_cutoff = 2;
    cfg.dt = 5e-4;
    cfg.t_final = 0.1;
    cfg.sample_times = {0.0, 0.025, 0.05, 0.075, 0.1};
    cfg.autocov_lags = {0.025, 0.05};
    cfg.ensemble_size = 32;
    cfg.master_seed = 9;
    cfg.observables = {"mode:1,0", "mode:0,1"};
    const auto s = run_ensemble(cfg);
    CHECK(s.lags.size() == 2);
    CHECK(s.autocov.at("mode:1,0").size() == 2);
    // stationary OU-like autocov at lag tau is positive and decreasing
    const auto& ac = s.autocov.at("mode:1,0");
    CHECK(ac[0].mean > ac[1].mean);
    CHECK(ac[0].mean > 0.0);
}

TEST_CASE("summary JSON round trips through save and load") {
    auto cfg = small_particle_config();
    cfg.ensemble_size = 8;
    const auto s = run_ensemble(cfg);
    const std::string path = "/tmp/vortexmc_test_summary.json";
    s.save(path);
    const auto back = EnsembleSummary::load(path);
    CHECK(back.to_json() == s.to_json());
    std::remove(path.c_str());
}

TEST_CASE("series CSV is written for run zero") {
    auto cfg = small_particle_config();
    cfg.ensemble_size = 4;
    cfg.output_path = "/tmp/vortexmc_test_out";
    run_ensemble(cfg);
    std::ifstream csv("/tmp/vortexmc_test_out.series.csv");
    REQUIRE(csv.good());
    std::string header;
    std::getline(csv, header);
    CHECK(header == "t,name,value");
    int lines = 0;
    for (std::string line; std::getline(csv, line);) ++lines;
    CHECK(lines == 3 * 5);  // sample times x observables
    std::remove("/tmp/vortexmc_test_out.series.csv");
    std::remove("/tmp/vortexmc_test_out.summary.json");
    std::ifstream summary("/tmp/vortexmc_test_out.summary.json");
}

TEST_CASE("compute_moments matches closed forms") {
    std::vector<double> xs;
    for (int i = 1; i <= 100; ++i) xs.push_back(static_cast<double>(i));
    const auto m = compute_moments(xs);
    CHECK(m.count == 100);
    CHECK(m.mean == doctest::Approx(50.5));
    // Sample variance (n-1 divisor): sum (i - 50.5)^2 / 99 = 83325 / 99.
    CHECK(m.variance == doctest::Approx(83325.0 / 99.0));
    CHECK(m.se > 0.0);
}

TEST_CASE("autocovariance comparison gates on combined SE and abs tolerance") {
    EnsembleSummary a, b;
    a.lags = b.lags = {0.1};
    Moments ma{.count = 100, .mean = 1.0, .variance = 0.0, .fourth = 0.0, .se = 0.01};
    Moments mb = ma;
    mb.mean = 1.02;
    a.autocov["mode:1,0"] = {ma};
    b.autocov["mode:1,0"] = {mb};
    // |diff| = 0.02, combined se = sqrt(2) * 0.01, 3 * combined > diff → pass.
    auto rep = compare_autocovariance(a, b, {0.1});
    CHECK(rep.all_pass);
    REQUIRE(rep.rows.size() == 1);
    CHECK(rep.rows[0].difference == doctest::Approx(-0.02));

    mb.mean = 1.2;
    b.autocov["mode:1,0"] = {mb};
    rep = compare_autocovariance(a, b, {0.1});
    CHECK_FALSE(rep.all_pass);
    rep = compare_autocovariance(a, b, {0.1}, 3.0, 0.5);
    CHECK(rep.all_pass);
}
