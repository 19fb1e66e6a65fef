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

#include "vortexmc/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "vortexmc/galerkin.hpp"
#include "vortexmc/observables.hpp"
#include "vortexmc/vortex.hpp"

namespace vmc {
namespace {

using json = nlohmann::json;

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string join_doubles(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += fmt_double(v[i]);
    }
    return out;
}

std::vector<double> split_doubles(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stod(item));
    return out;
}

std::vector<std::string> split_strings(const std::string& s, char sep = ';') {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        if (!item.empty()) out.push_back(item);
    return out;
}

[[noreturn]] void config_error(const std::string& field, const std::string& why) {
    throw std::invalid_argument("ExperimentConfig." + field + ": " + why);
}

struct ObservableSpec {
    std::string name;
    enum Kind { Mode, ModeSq, Msd, MinDist, Sobolev } kind;
    WaveVector l{1, 0};
    double s = 1.5;
    int cutoff = 8;
};

ObservableSpec parse_observable(const std::string& name) {
    ObservableSpec spec;
    spec.name = name;
    const auto colon = name.find(':');
    const std::string head = name.substr(0, colon);
    const std::string args = colon == std::string::npos ? "" : name.substr(colon + 1);
    if (head == "mode" || head == "mode_sq") {
        spec.kind = head == "mode" ? ObservableSpec::Mode : ObservableSpec::ModeSq;
        const auto parts = split_doubles(args);
        if (parts.size() != 2) config_error("observables", "expected mode:k1,k2 in '" + name + "'");
        spec.l = {static_cast<int>(parts[0]), static_cast<int>(parts[1])};
        require_nonzero(spec.l, "observables");
    } else if (head == "msd") {
        spec.kind = ObservableSpec::Msd;
    } else if (head == "min_dist") {
        spec.kind = ObservableSpec::MinDist;
    } else if (head == "sobolev") {
        spec.kind = ObservableSpec::Sobolev;
        const auto parts = split_doubles(args);
        if (parts.size() != 2) config_error("observables", "expected sobolev:s,M in '" + name + "'");
        spec.s = parts[0];
        spec.cutoff = static_cast<int>(parts[1]);
        if (spec.s <= 0 || spec.cutoff < 1)
            config_error("observables", "sobolev needs s > 0 and M >= 1 in '" + name + "'");
    } else {
        config_error("observables", "unknown observable '" + name + "'");
    }
    return spec;
}

double eval_particle(const ObservableSpec& spec, const VortexState& state) {
    switch (spec.kind) {
        case ObservableSpec::Mode:
            return pair(state, spec.l);
        case ObservableSpec::ModeSq: {
            const double v = pair(state, spec.l);
            return v * v;
        }
        case ObservableSpec::Msd:
            return state.displacement.colwise().squaredNorm().mean();
        case ObservableSpec::MinDist:
            return min_pair_distance(state);
        case ObservableSpec::Sobolev:
            return sobolev_norm(spectral_coeffs(state, spec.cutoff), spec.s);
    }
    throw std::logic_error("eval_particle: unreachable");
}

double eval_galerkin(const ObservableSpec& spec, const SpectralField& field) {
    switch (spec.kind) {
        case ObservableSpec::Mode:
            return field.at(spec.l);
        case ObservableSpec::ModeSq: {
            const double v = field.at(spec.l);
            return v * v;
        }
        case ObservableSpec::Sobolev: {
            SpectralField sub(spec.cutoff);
            for (std::size_t i = 0; i < sub.modes().size(); ++i)
                sub.coeffs()[static_cast<Eigen::Index>(i)] = field.at(sub.modes()[i]);
            return sobolev_norm(sub, spec.s);
        }
        default:
            throw std::invalid_argument("observable '" + spec.name +
                                        "' is particle-only");
    }
}

struct RunResult {
    bool degenerate = false;
    // [observable][sample time]
    std::vector<std::vector<double>> values;
    // [observable][lag] time-averaged products
    std::vector<std::vector<double>> lag_products;
};

}  // namespace

void ExperimentConfig::validate() const {
    if (system != "particle" && system != "galerkin")
        config_error("system", "must be 'particle' or 'galerkin', got '" + system + "'");
    if (vortex_count < 1) config_error("vortex_count", "must be >= 1");
    if (noise_cutoff < 0) config_error("noise_cutoff", "must be >= 0");
    if (galerkin_cutoff < 1) config_error("galerkin_cutoff", "must be >= 1");
    if (kernel_cutoff < 1) config_error("kernel_cutoff", "must be >= 1");
    if (dt <= 0) config_error("dt", "must be positive");
    if (t_final <= 0) config_error("t_final", "must be positive");
    if (ensemble_size < 1) config_error("ensemble_size", "must be >= 1");
    if (workers < 1) config_error("workers", "must be >= 1");
    if (integrator != "euler" && integrator != "heun")
        config_error("integrator", "must be 'euler' or 'heun'");
    if (observables.empty()) config_error("observables", "must not be empty");
    if (sample_times.empty()) config_error("sample_times", "must not be empty");
    for (const auto& o : observables) parse_observable(o);
    for (double t : sample_times)
        if (t < 0 || t > t_final + 1e-12)
            config_error("sample_times", "time " + fmt_double(t) + " outside [0, t_final]");
    if (!autocov_lags.empty()) {
        if (sample_times.size() < 2)
            config_error("autocov_lags", "need at least two sample_times");
        const double spacing = sample_times[1] - sample_times[0];
        for (std::size_t i = 2; i < sample_times.size(); ++i)
            if (std::abs(sample_times[i] - sample_times[i - 1] - spacing) > 1e-9)
                config_error("autocov_lags", "sample_times must be uniformly spaced");
        for (double lag : autocov_lags) {
            const double ratio = lag / spacing;
            if (lag <= 0 || std::abs(ratio - std::llround(ratio)) > 1e-9)
                config_error("autocov_lags",
                             "lag " + fmt_double(lag) + " is not a multiple of the sample spacing");
        }
    }
}

std::string ExperimentConfig::to_text() const {
    std::ostringstream out;
    out << identity_text()
        << "workers = " << workers << "\n"
        << "output_path = " << output_path << "\n";
    return out.str();
}

std::string ExperimentConfig::identity_text() const {
    std::string joined_obs;
    for (std::size_t i = 0; i < observables.size(); ++i) {
        if (i) joined_obs += ";";
        joined_obs += observables[i];
    }
    std::ostringstream out;
    out << "name = " << name << "\n"
        << "system = " << system << "\n"
        << "vortex_count = " << vortex_count << "\n"
        << "noise_cutoff = " << noise_cutoff << "\n"
        << "galerkin_cutoff = " << galerkin_cutoff << "\n"
        << "kernel_cutoff = " << kernel_cutoff << "\n"
        << "kernel_grid = " << kernel_grid << "\n"
        << "dt = " << fmt_double(dt) << "\n"
        << "t_final = " << fmt_double(t_final) << "\n"
        << "sample_times = " << join_doubles(sample_times) << "\n"
        << "autocov_lags = " << join_doubles(autocov_lags) << "\n"
        << "ensemble_size = " << ensemble_size << "\n"
        << "master_seed = " << master_seed << "\n"
        << "observables = " << joined_obs << "\n"
        << "integrator = " << integrator << "\n";
    return out.str();
}

ExperimentConfig ExperimentConfig::from_text(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "name") cfg.name = value;
        else if (key == "system") cfg.system = value;
        else if (key == "vortex_count") cfg.vortex_count = std::stoi(value);
        else if (key == "noise_cutoff") cfg.noise_cutoff = std::stoi(value);
        else if (key == "galerkin_cutoff") cfg.galerkin_cutoff = std::stoi(value);
        else if (key == "kernel_cutoff") cfg.kernel_cutoff = std::stoi(value);
        else if (key == "kernel_grid") cfg.kernel_grid = std::stoi(value);
        else if (key == "dt") cfg.dt = std::stod(value);
        else if (key == "t_final") cfg.t_final = std::stod(value);
        else if (key == "sample_times") cfg.sample_times = split_doubles(value);
        else if (key == "autocov_lags") cfg.autocov_lags = split_doubles(value);
        else if (key == "ensemble_size") cfg.ensemble_size = std::stoi(value);
        else if (key == "master_seed") cfg.master_seed = std::stoull(value);
        else if (key == "observables") cfg.observables = split_strings(value);
        else if (key == "integrator") cfg.integrator = value;
        else if (key == "workers") cfg.workers = std::stoi(value);
        else if (key == "output_path") cfg.output_path = value;
        else throw std::invalid_argument("ExperimentConfig: unknown key '" + key + "'");
    }
    return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return from_text(buf.str());
}

std::uint64_t ExperimentConfig::hash() const {
    // FNV-1a over the canonical serialization.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : identity_text()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

Moments compute_moments(const std::vector<double>& samples) {
    Moments m;
    m.count = static_cast<std::int64_t>(samples.size());
    if (samples.empty()) return m;
    double sum = 0.0;
    for (double v : samples) sum += v;
    m.mean = sum / samples.size();
    double var = 0.0, fourth = 0.0;
    for (double v : samples) {
        var += (v - m.mean) * (v - m.mean);
        fourth += v * v * v * v;
    }
    m.variance = samples.size() > 1 ? var / (samples.size() - 1) : 0.0;
    m.fourth = fourth / samples.size();

    const std::size_t n_batches =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::sqrt(samples.size())));
    if (n_batches > 1) {
        std::vector<double> batch_means;
        const std::size_t per = samples.size() / n_batches;
        for (std::size_t b = 0; b < n_batches; ++b) {
            double s = 0.0;
            for (std::size_t i = b * per; i < (b + 1) * per; ++i) s += samples[i];
            batch_means.push_back(s / per);
        }
        double bv = 0.0;
        for (double v : batch_means) bv += (v - m.mean) * (v - m.mean);
        m.se = std::sqrt(bv / (n_batches * (n_batches - 1.0)));
    }
    return m;
}

EnsembleSummary run_ensemble(const ExperimentConfig& cfg) {
    cfg.validate();
    const bool particle = cfg.system == "particle";

    std::vector<ObservableSpec> specs;
    for (const auto& o : cfg.observables) {
        auto spec = parse_observable(o);
        if (!particle &&
            (spec.kind == ObservableSpec::Msd || spec.kind == ObservableSpec::MinDist))
            config_error("observables", "'" + o + "' is particle-only");
        specs.push_back(spec);
    }

    // Snap sample times onto the step grid.
    std::vector<std::uint64_t> sample_steps;
    for (double t : cfg.sample_times)
        sample_steps.push_back(static_cast<std::uint64_t>(std::llround(t / cfg.dt)));
    const std::uint64_t total_steps =
        static_cast<std::uint64_t>(std::llround(cfg.t_final / cfg.dt));
    for (auto s : sample_steps)
        if (s > total_steps) config_error("sample_times", "sample step beyond t_final after snapping");

    const double spacing = cfg.sample_times.size() > 1
                               ? cfg.sample_times[1] - cfg.sample_times[0]
                               : 0.0;
    std::vector<std::size_t> lag_strides;
    for (double lag : cfg.autocov_lags)
        lag_strides.push_back(static_cast<std::size_t>(std::llround(lag / spacing)));

    // Shared read-only resources.
    std::unique_ptr<BiotSavartKernel> kernel;
    std::unique_ptr<GalerkinSolver> proto_solver;
    if (particle) {
        kernel = std::make_unique<BiotSavartKernel>(
            KernelConfig{cfg.kernel_cutoff, cfg.kernel_grid});
    } else {
        GalerkinConfig gc;
        gc.cutoff = cfg.galerkin_cutoff;
        gc.dt = cfg.dt;
        gc.master_seed = cfg.master_seed;
        proto_solver = std::make_unique<GalerkinSolver>(gc);
    }

    const std::uint64_t max_sample_step =
        *std::max_element(sample_steps.begin(), sample_steps.end());

    auto do_run = [&](std::uint64_t run) {
        RunResult res;
        res.values.assign(specs.size(), std::vector<double>(sample_steps.size(), 0.0));
        try {
            auto record = [&](std::uint64_t step_count, auto&& eval) {
                for (std::size_t t = 0; t < sample_steps.size(); ++t)
                    if (sample_steps[t] == step_count)
                        for (std::size_t o = 0; o < specs.size(); ++o)
                            res.values[o][t] = eval(specs[o]);
            };
            if (particle) {
                VortexState state = sample_initial(cfg.vortex_count, cfg.master_seed, run);
                NoiseConfig nc;
                nc.cutoff = cfg.noise_cutoff;
                nc.master_seed = cfg.master_seed;
                nc.run = run;
                nc.dt = cfg.dt;
                nc.integrator = cfg.integrator == "heun" ? Integrator::Heun
                                                         : Integrator::EulerMaruyama;
                VortexSimulator sim(*kernel, nc);
                record(0, [&](const ObservableSpec& s) { return eval_particle(s, state); });
                for (std::uint64_t step = 0; step < max_sample_step; ++step) {
                    sim.step(state, step);
                    record(step + 1,
                           [&](const ObservableSpec& s) { return eval_particle(s, state); });
                }
                res.degenerate = sim.degenerate();
            } else {
                SpectralField field =
                    init_white_noise(cfg.galerkin_cutoff, cfg.master_seed, run);
                GalerkinSolver solver = proto_solver->with_run(run);
                record(0, [&](const ObservableSpec& s) { return eval_galerkin(s, field); });
                for (std::uint64_t step = 0; step < max_sample_step; ++step) {
                    solver.step(field, step);
                    record(step + 1,
                           [&](const ObservableSpec& s) { return eval_galerkin(s, field); });
                }
            }
        } catch (const std::runtime_error&) {
            res.degenerate = true;  // numerical blowup or collision: exclude and count
        }
        if (!res.degenerate && !lag_strides.empty()) {
            res.lag_products.assign(specs.size(),
                                    std::vector<double>(lag_strides.size(), 0.0));
            for (std::size_t o = 0; o < specs.size(); ++o)
                for (std::size_t li = 0; li < lag_strides.size(); ++li) {
                    const std::size_t stride = lag_strides[li];
                    if (stride >= sample_steps.size()) continue;
                    double sum = 0.0;
                    const std::size_t pairs = sample_steps.size() - stride;
                    for (std::size_t t = 0; t < pairs; ++t)
                        sum += res.values[o][t] * res.values[o][t + stride];
                    res.lag_products[o][li] = sum / pairs;
                }
        }
        return res;
    };

    const auto runs = static_cast<std::uint64_t>(cfg.ensemble_size);
    std::vector<RunResult> results(runs);
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::uint64_t r = next.fetch_add(1);
            if (r >= runs) break;
            results[r] = do_run(r);
        }
    };
    if (cfg.workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < cfg.workers; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    EnsembleSummary summary;
    summary.config_text = cfg.identity_text();
    summary.config_hash = cfg.hash();
    summary.master_seed = cfg.master_seed;
    summary.sample_times = cfg.sample_times;
    summary.lags = cfg.autocov_lags;

    // Reduce in run-index order; completion order never matters.
    for (std::size_t o = 0; o < specs.size(); ++o) {
        auto& per_time = summary.stats[specs[o].name];
        for (std::size_t t = 0; t < sample_steps.size(); ++t) {
            std::vector<double> samples;
            samples.reserve(runs);
            for (std::uint64_t r = 0; r < runs; ++r)
                if (!results[r].degenerate) samples.push_back(results[r].values[o][t]);
            per_time.push_back(compute_moments(samples));
        }
        if (!lag_strides.empty()) {
            auto& per_lag = summary.autocov[specs[o].name];
            for (std::size_t li = 0; li < lag_strides.size(); ++li) {
                std::vector<double> samples;
                for (std::uint64_t r = 0; r < runs; ++r)
                    if (!results[r].degenerate)
                        samples.push_back(results[r].lag_products[o][li]);
                per_lag.push_back(compute_moments(samples));
            }
        }
    }
    for (std::uint64_t r = 0; r < runs; ++r)
        if (results[r].degenerate) ++summary.degenerate_runs;

    if (!cfg.output_path.empty()) {
        summary.save(cfg.output_path + ".summary.json");
        // Time series of run 0 (if usable), plot-ready.
        std::ofstream series(cfg.output_path + ".series.csv");
        series << "t,name,value\n";
        if (!results.empty() && !results[0].degenerate)
            for (std::size_t t = 0; t < sample_steps.size(); ++t)
                for (std::size_t o = 0; o < specs.size(); ++o)
                    series << fmt_double(cfg.sample_times[t]) << "," << specs[o].name << ","
                           << fmt_double(results[0].values[o][t]) << "\n";
    }
    return summary;
}

namespace {

json moments_to_json(const Moments& m) {
    return json{{"count", m.count},
                {"mean", m.mean},
                {"variance", m.variance},
                {"fourth", m.fourth},
                {"se", m.se}};
}

Moments moments_from_json(const json& j) {
    Moments m;
    m.count = j.at("count").get<std::int64_t>();
    m.mean = j.at("mean").get<double>();
    m.variance = j.at("variance").get<double>();
    m.fourth = j.at("fourth").get<double>();
    m.se = j.at("se").get<double>();
    return m;
}

}  // namespace

std::string EnsembleSummary::to_json() const {
    json j;
    j["config_text"] = config_text;
    j["config_hash"] = config_hash;
    j["master_seed"] = master_seed;
    j["degenerate_runs"] = degenerate_runs;
    j["sample_times"] = sample_times;
    j["lags"] = lags;
    for (const auto& [name, per_time] : stats) {
        auto& arr = j["stats"][name];
        for (const auto& m : per_time) arr.push_back(moments_to_json(m));
    }
    for (const auto& [name, per_lag] : autocov) {
        auto& arr = j["autocov"][name];
        for (const auto& m : per_lag) arr.push_back(moments_to_json(m));
    }
    return j.dump(2);
}

EnsembleSummary EnsembleSummary::from_json(const std::string& text) {
    const json j = json::parse(text);
    EnsembleSummary s;
    s.config_text = j.at("config_text").get<std::string>();
    s.config_hash = j.at("config_hash").get<std::uint64_t>();
    s.master_seed = j.at("master_seed").get<std::uint64_t>();
    s.degenerate_runs = j.at("degenerate_runs").get<std::int64_t>();
    s.sample_times = j.at("sample_times").get<std::vector<double>>();
    s.lags = j.at("lags").get<std::vector<double>>();
    if (j.contains("stats"))
        for (const auto& [name, arr] : j.at("stats").items())
            for (const auto& m : arr) s.stats[name].push_back(moments_from_json(m));
    if (j.contains("autocov"))
        for (const auto& [name, arr] : j.at("autocov").items())
            for (const auto& m : arr) s.autocov[name].push_back(moments_from_json(m));
    return s;
}

void EnsembleSummary::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write summary: " + path);
    out << to_json() << "\n";
}

EnsembleSummary EnsembleSummary::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read summary: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return from_json(buf.str());
}

ComparisonReport compare_autocovariance(const EnsembleSummary& a, const EnsembleSummary& b,
                                        const std::vector<double>& lags,
                                        double se_multiplier, double abs_tolerance) {
    ComparisonReport report;
    for (const auto& [name, per_lag_a] : a.autocov) {
        const auto it = b.autocov.find(name);
        if (it == b.autocov.end())
            throw std::invalid_argument("compare_autocovariance: observable '" + name +
                                        "' missing from second summary");
        for (double lag : lags) {
            auto find_lag = [&](const std::vector<double>& ls) {
                for (std::size_t i = 0; i < ls.size(); ++i)
                    if (std::abs(ls[i] - lag) < 1e-12) return i;
                throw std::invalid_argument("compare_autocovariance: lag " +
                                            std::to_string(lag) + " not present");
            };
            const Moments& ma = per_lag_a[find_lag(a.lags)];
            const Moments& mb = it->second[find_lag(b.lags)];
            ComparisonRow row;
            row.observable = name;
            row.lag = lag;
            row.value_a = ma.mean;
            row.value_b = mb.mean;
            row.difference = ma.mean - mb.mean;
            row.combined_se = std::sqrt(ma.se * ma.se + mb.se * mb.se);
            const double tol = std::max(se_multiplier * row.combined_se, abs_tolerance);
            row.pass = std::abs(row.difference) <= tol;
            report.all_pass = report.all_pass && row.pass;
            report.rows.push_back(row);
        }
    }
    if (report.rows.empty())
        throw std::invalid_argument("compare_autocovariance: no shared observables");
    return report;
}

}  // namespace vmc
