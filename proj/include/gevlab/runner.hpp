#pragma once

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "gevlab/analysis.hpp"
#include "gevlab/config.hpp"
#include "gevlab/initial_conditions.hpp"
#include "gevlab/timestep.hpp"

namespace gevlab {

using json = nlohmann::json;

/// JSON value for a double: finite numbers pass through, non-finite values
/// become the string "nan" (callers set a status flag alongside).
inline json json_number(double v, bool* had_nan = nullptr) {
    if (std::isfinite(v)) return v;
    if (had_nan) *had_nan = true;
    return "nan";
}

inline std::string format_sci(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

struct RunResult {
    int exit_code = 0;  // 0 completed, 1 config error, 2 blow-up
    json summary;
    std::vector<NormSeries> series;
    TrajectorySummary::Status status = TrajectorySummary::Status::Completed;
};

namespace detail {

inline SpectralField build_initial(const ExperimentConfig& cfg, const Grid& grid) {
    switch (cfg.initial.kind) {
        case InitialCondition::Kind::GaussianBump:
            return gaussian_bump(grid, cfg.initial.center, cfg.initial.width, cfg.initial.amplitude);
        case InitialCondition::Kind::SingleMode:
            return single_mode(grid, cfg.initial.mode_x, cfg.initial.mode_y, cfg.initial.amplitude);
        case InitialCondition::Kind::RandomBand:
            return random_band(grid, cfg.initial.seed, cfg.initial.band_lo, cfg.initial.band_hi,
                               cfg.initial.amplitude);
    }
    throw std::logic_error("build_initial: unhandled kind");
}

inline void write_csv(const std::string& path, const std::vector<NormSeries>& series) {
    if (path.empty() || series.empty()) return;
    std::ofstream out(path);
    if (!out) throw config_error("cannot open CSV output path " + path);
    out << "t";
    for (const auto& s : series) out << "," << s.label;
    out << "\n";
    // series can start late (e.g. radius before enough shells exist): key
    // rows on the union of sample times, missing entries become nan
    std::vector<double> times;
    for (const auto& s : series) times.insert(times.end(), s.times.begin(), s.times.end());
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    std::vector<std::size_t> cursor(series.size(), 0);
    for (double t : times) {
        out << format_sci(t);
        for (std::size_t i = 0; i < series.size(); ++i) {
            const auto& s = series[i];
            if (cursor[i] < s.size() && s.times[cursor[i]] == t) {
                out << "," << format_sci(s.values[cursor[i]]);
                ++cursor[i];
            } else {
                out << ",nan";
            }
        }
        out << "\n";
    }
}

inline json fit_to_json(const DecayFit& fit, double zeta, double p, const std::string& label,
                        bool* had_nan) {
    json j;
    j["label"] = label;
    j["zeta"] = zeta;
    j["p"] = p == kInfExponent ? json("inf") : json(p);
    j["window"] = {json_number(fit.window.t0, had_nan), json_number(fit.window.t1, had_nan)};
    j["fitted_exponent"] = json_number(fit.fitted_exponent, had_nan);
    j["intercept"] = json_number(fit.intercept, had_nan);
    j["r_squared"] = json_number(fit.r_squared, had_nan);
    j["predicted_exponent"] = json_number(fit.predicted_exponent, had_nan);
    j["mode"] = fit.mode;
    j["verdict"] = fit.verdict;
    return j;
}

}  // namespace detail

/// Execute one experiment: integrate, collect the requested diagnostics,
/// run the decay fits, and assemble the CSV series and JSON summary.
inline RunResult run_experiment(const ExperimentConfig& cfg) {
    RunResult result;
    const Grid grid(cfg.grid_dim, cfg.grid_points, cfg.box_length);
    const SpectralField u0 = detail::build_initial(cfg, grid);

    // diagnostics: requested norms, fit norms, radius, Gevrey monitor
    std::vector<NormDescriptor> norms = cfg.norms;
    std::vector<std::size_t> fit_series_index;
    if (cfg.fit) {
        for (double zeta : cfg.fit->zetas) {
            NormDescriptor d;
            d.kind = NormDescriptor::Kind::Sobolev;
            d.beta = zeta;
            d.p = cfg.fit->p;
            std::ostringstream lab;
            lab << "sobolev_b" << zeta << "_p";
            if (d.p == kInfExponent) lab << "inf";
            else lab << d.p;
            d.label = lab.str();
            fit_series_index.push_back(norms.size());
            norms.push_back(d);
        }
    }
    result.series.resize(norms.size());
    for (std::size_t i = 0; i < norms.size(); ++i) result.series[i].label = norms[i].label;

    GevreyBoundMonitor gevrey_monitor(cfg.gevrey_base);
    FourierDecayTracker radius_tracker(cfg.noise_floor);
    NormSeries radius_series;
    radius_series.label = "radius_rho";
    const bool watch_edges = cfg.initial.kind == InitialCondition::Kind::GaussianBump;
    double max_edge_fraction = 0.0;
    double wrap_time = std::numeric_limits<double>::infinity();

    DiagnosticHook hook = [&](double t, const SpectralField& f) {
        for (std::size_t i = 0; i < norms.size(); ++i) {
            const auto& d = norms[i];
            if (d.kind == NormDescriptor::Kind::Sobolev) {
                result.series[i].push(t, sobolev_norm(f, d.beta, d.p));
            } else {
                GevreyParams gp;
                gp.s = t;
                gp.beta = d.beta;
                gp.kappa = cfg.equation.kappa;
                gp.p = d.p;
                gp.weight_constant = d.weight_constant;
                gp.weight_norm = d.weight_norm;
                result.series[i].push(t, gevrey_norm(f, gp));
            }
        }
        if (cfg.gevrey_monitor) gevrey_monitor.sample(t, f);
        if (cfg.track_radius) {
            radius_tracker.sample(t, f);
            if (!radius_tracker.samples().empty() && radius_tracker.samples().back().t == t)
                radius_series.push(t, radius_tracker.samples().back().rho);
        }
        if (watch_edges) {
            const double frac = edge_mass_fraction(f);
            max_edge_fraction = std::max(max_edge_fraction, frac);
            if (frac > 0.01) wrap_time = std::min(wrap_time, t);
        }
    };

    const TrajectorySummary traj = integrate(cfg.equation, u0, cfg.integrator, hook);
    result.status = traj.status;

    bool had_nan = false;
    json j;
    j["schema_version"] = 1;
    j["equation"] = {
        {"name", equation_label(cfg.equation.name)},
        {"kappa", cfg.equation.kappa},
        {"dim", cfg.equation.dim},
        {"degree_n", cfg.equation.degree_n},
        {"alpha_T", cfg.equation.alpha_T},
        {"beta_c", compute_beta_c(cfg.equation, cfg.norm_p)},
        {"p", cfg.norm_p},
    };
    if (cfg.equation.name == EquationName::CahnHilliardGeneral) {
        j["equation"]["poly_coefficients"] = cfg.equation.poly_coefficients;
        j["equation"]["smallness_sum"] = ch_smallness_sum(cfg.equation);
    }
    j["grid"] = {{"dim", grid.dim()},
                 {"points", grid.points_per_dim()},
                 {"box_length", grid.box_length()}};
    j["integrator"] = {
        {"scheme", cfg.integrator.scheme == IntegratorConfig::Scheme::ETDRK2 ? "etdrk2"
                                                                             : "exponential_euler"},
        {"dt", cfg.integrator.dt},
        {"t_end", cfg.integrator.t_end},
        {"steps", traj.steps},
        {"cfl_max", json_number(traj.cfl_max, &had_nan)},
    };
    j["status"] = traj.status == TrajectorySummary::Status::Completed ? "completed" : "blowup";
    if (traj.status == TrajectorySummary::Status::Blowup)
        j["blowup_time"] = json_number(traj.blowup_time, &had_nan);

    if (cfg.fit && traj.status == TrajectorySummary::Status::Completed) {
        json fits = json::array();
        for (std::size_t i = 0; i < cfg.fit->zetas.size(); ++i) {
            const double zeta = cfg.fit->zetas[i];
            NormSeries& s = result.series[fit_series_index[i]];
            // clip the window where wrap-around invalidates the large-box surrogate
            TimeWindow w = cfg.fit->window;
            w.t1 = std::min(w.t1, wrap_time);
            try {
                NormSeries clipped;
                clipped.label = s.label;
                for (std::size_t r = 0; r < s.size(); ++r)
                    if (s.times[r] >= w.t0 && s.times[r] <= w.t1)
                        clipped.push(s.times[r], s.values[r]);
                const DecayFit fit = verify_decay(clipped, cfg.equation, zeta, cfg.fit->p,
                                                  cfg.fit->tolerance, cfg.fit->mode);
                fits.push_back(detail::fit_to_json(fit, zeta, cfg.fit->p, s.label, &had_nan));
            } catch (const std::invalid_argument& e) {
                fits.push_back({{"label", s.label}, {"zeta", zeta}, {"error", e.what()}});
            }
        }
        j["fits"] = fits;
    }

    if (cfg.gevrey_monitor) {
        const GevreyBoundReport rep = gevrey_monitor.report();
        j["gevrey"] = {
            {"sup", json_number(rep.supremum, &had_nan)},
            {"initial_norm", json_number(rep.initial_norm, &had_nan)},
            {"within_double_initial", rep.within_double_initial},
            {"truncated", rep.truncated},
        };
        if (rep.truncated) j["gevrey"]["truncated_at"] = json_number(rep.truncated_at, &had_nan);
        result.series.push_back(rep.series);
    }
    if (cfg.track_radius) {
        double saturated_from = std::numeric_limits<double>::infinity();
        for (const auto& s : radius_tracker.samples())
            if (s.saturated) {
                saturated_from = s.t;
                break;
            }
        j["radius"] = {
            {"samples", radius_tracker.samples().size()},
            {"skipped", radius_tracker.skipped()},
            {"growth_constant", json_number(radius_tracker.growth_constant(cfg.equation.kappa), &had_nan)},
        };
        if (std::isfinite(saturated_from)) j["radius"]["saturated_from"] = saturated_from;
        if (radius_series.size() > 0) result.series.push_back(radius_series);
    }
    if (watch_edges) {
        j["edge_mass"] = {{"max_fraction", json_number(max_edge_fraction, &had_nan)}};
        if (std::isfinite(wrap_time)) j["edge_mass"]["wrap_time"] = wrap_time;
    }
    j["has_nan"] = had_nan;

    detail::write_csv(cfg.csv_path, result.series);
    if (!cfg.json_path.empty()) {
        std::ofstream out(cfg.json_path);
        if (!out) throw config_error("cannot open JSON output path " + cfg.json_path);
        out << j.dump(2) << "\n";
    }
    result.summary = std::move(j);
    result.exit_code = traj.status == TrajectorySummary::Status::Completed ? 0 : 2;
    return result;
}

inline RunResult run_experiment_file(const std::string& config_path) {
    const IniFile ini = IniFile::parse_file(config_path);
    return run_experiment(parse_experiment(ini));
}

inline int sweep_threads_cap() {
    if (const char* env = std::getenv("GEVREY_LAB_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Run one experiment per parameter value ("section.key" addressing) and
/// aggregate the summaries. Values of keys under [fit] re-fit a single
/// simulation instead of re-simulating. Individual failures are recorded
/// per entry and do not abort the sweep.
inline json sweep_experiment(const IniFile& base, const std::string& param,
                             const std::vector<std::string>& values) {
    const auto dot = param.find('.');
    if (dot == std::string::npos)
        throw config_error("sweep parameter must be section.key, got '" + param + "'");
    const std::string section = param.substr(0, dot);
    const std::string key = param.substr(dot + 1);

    json entries = json::array();
    if (values.empty()) return entries;

    // Sweeping only the fit exponent re-fits one stored trajectory: run a
    // single simulation with the union of the requested zetas.
    if (section == "fit" && key == "zeta") {
        IniFile merged = base;
        std::string joined;
        for (std::size_t i = 0; i < values.size(); ++i) joined += (i ? "," : "") + values[i];
        merged.set("fit", "zeta", joined);
        try {
            const RunResult r = run_experiment(parse_experiment(merged));
            const json fits = r.summary.contains("fits") ? r.summary["fits"] : json::array();
            for (std::size_t i = 0; i < values.size(); ++i) {
                json e = {{"param", param}, {"value", values[i]}};
                if (i < fits.size()) e["fit"] = fits[i];
                e["status"] = r.summary["status"];
                entries.push_back(e);
            }
        } catch (const std::exception& err) {
            for (const auto& v : values)
                entries.push_back({{"param", param}, {"value", v}, {"error", err.what()}});
        }
        return entries;
    }

    std::vector<json> slots(values.size());
    std::atomic<std::size_t> next{0};
    const int nthreads = std::min<int>(sweep_threads_cap(), static_cast<int>(values.size()));
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= values.size()) return;
            IniFile ini = base;
            ini.set(section, key, values[i]);
            // suffix output paths so runs do not clobber each other
            auto suffix = [&](const std::string& path) {
                if (path.empty()) return path;
                const auto dotpos = path.rfind('.');
                const std::string tag = "_" + key + "_" + values[i];
                return dotpos == std::string::npos ? path + tag
                                                   : path.substr(0, dotpos) + tag + path.substr(dotpos);
            };
            if (ini.has("output", "csv")) ini.set("output", "csv", suffix(ini.get("output", "csv")));
            if (ini.has("output", "json"))
                ini.set("output", "json", suffix(ini.get("output", "json")));
            json entry = {{"param", param}, {"value", values[i]}};
            try {
                const RunResult r = run_experiment(parse_experiment(ini));
                entry["status"] = r.summary["status"];
                entry["summary"] = r.summary;
            } catch (const std::exception& err) {
                entry["error"] = err.what();
            }
            slots[i] = std::move(entry);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    for (auto& s : slots) entries.push_back(std::move(s));
    return entries;
}

}  // namespace gevlab
