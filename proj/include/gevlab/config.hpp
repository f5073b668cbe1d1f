#pragma once

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gevlab/analysis.hpp"
#include "gevlab/equations.hpp"
#include "gevlab/errors.hpp"
#include "gevlab/norms.hpp"
#include "gevlab/timestep.hpp"

namespace gevlab {

namespace detail {
inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}
}  // namespace detail

/// Sectioned key = value file. '#' and ';' start comments; keys are unique
/// per section. Lookup errors name the key and section.
class IniFile {
  public:
    static IniFile parse_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw config_error("cannot open config file " + path);
        std::stringstream ss;
        ss << in.rdbuf();
        return parse_string(ss.str(), path);
    }

    static IniFile parse_string(const std::string& text, const std::string& origin = "<string>") {
        IniFile ini;
        std::istringstream in(text);
        std::string line, section;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const auto cut = line.find_first_of("#;");
            if (cut != std::string::npos) line = line.substr(0, cut);
            line = detail::trim(line);
            if (line.empty()) continue;
            if (line.front() == '[') {
                if (line.back() != ']')
                    throw config_error(origin + ":" + std::to_string(lineno) +
                                       ": malformed section header '" + line + "'");
                section = detail::trim(line.substr(1, line.size() - 2));
                ini.sections_[section];
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw config_error(origin + ":" + std::to_string(lineno) +
                                   ": expected key = value, got '" + line + "'");
            const std::string key = detail::trim(line.substr(0, eq));
            const std::string value = detail::trim(line.substr(eq + 1));
            if (key.empty())
                throw config_error(origin + ":" + std::to_string(lineno) + ": empty key");
            if (section.empty())
                throw config_error(origin + ":" + std::to_string(lineno) + ": key '" + key +
                                   "' outside any section");
            ini.sections_[section][key] = value;
        }
        return ini;
    }

    bool has(const std::string& section, const std::string& key) const {
        const auto s = sections_.find(section);
        return s != sections_.end() && s->second.count(key) > 0;
    }

    std::string get(const std::string& section, const std::string& key) const {
        const auto s = sections_.find(section);
        if (s == sections_.end() || s->second.find(key) == s->second.end())
            throw config_error("missing key " + key + " in [" + section + "]");
        return s->second.at(key);
    }

    std::string get_or(const std::string& section, const std::string& key,
                       const std::string& fallback) const {
        return has(section, key) ? get(section, key) : fallback;
    }

    double get_double(const std::string& section, const std::string& key) const {
        return to_double(get(section, key), section, key);
    }
    double get_double_or(const std::string& section, const std::string& key, double fallback) const {
        return has(section, key) ? get_double(section, key) : fallback;
    }

    long get_int(const std::string& section, const std::string& key) const {
        const std::string v = get(section, key);
        try {
            std::size_t pos = 0;
            const long r = std::stol(v, &pos);
            if (pos != v.size()) throw std::invalid_argument(v);
            return r;
        } catch (const std::exception&) {
            throw config_error("key " + key + " in [" + section + "] is not an integer: '" + v + "'");
        }
    }
    long get_int_or(const std::string& section, const std::string& key, long fallback) const {
        return has(section, key) ? get_int(section, key) : fallback;
    }

    bool get_bool_or(const std::string& section, const std::string& key, bool fallback) const {
        if (!has(section, key)) return fallback;
        std::string v = get(section, key);
        std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
        if (v == "true" || v == "yes" || v == "1" || v == "on") return true;
        if (v == "false" || v == "no" || v == "0" || v == "off") return false;
        throw config_error("key " + key + " in [" + section + "] is not a boolean: '" + v + "'");
    }

    std::vector<double> get_double_list(const std::string& section, const std::string& key) const {
        const std::string v = get(section, key);
        std::vector<double> out;
        std::istringstream in(v);
        std::string tok;
        while (std::getline(in, tok, ',')) {
            tok = detail::trim(tok);
            if (tok.empty()) continue;
            out.push_back(to_double(tok, section, key));
        }
        return out;
    }

    void set(const std::string& section, const std::string& key, const std::string& value) {
        sections_[section][key] = value;
    }

    const std::map<std::string, std::map<std::string, std::string>>& sections() const {
        return sections_;
    }

  private:
    double to_double(const std::string& v, const std::string& section, const std::string& key) const {
        if (v == "inf") return std::numeric_limits<double>::infinity();
        try {
            std::size_t pos = 0;
            const double r = std::stod(v, &pos);
            if (pos != v.size()) throw std::invalid_argument(v);
            return r;
        } catch (const std::exception&) {
            throw config_error("key " + key + " in [" + section + "] is not a number: '" + v + "'");
        }
    }

    std::map<std::string, std::map<std::string, std::string>> sections_;
};

/// One norm diagnostic requested by a config: a Sobolev or Gevrey norm with
/// its parameters, labeled for the CSV header.
struct NormDescriptor {
    enum class Kind { Sobolev, Gevrey };
    Kind kind = Kind::Sobolev;
    double beta = 0.0;
    double p = 2.0;
    double weight_constant = 0.5;  // Gevrey only; s follows elapsed time
    GevreyParams::WeightNorm weight_norm = GevreyParams::WeightNorm::Euclidean;
    std::string label;
};

struct InitialCondition {
    enum class Kind { GaussianBump, SingleMode, RandomBand };
    Kind kind = Kind::GaussianBump;
    // gaussian_bump
    std::array<double, 2> center{0.0, 0.0};
    double width = 1.0;
    // single_mode
    int mode_x = 1;
    int mode_y = 0;
    // random_band
    std::uint64_t seed = 0;
    int band_lo = 1;
    int band_hi = 4;
    double amplitude = 1.0;
};

struct FitRequest {
    std::vector<double> zetas;
    double p = 2.0;
    TimeWindow window;
    double tolerance = 0.05;
    DecayCheckMode mode = DecayCheckMode::PowerLawFit;
};

/// Fully parsed experiment: equation + grid + integrator + data + diagnostics.
struct ExperimentConfig {
    EquationSpec equation;
    int grid_points = 64;
    double box_length = 2.0 * std::numbers::pi;
    int grid_dim = 1;
    IntegratorConfig integrator;
    InitialCondition initial;
    std::vector<NormDescriptor> norms;
    bool track_radius = false;
    double noise_floor = 1e-14;
    bool gevrey_monitor = false;
    GevreyParams gevrey_base;
    std::optional<FitRequest> fit;
    std::string csv_path;
    std::string json_path;
    double norm_p = 2.0;  // default exponent for beta_c reporting
};

namespace detail {

inline NormDescriptor parse_norm_descriptor(const std::string& token) {
    // forms: sobolev(beta=1,p=2) | gevrey(beta=0,p=2,c=0.5,weight=l1)
    const auto open = token.find('(');
    const std::string head = trim(open == std::string::npos ? token : token.substr(0, open));
    NormDescriptor d;
    if (head == "sobolev") {
        d.kind = NormDescriptor::Kind::Sobolev;
    } else if (head == "gevrey") {
        d.kind = NormDescriptor::Kind::Gevrey;
    } else {
        throw config_error("unknown norm kind '" + head + "' in [diagnostics]");
    }
    if (open != std::string::npos) {
        if (token.back() != ')')
            throw config_error("malformed norm descriptor '" + token + "' in [diagnostics]");
        std::istringstream args(token.substr(open + 1, token.size() - open - 2));
        std::string kv;
        while (std::getline(args, kv, ',')) {
            kv = trim(kv);
            if (kv.empty()) continue;
            const auto eq = kv.find('=');
            if (eq == std::string::npos)
                throw config_error("malformed argument '" + kv + "' in norm descriptor '" + token +
                                   "'");
            const std::string k = trim(kv.substr(0, eq));
            const std::string v = trim(kv.substr(eq + 1));
            if (k == "beta") d.beta = std::stod(v);
            else if (k == "p") d.p = v == "inf" ? kInfExponent : std::stod(v);
            else if (k == "c") d.weight_constant = std::stod(v);
            else if (k == "weight")
                d.weight_norm = v == "l1" ? GevreyParams::WeightNorm::L1
                                          : GevreyParams::WeightNorm::Euclidean;
            else
                throw config_error("unknown argument '" + k + "' in norm descriptor '" + token + "'");
        }
    }
    std::ostringstream lab;
    lab << (d.kind == NormDescriptor::Kind::Sobolev ? "sobolev" : "gevrey") << "_b" << d.beta << "_p";
    if (d.p == kInfExponent) lab << "inf";
    else lab << d.p;
    d.label = lab.str();
    return d;
}

}  // namespace detail

inline ExperimentConfig parse_experiment(const IniFile& ini) {
    ExperimentConfig cfg;

    // [grid]
    cfg.grid_dim = static_cast<int>(ini.get_int("grid", "dim"));
    cfg.grid_points = static_cast<int>(ini.get_int("grid", "points"));
    cfg.box_length = ini.get_double("grid", "box_length");

    // [equation]
    const std::string name = ini.get("equation", "name");
    if (name == "fractional_heat") {
        cfg.equation = fractional_heat(cfg.grid_dim, ini.get_double("equation", "kappa"),
                                       static_cast<int>(ini.get_int("equation", "n")),
                                       ini.get_double("equation", "alpha"));
    } else if (name == "burgers") {
        cfg.equation = burgers(static_cast<int>(ini.get_int("equation", "n")));
    } else if (name == "sqg") {
        cfg.equation = sqg(ini.get_double("equation", "kappa"));
    } else if (name == "nse2d_vorticity") {
        cfg.equation = nse_vorticity(2);
    } else if (name == "cahn_hilliard_cubic") {
        cfg.equation = cahn_hilliard_cubic(cfg.grid_dim, ini.get_double("equation", "beta"));
    } else if (name == "cahn_hilliard_general") {
        cfg.equation = cahn_hilliard_general(cfg.grid_dim, ini.get_double_list("equation", "coeffs"));
    } else {
        throw config_error("unknown equation name '" + name + "' in [equation]");
    }
    if (ini.has("equation", "kappa")) {
        const double k = ini.get_double("equation", "kappa");
        if (std::abs(k - cfg.equation.kappa) > 1e-12)
            throw config_error("key kappa in [equation] conflicts with the fixed dissipation order " +
                               std::to_string(cfg.equation.kappa) + " of " + name);
    }
    if (cfg.equation.dim != cfg.grid_dim)
        throw config_error("key dim in [grid] is incompatible with equation '" + name + "'");
    cfg.norm_p = ini.get_double_or("equation", "p", 2.0);

    // [integrator]
    const std::string scheme = ini.get_or("integrator", "scheme", "etdrk2");
    if (scheme == "etdrk2") cfg.integrator.scheme = IntegratorConfig::Scheme::ETDRK2;
    else if (scheme == "exponential_euler")
        cfg.integrator.scheme = IntegratorConfig::Scheme::ExponentialEuler;
    else
        throw config_error("unknown scheme '" + scheme + "' in [integrator]");
    cfg.integrator.dt = ini.get_double("integrator", "dt");
    cfg.integrator.t_end = ini.get_double("integrator", "t_end");
    cfg.integrator.blowup_threshold = ini.get_double_or("integrator", "blowup_threshold", 1e8);
    cfg.integrator.diagnostic_stride =
        static_cast<int>(ini.get_int_or("integrator", "diagnostic_stride", 1));
    cfg.integrator.disable_dissipation = ini.get_bool_or("integrator", "disable_dissipation", false);
    cfg.integrator.validate();

    // [initial]
    const std::string kind = ini.get("initial", "kind");
    if (kind == "gaussian_bump") {
        cfg.initial.kind = InitialCondition::Kind::GaussianBump;
        const auto center = ini.get_double_list("initial", "center");
        if (center.empty() || center.size() > 2)
            throw config_error("key center in [initial] must have 1 or 2 components");
        cfg.initial.center = {center[0], center.size() > 1 ? center[1] : 0.0};
        cfg.initial.width = ini.get_double("initial", "width");
        cfg.initial.amplitude = ini.get_double("initial", "amplitude");
    } else if (kind == "single_mode") {
        cfg.initial.kind = InitialCondition::Kind::SingleMode;
        const auto mode = ini.get_double_list("initial", "mode");
        if (mode.empty() || mode.size() > 2)
            throw config_error("key mode in [initial] must have 1 or 2 components");
        cfg.initial.mode_x = static_cast<int>(mode[0]);
        cfg.initial.mode_y = mode.size() > 1 ? static_cast<int>(mode[1]) : 0;
        cfg.initial.amplitude = ini.get_double("initial", "amplitude");
    } else if (kind == "random_band") {
        cfg.initial.kind = InitialCondition::Kind::RandomBand;
        cfg.initial.seed = static_cast<std::uint64_t>(ini.get_int("initial", "seed"));
        const auto band = ini.get_double_list("initial", "band");
        if (band.size() != 2) throw config_error("key band in [initial] must be 'lo,hi'");
        cfg.initial.band_lo = static_cast<int>(band[0]);
        cfg.initial.band_hi = static_cast<int>(band[1]);
        cfg.initial.amplitude = ini.get_double("initial", "amplitude");
    } else {
        throw config_error("unknown initial kind '" + kind + "' in [initial]");
    }

    // [diagnostics]
    if (ini.has("diagnostics", "norms")) {
        const std::string list = ini.get("diagnostics", "norms");
        std::string tok;
        int depth = 0;
        for (char c : list + ",") {
            if (c == '(') ++depth;
            if (c == ')') --depth;
            if (c == ',' && depth == 0) {
                tok = detail::trim(tok);
                if (!tok.empty()) cfg.norms.push_back(detail::parse_norm_descriptor(tok));
                tok.clear();
            } else {
                tok += c;
            }
        }
    }
    cfg.track_radius = ini.get_bool_or("diagnostics", "radius", false);
    cfg.noise_floor = ini.get_double_or("diagnostics", "noise_floor", 1e-14);
    cfg.gevrey_monitor = ini.get_bool_or("diagnostics", "gevrey_monitor", false);
    cfg.gevrey_base.kappa = cfg.equation.kappa;
    cfg.gevrey_base.beta = ini.get_double_or("diagnostics", "monitor_beta", 0.0);
    cfg.gevrey_base.p = ini.get_double_or("diagnostics", "monitor_p", 2.0);
    cfg.gevrey_base.weight_constant = ini.get_double_or("diagnostics", "monitor_c", 0.5);

    // [fit]
    if (ini.sections().count("fit")) {
        FitRequest fr;
        fr.zetas = ini.get_double_list("fit", "zeta");
        fr.p = ini.get_double_or("fit", "p", 2.0);
        const auto w = ini.get_double_list("fit", "window");
        if (w.size() != 2) throw config_error("key window in [fit] must be 't0,t1'");
        fr.window = {w[0], w[1]};
        fr.tolerance = ini.get_double_or("fit", "tolerance", 0.05);
        const std::string mode = ini.get_or("fit", "mode", "fit");
        if (mode == "fit") fr.mode = DecayCheckMode::PowerLawFit;
        else if (mode == "bound") fr.mode = DecayCheckMode::OneSidedBound;
        else
            throw config_error("unknown mode '" + mode + "' in [fit]");
        cfg.fit = fr;
    }

    // [output]
    cfg.csv_path = ini.get_or("output", "csv", "");
    cfg.json_path = ini.get_or("output", "json", "");
    return cfg;
}

}  // namespace gevlab
