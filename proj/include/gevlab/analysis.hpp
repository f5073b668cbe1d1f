#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gevlab/equations.hpp"
#include "gevlab/errors.hpp"
#include "gevlab/field.hpp"
#include "gevlab/norms.hpp"
#include "gevlab/radius.hpp"
#include "gevlab/transform.hpp"

namespace gevlab {

/// Time-stamped scalar diagnostic: strictly increasing times, finite
/// non-negative values.
struct NormSeries {
    std::vector<double> times;
    std::vector<double> values;
    std::string label;

    void push(double t, double v) {
        if (!times.empty() && t <= times.back())
            throw std::invalid_argument("NormSeries: times must be strictly increasing");
        if (!std::isfinite(v) || v < 0.0)
            throw std::invalid_argument("NormSeries: values must be finite and >= 0");
        times.push_back(t);
        values.push_back(v);
    }

    std::size_t size() const { return times.size(); }
};

struct TimeWindow {
    double t0 = 0.0;
    double t1 = 0.0;
};

struct DecayFit {
    double fitted_exponent = 0.0;  // power-law rate: value ~ t^{-fitted_exponent}
    double intercept = 0.0;        // log-log intercept
    double r_squared = 0.0;
    TimeWindow window;
    double predicted_exponent = 0.0;
    bool has_prediction = false;
    bool verdict = false;
    std::string mode = "fit";  // "fit" or "bound"
};

/// Ordinary least squares of log(value) against log(t) over the window;
/// needs at least 5 positive samples there.
inline DecayFit fit_power_law(const NormSeries& series, const TimeWindow& window) {
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const double t = series.times[i];
        if (t < window.t0 || t > window.t1) continue;
        if (!(t > 0.0)) throw std::invalid_argument("fit_power_law: window must have t > 0");
        if (!(series.values[i] > 0.0))
            throw std::invalid_argument("fit_power_law: values in the window must be positive");
        xs.push_back(std::log(t));
        ys.push_back(std::log(series.values[i]));
    }
    if (xs.size() < 5)
        throw std::invalid_argument("fit_power_law: only " + std::to_string(xs.size()) +
                                    " samples in window; need at least 5");
    const double n = static_cast<double>(xs.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("fit_power_law: degenerate abscissae");
    const double slope = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - slope * sx) / n;
    double ss_res = 0.0, ss_tot = 0.0;
    const double ybar = sy / n;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double fit = intercept + slope * xs[i];
        ss_res += (ys[i] - fit) * (ys[i] - fit);
        ss_tot += (ys[i] - ybar) * (ys[i] - ybar);
    }
    DecayFit out;
    out.fitted_exponent = -slope;
    out.intercept = intercept;
    out.r_squared = ss_tot < 1e-30 ? 1.0 : 1.0 - ss_res / ss_tot;
    out.window = window;
    return out;
}

enum class DecayCheckMode { PowerLawFit, OneSidedBound };

/// Compare a norm series against the predicted decay rate.
///  - PowerLawFit: log-log OLS; verdict requires |fitted - predicted| <=
///    tolerance and r^2 >= 0.95 (whole-space surrogate runs).
///  - OneSidedBound: periodic mean-zero data decays faster than any power,
///    so instead require t^{rate} * value(t) to stay below its maximum over
///    the first decade of the window.
inline DecayFit verify_decay(const NormSeries& series, const EquationSpec& spec, double zeta,
                             double p, double tolerance,
                             DecayCheckMode mode = DecayCheckMode::PowerLawFit) {
    const double rate = predicted_decay_exponent(spec, zeta, p);
    if (mode == DecayCheckMode::PowerLawFit) {
        TimeWindow window{series.times.empty() ? 0.0 : series.times.front(),
                          series.times.empty() ? 0.0 : series.times.back()};
        DecayFit fit = fit_power_law(series, window);
        fit.predicted_exponent = rate;
        fit.has_prediction = true;
        fit.verdict = std::abs(fit.fitted_exponent - rate) <= tolerance && fit.r_squared >= 0.95;
        fit.mode = "fit";
        return fit;
    }
    DecayFit out;
    out.mode = "bound";
    out.predicted_exponent = rate;
    out.has_prediction = true;
    double head_max = 0.0, total_max = 0.0;
    double t0 = 0.0;
    bool have_t0 = false;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const double t = series.times[i];
        if (!(t > 0.0)) continue;
        if (!have_t0) {
            t0 = t;
            have_t0 = true;
        }
        const double w = std::pow(t, rate) * series.values[i];
        total_max = std::max(total_max, w);
        if (t <= 10.0 * t0) head_max = std::max(head_max, w);
    }
    if (!have_t0) throw std::invalid_argument("verify_decay: series has no positive times");
    out.window = TimeWindow{t0, series.times.back()};
    out.verdict = total_max <= head_max * (1.0 + 1e-9);
    // informative power-law fit alongside the bound, when one is computable
    try {
        const DecayFit fit = fit_power_law(series, out.window);
        out.fitted_exponent = fit.fitted_exponent;
        out.intercept = fit.intercept;
        out.r_squared = fit.r_squared;
    } catch (const std::invalid_argument&) {
        out.fitted_exponent = 0.0;
        out.r_squared = 0.0;
    }
    return out;
}

/// Fraction of the field's energy lying within 5% of any box boundary
/// (a wrap-around indicator for compact data on large boxes: fits are valid
/// only while this stays below 1%).
inline double edge_mass_fraction(const SpectralField& field) {
    const Grid& g = field.grid();
    const double margin = 0.05 * g.box_length();
    const auto phys = inverse_transform(field);
    double edge = 0.0, total = 0.0;
    for (std::size_t i = 0; i < phys.size(); ++i) {
        const auto x = g.point(i);
        bool near = std::min(x[0], g.box_length() - x[0]) < margin;
        if (g.dim() == 2) near = near || std::min(x[1], g.box_length() - x[1]) < margin;
        const double m = phys[i] * phys[i];
        total += m;
        if (near) edge += m;
    }
    return total > 0.0 ? edge / total : 0.0;
}

struct GevreyBoundReport {
    NormSeries series;
    double supremum = 0.0;
    double initial_norm = 0.0;  // reference norm of the data (s = 0 evaluation)
    bool within_double_initial = false;
    bool truncated = false;
    double truncated_at = -1.0;
};

/// Trajectory hook tracking ||u(t)|| in the Gevrey norm whose smoothing
/// parameter equals elapsed time (s = t). Overflow of the weight ends the
/// series with a truncation marker instead of failing the run.
class GevreyBoundMonitor {
  public:
    explicit GevreyBoundMonitor(const GevreyParams& base) : base_(base) {
        report_.series.label = "gevrey_s=t_b" + std::to_string(base.beta);
    }

    void sample(double t, const SpectralField& field) {
        if (report_.truncated) return;
        if (report_.series.size() == 0)
            report_.initial_norm = gevrey_norm(field, base_.with_s(0.0));
        try {
            report_.series.push(t, gevrey_norm(field, base_.with_s(t)));
        } catch (const gevrey_overflow_error&) {
            report_.truncated = true;
            report_.truncated_at = t;
        }
    }

    GevreyBoundReport report() const {
        GevreyBoundReport r = report_;
        for (double v : r.series.values) r.supremum = std::max(r.supremum, v);
        r.within_double_initial = r.supremum <= 2.0 * r.initial_norm;
        return r;
    }

  private:
    GevreyParams base_;
    GevreyBoundReport report_;
};

struct RadiusSample {
    double t = 0.0;
    double rho = 0.0;
    bool saturated = false;
};

/// Trajectory hook tracking the exponential decay rate of the Fourier
/// spectrum over time. Samples with too few usable shells are skipped;
/// saturated samples are kept but flagged (excluded from verdicts).
class FourierDecayTracker {
  public:
    explicit FourierDecayTracker(double noise_floor) : noise_floor_(noise_floor) {}

    void sample(double t, const SpectralField& field) {
        try {
            const RadiusFit fit = analyticity_radius_fit(field, noise_floor_);
            samples_.push_back({t, fit.rho, fit.saturated});
        } catch (const std::invalid_argument&) {
            ++skipped_;
        }
    }

    const std::vector<RadiusSample>& samples() const { return samples_; }
    int skipped() const { return skipped_; }

    /// rho > 0 and nondecreasing (up to relative slack) over the
    /// pre-saturation samples with t in [t0, t1].
    bool positive_and_nondecreasing(double t0, double t1, double slack = 1e-9) const {
        double prev = -1.0;
        bool any = false;
        for (const auto& s : samples_) {
            if (s.saturated || s.t < t0 || s.t > t1) continue;
            if (!(s.rho > 0.0)) return false;
            if (prev >= 0.0 && s.rho < prev * (1.0 - slack)) return false;
            prev = s.rho;
            any = true;
        }
        return any;
    }

    /// Largest c with rho(t) >= c t^{1/kappa} over pre-saturation samples.
    double growth_constant(double kappa) const {
        double c = std::numeric_limits<double>::infinity();
        for (const auto& s : samples_) {
            if (s.saturated || !(s.t > 0.0)) continue;
            c = std::min(c, s.rho / std::pow(s.t, 1.0 / kappa));
        }
        return std::isfinite(c) ? c : 0.0;
    }

  private:
    double noise_floor_;
    std::vector<RadiusSample> samples_;
    int skipped_ = 0;
};

}  // namespace gevlab
