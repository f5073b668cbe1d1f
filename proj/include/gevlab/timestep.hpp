#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "gevlab/equations.hpp"
#include "gevlab/errors.hpp"
#include "gevlab/field.hpp"
#include "gevlab/transform.hpp"

namespace gevlab {

struct IntegratorConfig {
    enum class Scheme { ExponentialEuler, ETDRK2 };

    Scheme scheme = Scheme::ETDRK2;
    double dt = 1e-3;
    double t_end = 1.0;
    double blowup_threshold = 1e8;
    int diagnostic_stride = 1;
    double dealias_rule = 2.0 / 3.0;
    bool disable_dissipation = false;  // test mode: advance the nonlinearity alone

    void validate() const {
        if (!(dt > 0.0)) throw std::invalid_argument("IntegratorConfig: dt must be positive");
        if (t_end < 0.0) throw std::invalid_argument("IntegratorConfig: t_end must be >= 0");
        if (t_end > 0.0 && dt > t_end)
            throw std::invalid_argument("IntegratorConfig: dt must not exceed t_end");
        if (!(blowup_threshold > 0.0))
            throw std::invalid_argument("IntegratorConfig: blowup_threshold must be positive");
        if (diagnostic_stride < 1)
            throw std::invalid_argument("IntegratorConfig: diagnostic_stride must be >= 1");
    }
};

namespace detail {

// (exp(-z) - 1 + z) / z^2, series near 0 to avoid cancellation
inline double phi2_of(double z) {
    if (z < 1e-2) return 0.5 - z / 6.0 + z * z / 24.0 - z * z * z / 120.0 + z * z * z * z / 720.0;
    return (std::exp(-z) - 1.0 + z) / (z * z);
}

/// Per-mode propagator tables for one step size: the exact semigroup factor
/// and the first two exponential-integrator weights.
struct StepTables {
    std::vector<double> decay;  // exp(-dt |k|^kappa)
    std::vector<double> phi1;   // (1 - exp(-dt |k|^kappa)) / |k|^kappa, dt at k = 0
    std::vector<double> phi2;   // dt (exp(-z) - 1 + z)/z^2 with z = dt |k|^kappa, dt/2 at k = 0

    StepTables(const Grid& grid, double kappa, double dt, bool disable_dissipation) {
        decay.resize(grid.size());
        phi1.resize(grid.size());
        phi2.resize(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            if (disable_dissipation) {
                decay[i] = 1.0;
                phi1[i] = dt;
                phi2[i] = dt / 2.0;
                continue;
            }
            const double a = std::pow(grid.wavenumber_norm(i), kappa);
            const double z = dt * a;
            decay[i] = std::exp(-z);
            phi1[i] = a == 0.0 ? dt : -std::expm1(-z) / a;
            phi2[i] = dt * phi2_of(z);
        }
    }
};

}  // namespace detail

/// One exponential-Euler step: u+ = e^{-dt L} u + phi1 * G(u), with the
/// linear part treated exactly.
inline SpectralField exponential_euler_step(const EquationSpec& spec, const SpectralField& u,
                                            double dt, const IntegratorConfig& cfg = {}) {
    if (!(dt > 0.0)) throw std::invalid_argument("exponential_euler_step: dt must be positive");
    const detail::StepTables tab(u.grid(), spec.kappa, dt, cfg.disable_dissipation);
    const SpectralField g = evaluate_nonlinearity(spec, u, cfg.dealias_rule, cfg.blowup_threshold);
    SpectralField out(u.grid());
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = tab.decay[i] * u[i] + tab.phi1[i] * g[i];
    return out;
}

/// One two-stage exponential step (predictor = exponential Euler, corrector
/// weighted by phi2); second-order accurate, exact on the linear flow.
inline SpectralField etdrk2_step(const EquationSpec& spec, const SpectralField& u, double dt,
                                 const IntegratorConfig& cfg = {}) {
    if (!(dt > 0.0)) throw std::invalid_argument("etdrk2_step: dt must be positive");
    const detail::StepTables tab(u.grid(), spec.kappa, dt, cfg.disable_dissipation);
    const SpectralField g = evaluate_nonlinearity(spec, u, cfg.dealias_rule, cfg.blowup_threshold);
    SpectralField pred(u.grid());
    for (std::size_t i = 0; i < u.size(); ++i) pred[i] = tab.decay[i] * u[i] + tab.phi1[i] * g[i];
    const SpectralField g2 = evaluate_nonlinearity(spec, pred, cfg.dealias_rule, cfg.blowup_threshold);
    for (std::size_t i = 0; i < u.size(); ++i) pred[i] += tab.phi2[i] * (g2[i] - g[i]);
    return pred;
}

struct TrajectorySummary {
    enum class Status { Completed, Blowup };

    SpectralField final_field;
    Status status = Status::Completed;
    double blowup_time = -1.0;
    long steps = 0;
    double cfl_max = 0.0;  // max over samples of max|u| * k_max * dt; reported only
};

using DiagnosticHook = std::function<void(double, const SpectralField&)>;

/// Advance u0 to t_end with fixed steps, calling the hook at t = 0, every
/// diagnostic_stride-th step, and at the final time. Blow-up is reported in
/// the summary, never clipped.
inline TrajectorySummary integrate(const EquationSpec& spec, const SpectralField& u0,
                                   const IntegratorConfig& cfg, const DiagnosticHook& hook = {}) {
    cfg.validate();
    if (!cfg.disable_dissipation && !(spec.kappa > 1.0))
        throw std::invalid_argument("integrate: simulation requires kappa > 1");
    TrajectorySummary summary{u0};
    auto sample = [&](double t, const SpectralField& f) {
        if (hook) hook(t, f);
        double amax = 0.0;
        for (double v : inverse_transform(f)) amax = std::max(amax, std::abs(v));
        summary.cfl_max = std::max(summary.cfl_max, amax * f.grid().max_wavenumber() * cfg.dt);
    };
    sample(0.0, summary.final_field);
    if (cfg.t_end == 0.0) return summary;

    const long n_steps = static_cast<long>(std::ceil(cfg.t_end / cfg.dt - 1e-12));
    const detail::StepTables tab(u0.grid(), spec.kappa, cfg.dt, cfg.disable_dissipation);
    double t = 0.0;
    for (long step = 1; step <= n_steps; ++step) {
        const double dt_step = step == n_steps ? cfg.t_end - t : cfg.dt;
        try {
            if (std::abs(dt_step - cfg.dt) < 1e-12 * cfg.dt) {
                const bool two_stage = cfg.scheme == IntegratorConfig::Scheme::ETDRK2;
                const SpectralField g =
                    evaluate_nonlinearity(spec, summary.final_field, cfg.dealias_rule,
                                          cfg.blowup_threshold);
                SpectralField next(u0.grid());
                for (std::size_t i = 0; i < next.size(); ++i)
                    next[i] = tab.decay[i] * summary.final_field[i] + tab.phi1[i] * g[i];
                if (two_stage) {
                    const SpectralField g2 = evaluate_nonlinearity(spec, next, cfg.dealias_rule,
                                                                   cfg.blowup_threshold);
                    for (std::size_t i = 0; i < next.size(); ++i)
                        next[i] += tab.phi2[i] * (g2[i] - g[i]);
                }
                summary.final_field = std::move(next);
            } else {
                summary.final_field =
                    cfg.scheme == IntegratorConfig::Scheme::ETDRK2
                        ? etdrk2_step(spec, summary.final_field, dt_step, cfg)
                        : exponential_euler_step(spec, summary.final_field, dt_step, cfg);
            }
        } catch (const blowup_error&) {
            summary.status = TrajectorySummary::Status::Blowup;
            summary.blowup_time = t + dt_step;
            summary.steps = step;
            return summary;
        }
        t = step == n_steps ? cfg.t_end : t + dt_step;
        if (!summary.final_field.all_finite()) {
            summary.status = TrajectorySummary::Status::Blowup;
            summary.blowup_time = t;
            summary.steps = step;
            return summary;
        }
        if (step % cfg.diagnostic_stride == 0 || step == n_steps) sample(t, summary.final_field);
        summary.steps = step;
    }
    return summary;
}

struct PicardConfig {
    double horizon = 0.1;       // integration horizon T
    int quadrature_nodes = 32;  // uniform trapezoid nodes on [0, T]
    int max_iters = 64;
    double fp_tolerance = 1e-12;  // sup-over-nodes L2 distance between iterates
    double dealias_rule = 2.0 / 3.0;
    double weight_beta = 0.0;  // optional t^{beta/kappa} weighting of the stopping norm

    void validate() const {
        if (!(horizon > 0.0)) throw std::invalid_argument("PicardConfig: horizon must be positive");
        if (quadrature_nodes < 2)
            throw std::invalid_argument("PicardConfig: need at least 2 quadrature nodes");
        if (max_iters < 1) throw std::invalid_argument("PicardConfig: max_iters must be >= 1");
        if (!(fp_tolerance > 0.0))
            throw std::invalid_argument("PicardConfig: fp_tolerance must be positive");
    }
};

struct PicardResult {
    std::vector<double> times;
    std::vector<SpectralField> trajectory;
    int iterations = 0;
    std::vector<double> distances;  // successive sup-L2 distances per iteration
};

/// Fixed-point iteration on the integral form of the equation:
/// u(t) = e^{-t L} u0 + integral_0^t e^{-(t-s) L} G(u(s)) ds, the Duhamel
/// integral discretized by the trapezoid rule on uniform nodes. Serves as a
/// scheme-independent reference for the time steppers. Throws
/// iteration_divergence_error after three consecutive expansions.
inline PicardResult picard_solve(const EquationSpec& spec, const SpectralField& u0,
                                 const PicardConfig& cfg) {
    cfg.validate();
    const Grid& grid = u0.grid();
    const int m = cfg.quadrature_nodes;
    const double h = cfg.horizon / (m - 1);

    // semigroup factors per node lag: lag[l][i] = exp(-l h |k_i|^kappa)
    std::vector<std::vector<double>> lag(m, std::vector<double>(grid.size()));
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double a = std::pow(grid.wavenumber_norm(i), spec.kappa);
        const double e1 = std::exp(-h * a);
        double acc = 1.0;
        for (int l = 0; l < m; ++l) {
            lag[l][i] = acc;
            acc *= e1;
        }
    }

    PicardResult result;
    result.times.resize(m);
    for (int j = 0; j < m; ++j) result.times[j] = j * h;

    std::vector<SpectralField> linear;
    linear.reserve(m);
    for (int j = 0; j < m; ++j) {
        SpectralField f(grid);
        for (std::size_t i = 0; i < grid.size(); ++i) f[i] = lag[j][i] * u0[i];
        linear.push_back(std::move(f));
    }
    std::vector<SpectralField> current = linear;

    auto node_weight = [&](int j) {
        if (cfg.weight_beta == 0.0 || j == 0) return 1.0;
        return std::pow(result.times[j], cfg.weight_beta / spec.kappa);
    };

    for (int iter = 1; iter <= cfg.max_iters; ++iter) {
        std::vector<SpectralField> g_nodes;
        g_nodes.reserve(m);
        for (int j = 0; j < m; ++j)
            g_nodes.push_back(evaluate_nonlinearity(spec, current[j], cfg.dealias_rule));

        std::vector<SpectralField> next;
        next.reserve(m);
        double dist = 0.0;
        for (int j = 0; j < m; ++j) {
            SpectralField f = linear[j];
            for (int s = 0; j > 0 && s <= j; ++s) {
                const double w = (s == 0 || s == j) ? 0.5 * h : h;
                const auto& decay = lag[j - s];
                const auto& gs = g_nodes[s];
                for (std::size_t i = 0; i < grid.size(); ++i) f[i] += w * decay[i] * gs[i];
            }
            dist = std::max(dist, node_weight(j) * l2_distance(f, current[j]));
            next.push_back(std::move(f));
        }
        result.distances.push_back(dist);
        result.iterations = iter;
        current = std::move(next);
        if (dist < cfg.fp_tolerance) {
            result.trajectory = std::move(current);
            return result;
        }
        const auto& d = result.distances;
        if (d.size() >= 3 && d[d.size() - 1] > d[d.size() - 2] && d[d.size() - 2] > d[d.size() - 3]) {
            throw iteration_divergence_error(
                "picard_solve: distances expanded for 3 consecutive iterations (ratio " +
                    std::to_string(d.back() / d[d.size() - 2]) + ")",
                d.back() / d[d.size() - 2]);
        }
    }
    throw std::runtime_error("picard_solve: no fixed point within max_iters = " +
                             std::to_string(cfg.max_iters));
}

}  // namespace gevlab
