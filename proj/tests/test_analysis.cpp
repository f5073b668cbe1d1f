#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "gevlab/analysis.hpp"
#include "gevlab/initial_conditions.hpp"
#include "gevlab/timestep.hpp"

using namespace gevlab;
using Catch::Approx;

namespace {
const double kPi = std::numbers::pi;

NormSeries synthetic(double c, double exponent, double t0, double t1, int n,
                     double wobble = 0.0) {
    NormSeries s;
    s.label = "synthetic";
    for (int i = 0; i < n; ++i) {
        const double t = t0 + (t1 - t0) * i / (n - 1);
        s.push(t, c * std::pow(t, -exponent) * (1.0 + wobble * std::sin(t)));
    }
    return s;
}
}  // namespace

TEST_CASE("series validation") {
    NormSeries s;
    s.push(1.0, 2.0);
    REQUIRE_THROWS_AS(s.push(1.0, 3.0), std::invalid_argument);
    REQUIRE_THROWS_AS(s.push(2.0, -1.0), std::invalid_argument);
    REQUIRE_THROWS_AS(s.push(2.0, std::nan("")), std::invalid_argument);
}

TEST_CASE("exact power law is recovered to machine precision") {
    const NormSeries s = synthetic(3.0, 0.75, 1.0, 100.0, 40);
    const DecayFit fit = fit_power_law(s, {1.0, 100.0});
    REQUIRE(fit.fitted_exponent == Approx(0.75).margin(1e-10));
    REQUIRE(fit.intercept == Approx(std::log(3.0)).margin(1e-10));
    REQUIRE(fit.r_squared == Approx(1.0).margin(1e-12));
}

TEST_CASE("constant series fits exponent zero") {
    const NormSeries s = synthetic(2.0, 0.0, 1.0, 50.0, 20);
    const DecayFit fit = fit_power_law(s, {1.0, 50.0});
    REQUIRE(fit.fitted_exponent == Approx(0.0).margin(1e-12));
    REQUIRE(fit.r_squared == 1.0);
}

TEST_CASE("mild multiplicative wobble barely moves the fitted exponent") {
    const NormSeries s = synthetic(1.0, 0.5, 10.0, 100.0, 200, 0.01);
    const DecayFit fit = fit_power_law(s, {10.0, 100.0});
    REQUIRE(fit.fitted_exponent == Approx(0.5).margin(0.02));
}

TEST_CASE("fit guards: sample count and positivity") {
    const NormSeries s = synthetic(1.0, 1.0, 1.0, 2.0, 4);
    REQUIRE_THROWS_AS(fit_power_law(s, {1.0, 2.0}), std::invalid_argument);
    NormSeries zero;
    for (int i = 0; i < 8; ++i) zero.push(1.0 + i, 0.0);
    REQUIRE_THROWS_AS(fit_power_law(zero, {1.0, 10.0}), std::invalid_argument);
}

TEST_CASE("verify_decay refuses zeta at or below the critical index") {
    const NormSeries s = synthetic(1.0, 0.5, 1.0, 10.0, 10);
    REQUIRE_THROWS_AS(verify_decay(s, burgers(3), 0.0, 2.0, 0.1), std::invalid_argument);
}

TEST_CASE("one-sided bound accepts decay and rejects growth") {
    const EquationSpec spec = burgers(3);  // beta_c = 0 at p = 2
    NormSeries decaying;
    for (int i = 1; i <= 60; ++i) {
        const double t = 0.1 * i;
        decaying.push(t, std::exp(-t));  // beats any power
    }
    const DecayFit good = verify_decay(decaying, spec, 1.0, 2.0, 0.0,
                                       DecayCheckMode::OneSidedBound);
    REQUIRE(good.verdict);
    REQUIRE(good.mode == "bound");

    NormSeries growing;
    for (int i = 1; i <= 60; ++i) {
        const double t = 0.1 * i;
        growing.push(t, 1.0 + 0.1 * t);
    }
    const DecayFit bad = verify_decay(growing, spec, 1.0, 2.0, 0.0,
                                      DecayCheckMode::OneSidedBound);
    REQUIRE_FALSE(bad.verdict);
}

TEST_CASE("fit mode compares against the predicted exponent") {
    const EquationSpec spec = fractional_heat(1, 2.0, 3, 0.0);  // beta_c = -1/2
    // predicted (zeta - beta_c)/kappa = 0.75 at zeta = 1
    const NormSeries s = synthetic(2.0, 0.75, 5.0, 50.0, 50);
    const DecayFit fit = verify_decay(s, spec, 1.0, 2.0, 0.05, DecayCheckMode::PowerLawFit);
    REQUIRE(fit.has_prediction);
    REQUIRE(fit.predicted_exponent == Approx(0.75));
    REQUIRE(fit.verdict);
}

TEST_CASE("synthetic exponential spectrum yields its decay rate") {
    const Grid g(1, 128, 2.0 * kPi);
    for (double a : {0.2, 0.5}) {
        SpectralField f(g);
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
        for (std::size_t i = 0; i < g.size(); ++i) {
            const auto m = g.mode_vector(i);
            if (m[0] <= 0 || m[0] >= 64) continue;
            const double th = phase(rng);
            f[i] = std::exp(-a * g.wavenumber_norm(i)) * Complex{std::cos(th), std::sin(th)};
            f[g.conjugate_index(i)] = std::conj(f[i]);
        }
        REQUIRE(analyticity_radius(f, 1e-14) == Approx(a).epsilon(0.02));
    }
}

TEST_CASE("flat spectrum has radius zero; sparse spectra are rejected") {
    const Grid g(1, 128, 2.0 * kPi);
    const SpectralField flat = random_band(g, 3, 1, 60, 1.0);
    REQUIRE(analyticity_radius(flat, 1e-10) == Approx(0.0).margin(1e-10));
    const SpectralField sparse = random_band(g, 4, 1, 3, 1.0);
    REQUIRE_THROWS_AS(analyticity_radius(sparse, 1e-10), std::invalid_argument);
}

TEST_CASE("radius of the order-one semigroup grows exactly like time") {
    const Grid g(1, 128, 2.0 * kPi);
    const SpectralField flat = random_band(g, 5, 1, 63, 1.0);
    for (double t : {0.05, 0.2, 0.4}) {
        const SpectralField ft = apply_multiplier(flat, semigroup_multiplier(t, 1.0));
        REQUIRE(analyticity_radius(ft, 1e-13) == Approx(t).epsilon(0.02));
    }
}

TEST_CASE("radius series of a linear flow is nondecreasing") {
    const Grid g(1, 128, 2.0 * kPi);
    const SpectralField flat = random_band(g, 6, 1, 63, 1.0);
    {
        // order 1: the log spectrum is exactly linear in |k|, so the fit is
        // insensitive to shells dropping below the floor
        FourierDecayTracker tracker(1e-13);
        for (double t : {0.01, 0.05, 0.1, 0.2, 0.3})
            tracker.sample(t, apply_multiplier(flat, semigroup_multiplier(t, 1.0)));
        REQUIRE(tracker.positive_and_nondecreasing(0.0, 1.0));
        REQUIRE(tracker.growth_constant(1.0) > 0.0);
    }
    {
        // order 2: the log spectrum is quadratic in |k|, the fitted slope
        // grows until the tail leaves the resolved band; sample before that
        FourierDecayTracker tracker(1e-13);
        for (double t : {0.001, 0.002, 0.004, 0.006})
            tracker.sample(t, apply_multiplier(flat, semigroup_multiplier(t, 2.0)));
        REQUIRE(tracker.positive_and_nondecreasing(0.0, 1.0));
        REQUIRE(tracker.growth_constant(2.0) > 0.0);
    }
}

TEST_CASE("deeply decayed spectra are flagged saturated") {
    const Grid g(1, 64, 2.0 * kPi);
    SpectralField f(g);
    for (int m = 1; m <= 32; ++m) {
        const double v = std::exp(-3.0 * m);
        f.set_mode(m, 0, Complex{v, 0.0});
    }
    f.symmetrize();
    const RadiusFit fit = analyticity_radius_fit(f, 1e-12);
    REQUIRE(fit.saturated);  // fitted line crosses the floor well inside the band
}

TEST_CASE("gevrey monitor: zero data stays identically zero") {
    const Grid g(1, 32, 2.0 * kPi);
    GevreyParams gp;
    gp.kappa = 2.0;
    GevreyBoundMonitor mon(gp);
    const SpectralField z(g);
    for (double t : {0.0, 0.5, 1.0}) mon.sample(t, z);
    const GevreyBoundReport rep = mon.report();
    REQUIRE(rep.supremum == 0.0);
    REQUIRE(rep.within_double_initial);
    REQUIRE_FALSE(rep.truncated);
}

TEST_CASE("gevrey monitor: linear flow stays bounded, overflow truncates") {
    const Grid g(1, 64, 2.0 * kPi);
    const SpectralField u0 = random_band(g, 8, 1, 20, 1.0);
    GevreyParams gp;
    gp.kappa = 2.0;
    {
        GevreyBoundMonitor mon(gp);
        for (double t : {0.0, 0.5, 1.0, 3.0})
            mon.sample(t, apply_multiplier(u0, semigroup_multiplier(t, 2.0)));
        const GevreyBoundReport rep = mon.report();
        REQUIRE_FALSE(rep.truncated);
        REQUIRE(rep.supremum < 2.0 * u0.l2_norm());
    }
    {
        // tiny box: k_max is enormous, the weight overflows at modest s
        const Grid tiny(1, 64, 0.001);
        const SpectralField v = random_band(tiny, 9, 1, 8, 1.0);
        GevreyBoundMonitor mon(gp);
        mon.sample(0.0, v);
        mon.sample(1000.0, v);
        const GevreyBoundReport rep = mon.report();
        REQUIRE(rep.truncated);
        REQUIRE(rep.truncated_at == 1000.0);
        REQUIRE(rep.series.size() == 1);
    }
}

TEST_CASE("sobolev norms decrease strictly along a linear dissipative flow") {
    const Grid g(1, 64, 2.0 * kPi);
    const SpectralField u0 = random_band(g, 10, 1, 20, 1.0);
    const EquationSpec lin = fractional_heat(1, 2.0, 3, 0.0);
    NormSeries s;
    IntegratorConfig cfg;
    cfg.dt = 0.02;
    cfg.t_end = 1.0;
    cfg.diagnostic_stride = 5;
    integrate(lin, u0, cfg,
              [&](double t, const SpectralField& f) { s.push(t, sobolev_norm(f, 1.0, 2.0)); });
    for (std::size_t i = 1; i < s.size(); ++i) REQUIRE(s.values[i] < s.values[i - 1]);
}

TEST_CASE("edge mass distinguishes centered from near-boundary bumps") {
    const Grid g(1, 512, 100.0);
    const SpectralField centered = gaussian_bump(g, {50.0, 0.0}, 3.0, 1.0);
    REQUIRE(edge_mass_fraction(centered) < 1e-10);
    const SpectralField near_edge = gaussian_bump(g, {2.0, 0.0}, 3.0, 1.0);
    REQUIRE(edge_mass_fraction(near_edge) > 0.5);
}
