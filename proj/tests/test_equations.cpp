#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "gevlab/equations.hpp"
#include "gevlab/initial_conditions.hpp"
#include "gevlab/oracles.hpp"
#include "gevlab/transform.hpp"
#include "test_helpers.hpp"

using namespace gevlab;
using Catch::Approx;

namespace {
const double kPi = std::numbers::pi;
}

TEST_CASE("critical exponents of the built-in instances") {
    REQUIRE(compute_beta_c(nse_vorticity(3), 2.0) == Approx(0.5).margin(1e-14));
    REQUIRE(compute_beta_c(burgers(3), 2.0) == Approx(0.0).margin(1e-14));
    REQUIRE(compute_beta_c(cahn_hilliard_cubic(3, 1.0), 2.0) == Approx(0.5).margin(1e-14));
    REQUIRE(compute_beta_c(sqg(1.5), 4.0) == Approx(0.0).margin(1e-14));
    REQUIRE(compute_beta_c(fractional_heat(2, 2.0, 3, 1.0), 2.0) == Approx(0.0).margin(1e-14));
    REQUIRE_THROWS_AS(compute_beta_c(burgers(3), 1.0), std::invalid_argument);
}

TEST_CASE("beta_c transforms affinely when orders are rescaled") {
    const EquationSpec base = sqg(1.5);
    const double p = 3.0;
    const double b0 = compute_beta_c(base, p);
    for (double lambda : {0.9, 1.5, 3.0}) {
        EquationSpec scaled = base;
        scaled.kappa *= lambda;
        for (auto& a : scaled.alpha_T) a *= lambda;
        const double b1 = compute_beta_c(scaled, p);
        REQUIRE(b1 - base.dim / p == Approx(lambda * (b0 - base.dim / p)).margin(1e-13));
    }
}

TEST_CASE("admissibility report for the 3D velocity equations at p=2") {
    const AdmissibilityReport r = check_admissibility(nse_vorticity(3), 2.0);
    REQUIRE(r.condition_sum);
    REQUIRE(r.condition_min);
    REQUIRE(r.beta_c == Approx(0.5));
    REQUIRE(r.beta0_lo == Approx(0.5));
    REQUIRE(r.beta0_hi == Approx(1.5));
}

TEST_CASE("order budget violation flips condition_sum") {
    EquationSpec s = burgers(2);
    s.alpha_T[0] = s.kappa + 1.0;  // sum of orders exceeds the dissipation
    const AdmissibilityReport r = check_admissibility(s, 2.0);
    REQUIRE_FALSE(r.condition_sum);
}

TEST_CASE("admissible regularity interval for cubic Burgers") {
    const AdmissibilityReport r = check_admissibility(burgers(3), 2.0);
    REQUIRE(r.beta0_lo == Approx(0.0).margin(1e-14));
    REQUIRE(r.beta0_hi == Approx(0.5).margin(1e-14));
}

TEST_CASE("predicted decay exponents") {
    REQUIRE(predicted_decay_exponent(nse_vorticity(3), 1.0, 2.0) == Approx(0.25));
    for (double kappa : {1.25, 1.5, 2.0}) {
        const double p0 = 2.0 / (kappa - 1.0);
        for (double zeta : {0.5, 1.0, 2.0})
            REQUIRE(predicted_decay_exponent(sqg(kappa), zeta, p0) == Approx(zeta / kappa));
    }
    REQUIRE_THROWS_AS(predicted_decay_exponent(burgers(3), 0.0, 2.0), std::invalid_argument);
}

TEST_CASE("zero field maps to zero nonlinearity for every instance") {
    const Grid g1(1, 16, 2.0 * kPi);
    const Grid g2(2, 16, 2.0 * kPi);
    const std::vector<EquationSpec> specs = {
        fractional_heat(1, 2.0, 3, 1.0), burgers(3), cahn_hilliard_cubic(1, 1.0),
        cahn_hilliard_general(1, {0.1, 0.0, 0.5})};
    for (const auto& s : specs) {
        const SpectralField z(g1);
        REQUIRE(evaluate_nonlinearity(s, z).max_abs() == 0.0);
    }
    for (const auto& s : {sqg(1.5), nse_vorticity(2)}) {
        const SpectralField z(g2);
        REQUIRE(evaluate_nonlinearity(s, z).max_abs() == 0.0);
    }
}

TEST_CASE("quadratic Burgers flux of sin(x) is sin(2x)") {
    const Grid g(1, 32, 2.0 * kPi);
    std::vector<double> phys(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) phys[i] = std::sin(g.point(i)[0]);
    const SpectralField u = forward_transform(phys, g);
    const SpectralField gval = evaluate_nonlinearity(burgers(2), u);
    // d/dx sin^2 = sin(2x): coefficients -i/2 at +2, +i/2 at -2
    REQUIRE(std::abs(gval.at_mode(2) - Complex{0.0, -0.5}) < 1e-13);
    REQUIRE(std::abs(gval.at_mode(-2) - Complex{0.0, 0.5}) < 1e-13);
    for (std::size_t i = 0; i < gval.size(); ++i) {
        const int m = g.mode_vector(i)[0];
        if (std::abs(m) != 2) REQUIRE(std::abs(gval[i]) < 1e-13);
    }
}

TEST_CASE("a quasi-geostrophic plane wave does not advect itself") {
    const Grid g(2, 16, 2.0 * kPi);
    const SpectralField eta = single_mode(g, 1, 0, 1.0);
    const SpectralField adv = evaluate_nonlinearity(sqg(1.5), eta);
    REQUIRE(adv.max_abs() == 0.0);
    // the direct convolution route agrees
    REQUIRE(oracle::nonlinearity(sqg(1.5), eta).max_abs() < 1e-15);
}

TEST_CASE("pseudo-spectral nonlinearity matches direct convolution") {
    const Grid g1(1, 32, 2.0 * kPi);
    const Grid g2(2, 32, 2.0 * kPi);
    struct Case {
        EquationSpec spec;
        const Grid* grid;
        int band_hi;
    };
    const std::vector<Case> cases = {
        {fractional_heat(1, 2.0, 3, 0.8), &g1, 3},
        {burgers(3), &g1, 3},
        {sqg(1.25), &g2, 3},
        {nse_vorticity(2), &g2, 3},
        {cahn_hilliard_cubic(1, 0.7), &g1, 3},
        {cahn_hilliard_general(1, {0.05, 0.0, -0.3, 0.0, 0.4}), &g1, 2},
    };
    for (const auto& c : cases) {
        const SpectralField u = random_band(*c.grid, 123, 1, c.band_hi, 0.9);
        const SpectralField got = evaluate_nonlinearity(c.spec, u);
        const SpectralField want = oracle::nonlinearity(c.spec, u);
        const double scale = std::max(want.max_abs(), 1e-300);
        REQUIRE(testing::max_coeff_distance(got, want) / scale < 1e-10);
    }
}

TEST_CASE("derivative-led instances annihilate the mean exactly") {
    const Grid g1(1, 32, 2.0 * kPi);
    const Grid g2(2, 32, 2.0 * kPi);
    {
        const SpectralField u = random_band(g1, 9, 1, 5, 1.0);
        REQUIRE(std::abs(evaluate_nonlinearity(burgers(3), u).at_mode(0)) == 0.0);
        REQUIRE(std::abs(evaluate_nonlinearity(cahn_hilliard_cubic(1, 1.0), u).at_mode(0)) == 0.0);
        REQUIRE(std::abs(evaluate_nonlinearity(cahn_hilliard_general(1, {0.2, 0.0, 0.3}), u)
                             .at_mode(0)) == 0.0);
    }
    {
        const SpectralField u = random_band(g2, 10, 1, 4, 1.0);
        REQUIRE(std::abs(evaluate_nonlinearity(sqg(1.5), u).at_mode(0, 0)) == 0.0);
        REQUIRE(std::abs(evaluate_nonlinearity(nse_vorticity(2), u).at_mode(0, 0)) == 0.0);
    }
}

TEST_CASE("dealiased advection is skew-symmetric on band-limited data") {
    const Grid g(2, 32, 2.0 * kPi);
    for (const auto& spec : {sqg(1.5), nse_vorticity(2)}) {
        const SpectralField u = random_band(g, 14, 1, 5, 1.0);
        const SpectralField gu = evaluate_nonlinearity(spec, u);
        Complex inner{0.0, 0.0};
        for (std::size_t i = 0; i < u.size(); ++i) inner += std::conj(u[i]) * gu[i];
        inner *= g.box_volume();
        REQUIRE(std::abs(inner) < 1e-10);
    }
}

TEST_CASE("even-degree heat nonlinearity uses the pointwise absolute value") {
    const Grid g(1, 64, 2.0 * kPi);
    std::vector<double> phys(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) phys[i] = std::sin(g.point(i)[0]);
    const SpectralField u = forward_transform(phys, g);
    const SpectralField gval = evaluate_nonlinearity(fractional_heat(1, 2.0, 2, 1.0), u);
    // |sin| sin is not band-limited, so the dealias cut leaves an O(k^-3)
    // spectral tail; the pointwise values are only approximately recovered
    const auto out = inverse_transform(dealias(gval, 1.0));
    for (std::size_t i = 0; i < out.size(); i += 7) {
        const double s = phys[i];
        REQUIRE(out[i] == Approx(std::abs(s) * s).margin(1e-3));
    }
}

TEST_CASE("nonlinearity signals blow-up on over-threshold data") {
    const Grid g(1, 32, 2.0 * kPi);
    const SpectralField u = single_mode(g, 1, 0, 100.0);
    REQUIRE_THROWS_AS(evaluate_nonlinearity(burgers(3), u, 2.0 / 3.0, 10.0), blowup_error);
}

TEST_CASE("polynomial flux smallness functional") {
    const EquationSpec s = cahn_hilliard_general(1, {0.1, -0.2, 0.3, 0.0, 2.0});
    // sum_{j<=2N-2} j |a_j| = 1*0.1 + 2*0.2 + 3*0.3 + 4*0
    REQUIRE(ch_smallness_sum(s) == Approx(0.1 + 0.4 + 0.9));
}

TEST_CASE("spec validation and factory guards") {
    REQUIRE_THROWS_AS(sqg(1.0), std::invalid_argument);
    REQUIRE_THROWS_AS(sqg(2.5), std::invalid_argument);
    REQUIRE_THROWS_AS(cahn_hilliard_general(1, {0.1, 0.2}), std::invalid_argument);
    REQUIRE_THROWS_AS(cahn_hilliard_general(1, {0.1, 0.2, -1.0}), std::invalid_argument);
    EquationSpec bad = burgers(2);
    bad.alpha_T.pop_back();
    REQUIRE_THROWS_AS(bad.validate(), std::invalid_argument);
    // the admissibility boundary kappa = 1 is constructible for calculators
    const EquationSpec boundary = fractional_heat(1, 1.0, 3, 1.0);
    REQUIRE_NOTHROW(check_admissibility(boundary, 2.0));
}
