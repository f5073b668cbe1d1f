#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "gevlab/field.hpp"
#include "gevlab/grid.hpp"
#include "gevlab/initial_conditions.hpp"
#include "gevlab/multiplier.hpp"
#include "gevlab/norms.hpp"
#include "gevlab/transform.hpp"
#include "test_helpers.hpp"

using namespace gevlab;
using Catch::Approx;

namespace {
const double kPi = std::numbers::pi;

std::vector<double> random_samples(const Grid& g, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> v(g.size());
    for (auto& x : v) x = dist(rng);
    return v;
}
}  // namespace

TEST_CASE("grid validates its construction parameters") {
    REQUIRE_THROWS_AS(Grid(3, 16, 1.0), std::invalid_argument);
    REQUIRE_THROWS_AS(Grid(1, 12, 1.0), std::invalid_argument);
    REQUIRE_THROWS_AS(Grid(1, 4, 1.0), std::invalid_argument);
    REQUIRE_THROWS_AS(Grid(1, 16, -1.0), std::invalid_argument);
    const Grid g(2, 16, 2.0);
    REQUIRE(g.size() == 256);
    REQUIRE(g.mode(0) == 0);
    REQUIRE(g.mode(8) == 8);   // Nyquist on the positive side
    REQUIRE(g.mode(9) == -7);
    REQUIRE(g.wavenumber_unit() == Approx(kPi));
}

TEST_CASE("constant field transforms to a pure DC coefficient") {
    const Grid g(1, 32, 2.0 * kPi);
    const SpectralField f = forward_transform(std::vector<double>(g.size(), 1.0), g);
    REQUIRE(f.at_mode(0).real() == Approx(1.0).margin(1e-14));
    for (std::size_t i = 1; i < f.size(); ++i) REQUIRE(std::abs(f[i]) < 1e-14);
}

TEST_CASE("cosine maps to half-weight conjugate modes and back") {
    const Grid g(1, 64, 2.0 * kPi);
    std::vector<double> phys(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) phys[i] = std::cos(g.point(i)[0]);
    const SpectralField f = forward_transform(phys, g);
    REQUIRE(f.at_mode(1).real() == Approx(0.5).margin(1e-14));
    REQUIRE(f.at_mode(-1).real() == Approx(0.5).margin(1e-14));
    REQUIRE(std::abs(f.at_mode(2)) < 1e-14);

    const auto back = inverse_transform(f);
    for (std::size_t i = 0; i < back.size(); ++i)
        REQUIRE(back[i] == Approx(phys[i]).margin(1e-12));
}

TEST_CASE("round trip is identity within 1e-12 for random data") {
    for (int dim : {1, 2}) {
        const Grid g(dim, 32, 3.7);
        const auto phys = random_samples(g, 99);
        const auto back = inverse_transform(forward_transform(phys, g));
        double worst = 0.0;
        for (std::size_t i = 0; i < phys.size(); ++i)
            worst = std::max(worst, std::abs(back[i] - phys[i]));
        REQUIRE(worst < 1e-12);
    }
}

TEST_CASE("forward transform rejects shape mismatches") {
    const Grid g(1, 16, 1.0);
    REQUIRE_THROWS_AS(forward_transform(std::vector<double>(7, 0.0), g), std::invalid_argument);
}

TEST_CASE("inverse transform rejects asymmetric coefficients") {
    const Grid g(1, 16, 1.0);
    SpectralField f(g);
    f.set_mode(1, 0, Complex{1.0, 0.0});
    f.set_mode(-1, 0, Complex{0.0, 0.7});  // not the conjugate
    REQUIRE_THROWS_AS(inverse_transform(f), std::invalid_argument);
}

TEST_CASE("symmetrize makes Nyquist rows real and pairs conjugate") {
    const Grid g(1, 16, 1.0);
    SpectralField f(g);
    f.set_mode(8, 0, Complex{1.0, 0.5});
    f.set_mode(3, 0, Complex{0.2, 0.4});
    f.symmetrize();
    REQUIRE(f.at_mode(8).imag() == 0.0);
    REQUIRE(f.at_mode(-3) == std::conj(f.at_mode(3)));
    REQUIRE(f.symmetry_defect() < 1e-15);
}

TEST_CASE("Plancherel: physical energy equals coefficient energy") {
    const Grid g(2, 16, 5.0);
    const auto phys = random_samples(g, 3);
    const SpectralField f = forward_transform(phys, g);
    double phys_energy = 0.0;
    for (double v : phys) phys_energy += v * v * g.cell_volume();
    REQUIRE(f.l2_norm() * f.l2_norm() == Approx(phys_energy).epsilon(1e-12));
}

TEST_CASE("identity multiplier and degree-zero convention") {
    const Grid g(1, 16, 2.0 * kPi);
    SpectralField f(g);
    f.set_mode(0, 0, Complex{2.0, 0.0});
    f.set_mode(3, 0, Complex{0.5, 0.1});
    const SpectralField same = apply_multiplier(f, lambda_power_symbol(0.0));
    // |0|^0 = 1 by convention, so the mean passes through unchanged
    REQUIRE(same.at_mode(0) == f.at_mode(0));
    REQUIRE(same.at_mode(3) == f.at_mode(3));
}

TEST_CASE("positive and negative powers invert on nonzero modes") {
    const Grid g(1, 64, 2.0 * kPi);
    SpectralField f = random_band(g, 17, 1, 20, 1.0);
    const SpectralField there = apply_multiplier(f, lambda_power_symbol(1.3));
    const SpectralField back = apply_multiplier(there, lambda_power_symbol(-1.3));
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (g.wavenumber_norm(i) == 0.0) {
            REQUIRE(std::abs(back[i]) == 0.0);  // zero mode annihilated
        } else {
            REQUIRE(std::abs(back[i] - f[i]) < 1e-12);
        }
    }
}

TEST_CASE("multiplier rejects non-finite symbol output") {
    const Grid g(1, 16, 1.0);
    SpectralField f(g);
    f.set_mode(1, 0, Complex{1.0, 0.0});
    MultiplierSymbol bad;
    bad.name = "bad";
    bad.eval = [](const std::array<double, 2>&) {
        return Complex{std::numeric_limits<double>::quiet_NaN(), 0.0};
    };
    REQUIRE_THROWS_AS(apply_multiplier(f, bad), std::invalid_argument);
}

TEST_CASE("multiplier application commutes and composes") {
    const Grid g(1, 32, 2.0 * kPi);
    const SpectralField f = random_band(g, 5, 1, 10, 1.0);
    const auto m1 = lambda_power_symbol(0.7);
    const auto m2 = semigroup_multiplier(0.3, 2.0);
    const SpectralField a = apply_multiplier(apply_multiplier(f, m1), m2);
    const SpectralField b = apply_multiplier(apply_multiplier(f, m2), m1);
    MultiplierSymbol prod;
    prod.name = "m1*m2";
    prod.eval = [&](const std::array<double, 2>& k) { return m1(k) * m2(k); };
    const SpectralField c = apply_multiplier(f, prod);
    // products commute up to the last ulp of rounding
    REQUIRE(testing::max_coeff_distance(a, b) < 1e-15);
    REQUIRE(testing::max_coeff_distance(a, c) < 1e-14);
}

TEST_CASE("fractional dissipation symbol values") {
    const auto m2 = fractional_laplacian_symbol(2.0);
    REQUIRE(m2({1.0, 0.0}).real() == Approx(1.0));
    const auto m15 = fractional_laplacian_symbol(1.5);
    REQUIRE(m15({2.0, 0.0}).real() == Approx(std::pow(2.0, 1.5)));
    REQUIRE(m15({0.0, 0.0}) == Complex{0.0, 0.0});
    REQUIRE_THROWS_AS(fractional_laplacian_symbol(0.0), std::invalid_argument);
    REQUIRE_THROWS_AS(fractional_laplacian_symbol(-1.0), std::invalid_argument);

    // fourth-order dissipation agrees with the squared Laplacian pointwise
    const auto m4 = fractional_laplacian_symbol(4.0);
    const Grid g(2, 16, 2.0 * kPi);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto k = g.wavevector(i);
        const double lap = k[0] * k[0] + k[1] * k[1];
        REQUIRE(m4(k).real() == Approx(lap * lap).margin(1e-12));
    }
}

TEST_CASE("semigroup multiplier: value, identity at t=0, monotonicity") {
    const auto m = semigroup_multiplier(1.0, 2.0);
    REQUIRE(m({1.0, 0.0}).real() == Approx(std::exp(-1.0)));
    REQUIRE(m({0.0, 0.0}).real() == 1.0);
    const auto id = semigroup_multiplier(0.0, 2.0);
    REQUIRE(id({3.0, 4.0}).real() == 1.0);
    const auto mk = semigroup_multiplier(0.5, 1.5);
    REQUIRE(mk({1.0, 0.0}).real() > mk({2.0, 0.0}).real());
    REQUIRE(mk({2.0, 0.0}).real() > mk({3.0, 1.0}).real());
    REQUIRE_THROWS_AS(semigroup_multiplier(-0.1, 2.0), std::invalid_argument);
}

TEST_CASE("Riesz velocity pair: axis value, unit modulus, divergence-free") {
    REQUIRE_THROWS_AS(riesz_vector_symbols(1), std::invalid_argument);
    const auto [r1, r2] = riesz_vector_symbols(2);
    REQUIRE(r1({1.0, 0.0}) == Complex{0.0, 0.0});
    REQUIRE(r2({1.0, 0.0}) == Complex{0.0, 1.0});
    REQUIRE(r1({0.0, 0.0}) == Complex{0.0, 0.0});
    const Grid g(2, 16, 2.0 * kPi);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto k = g.wavevector(i);
        if (g.wavenumber_norm(i) == 0.0) continue;
        const Complex v1 = r1(k), v2 = r2(k);
        REQUIRE(std::sqrt(std::norm(v1) + std::norm(v2)) == Approx(1.0).margin(1e-13));
        REQUIRE(std::abs(k[0] * v1 + k[1] * v2) < 1e-13);
    }
}

TEST_CASE("dealias zeroes the top band and is idempotent") {
    const Grid g(1, 32, 2.0 * kPi);
    SpectralField f(g);
    for (int m = -15; m <= 16; ++m) f.set_mode(m, 0, Complex{1.0, 0.0});
    const SpectralField once = dealias(f);
    for (std::size_t i = 0; i < once.size(); ++i) {
        const int m = g.mode_vector(i)[0];
        if (std::abs(m) > 2.0 / 3.0 * 16) REQUIRE(once[i] == Complex{0.0, 0.0});
        else REQUIRE(once[i] == Complex{1.0, 0.0});
    }
    REQUIRE(testing::max_coeff_distance(dealias(once), once) == 0.0);

    const SpectralField band = random_band(g, 8, 1, 5, 1.0);
    REQUIRE(testing::max_coeff_distance(dealias(band), band) == 0.0);
    REQUIRE_THROWS_AS(dealias(f, 0.0), std::invalid_argument);
    REQUIRE_THROWS_AS(dealias(f, 1.5), std::invalid_argument);
}

TEST_CASE("dealiased product matches the exact product on a finer grid") {
    const Grid g(1, 32, 2.0 * kPi);
    const SpectralField a = random_band(g, 31, 1, 5, 1.0);
    const SpectralField b = random_band(g, 32, 1, 5, 0.8);
    const SpectralField got = dealiased_product(a, b);

    const SpectralField fa = testing::embed_on_finer_grid(a, 2);
    const SpectralField fb = testing::embed_on_finer_grid(b, 2);
    const auto pa = inverse_transform(fa);
    const auto pb = inverse_transform(fb);
    std::vector<double> prod(pa.size());
    for (std::size_t i = 0; i < pa.size(); ++i) prod[i] = pa[i] * pb[i];
    const SpectralField fine = forward_transform(prod, fa.grid());

    double worst = 0.0;
    for (std::size_t i = 0; i < got.size(); ++i) {
        const auto m = g.mode_vector(i);
        const Complex want = fine[fa.grid().flat_of_modes(m[0], 0)];
        const Complex have = got[i];
        // modes outside the retained band were zeroed by design
        if (std::abs(m[0]) > 2.0 / 3.0 * 16) continue;
        worst = std::max(worst, std::abs(want - have));
    }
    REQUIRE(worst < 1e-12);
}

TEST_CASE("per-mode smoothing bound holds with the exact scalar constant") {
    const Grid g(2, 32, 2.0 * kPi);
    for (double alpha : {0.5, 1.0, 2.0}) {
        for (double t : {0.01, 0.1, 1.0}) {
            for (double kappa : {1.5, 2.0}) {
                const double cap = smoothing_constant(alpha, t, kappa);
                double grid_max = 0.0;
                for (std::size_t i = 0; i < g.size(); ++i) {
                    const double r = g.wavenumber_norm(i);
                    grid_max = std::max(grid_max,
                                        std::pow(r, alpha) * std::exp(-t * std::pow(r, kappa)));
                }
                REQUIRE(grid_max <= cap * (1.0 + 1e-12));
            }
        }
    }
}
