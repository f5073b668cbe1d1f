#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "gevlab/initial_conditions.hpp"
#include "gevlab/lp_decomp.hpp"
#include "test_helpers.hpp"

using namespace gevlab;
using Catch::Approx;

namespace {
const double kPi = std::numbers::pi;
}

TEST_CASE("filter bank partitions unity on every resolved mode") {
    for (int dim : {1, 2}) {
        const Grid g(dim, 64, 2.0 * kPi);
        REQUIRE(lp_build(g).partition_defect() < 1e-12);
    }
    // box length away from 2*pi shifts the dyadic range, partition still holds
    const Grid g(1, 128, 37.0);
    REQUIRE(lp_build(g).partition_defect() < 1e-12);
}

TEST_CASE("a dyadically centered mode concentrates in neighboring blocks") {
    const Grid g(1, 64, 2.0 * kPi);
    const LPBank bank = lp_build(g);
    const int j_mode = 3;  // |k| = 8
    SpectralField f(g);
    f.set_mode(8, 0, Complex{1.0, 0.0});
    f.set_mode(-8, 0, Complex{1.0, 0.0});
    for (int j = bank.j_min(); j <= bank.j_max(); ++j) {
        const double mass = lp_block(f, bank, j).max_abs();
        if (std::abs(j - j_mode) > 1) REQUIRE(mass == 0.0);
    }
    REQUIRE(lp_lowpass(f, bank).max_abs() == 0.0);
}

TEST_CASE("blocks plus low-pass reconstruct any field") {
    const Grid g(2, 32, 2.0 * kPi);
    SpectralField f = random_band(g, 50, 1, 15, 1.0);
    f.set_mode(0, 0, Complex{0.37, 0.0});  // nonzero mean goes to the low-pass
    const LPBank bank = lp_build(g);
    SpectralField recon = lp_lowpass(f, bank);
    for (int j = bank.j_min(); j <= bank.j_max(); ++j) recon += lp_block(f, bank, j);
    REQUIRE(testing::max_coeff_distance(recon, f) < 1e-12 * f.max_abs());
}

TEST_CASE("blocks two apart have disjoint supports") {
    const Grid g(1, 64, 2.0 * kPi);
    const LPBank bank = lp_build(g);
    for (int j = bank.j_min(); j <= bank.j_max(); ++j) {
        for (int jp = j + 2; jp <= bank.j_max(); ++jp) {
            const auto& a = bank.block_filter(j);
            const auto& b = bank.block_filter(jp);
            double overlap = 0.0;
            for (std::size_t i = 0; i < a.size(); ++i) overlap = std::max(overlap, a[i] * b[i]);
            REQUIRE(overlap == 0.0);
        }
    }
}

TEST_CASE("block index outside the bank range is rejected") {
    const Grid g(1, 32, 2.0 * kPi);
    const LPBank bank = lp_build(g);
    const SpectralField f(g);
    REQUIRE_THROWS_AS(lp_block(f, bank, bank.j_max() + 1), std::invalid_argument);
    REQUIRE_THROWS_AS(lp_block(f, bank, bank.j_min() - 1), std::invalid_argument);
}

TEST_CASE("square-function norm of the zero field vanishes") {
    const Grid g(1, 32, 2.0 * kPi);
    REQUIRE(triebel_lizorkin_norm(SpectralField(g), 1.0, 2.0, lp_build(g)) == 0.0);
}

TEST_CASE("square-function norm requires a mean-zero field") {
    const Grid g(1, 32, 2.0 * kPi);
    SpectralField f(g);
    f.set_mode(0, 0, Complex{1.0, 0.0});
    REQUIRE_THROWS_AS(triebel_lizorkin_norm(f, 1.0, 2.0, lp_build(g)), std::invalid_argument);
}

TEST_CASE("square-function and Sobolev norms are equivalent on single modes") {
    // dyadically centered modes make the block weight exact: the ratio is a
    // fixed bank constant, here recorded from calibration
    const Grid g(1, 64, 2.0 * kPi);
    const LPBank bank = lp_build(g);
    for (int m : {2, 4, 8, 16}) {
        SpectralField f(g);
        f.set_mode(m, 0, Complex{0.5, 0.0});
        f.set_mode(-m, 0, Complex{0.5, 0.0});
        const double ratio = triebel_lizorkin_norm(f, 1.0, 2.0, bank) / sobolev_norm(f, 1.0, 2.0);
        REQUIRE(ratio == Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("square-function/Sobolev ratio over random fields stays in frozen bounds") {
    const Grid g(1, 64, 2.0 * kPi);
    const LPBank bank = lp_build(g);
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const SpectralField f = random_band(g, 1000 + trial, 1, 20, 1.0);
        const double r = triebel_lizorkin_norm(f, 1.0, 2.0, bank) / sobolev_norm(f, 1.0, 2.0);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    REQUIRE(lo >= 0.25);
    REQUIRE(hi <= 1.6);
}

TEST_CASE("paraproduct split reconstructs the pointwise product") {
    const Grid g(1, 64, 2.0 * kPi);
    const SpectralField u = random_band(g, 60, 1, 10, 1.1);
    const SpectralField v = random_band(g, 61, 1, 10, 0.9);
    const LPBank bank = lp_build(g);
    const BonyParts parts = bony_split(u, v, bank);
    const auto pu = inverse_transform(u);
    const auto pv = inverse_transform(v);
    double worst = 0.0, scale = 1e-300;
    for (std::size_t i = 0; i < pu.size(); ++i) {
        const double prod = pu[i] * pv[i];
        scale = std::max(scale, std::abs(prod));
        worst = std::max(worst, std::abs(parts.low_high[i] + parts.high_low[i] +
                                         parts.diagonal[i] - prod));
    }
    REQUIRE(worst / scale < 1e-10);
}
