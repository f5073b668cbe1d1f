#pragma once

#include <cmath>
#include <random>
#include <stdexcept>

#include "gevlab/field.hpp"
#include "gevlab/grid.hpp"
#include "gevlab/transform.hpp"

namespace gevlab {

/// amplitude * exp(-|x - center|^2 / (2 width^2)), sampled on the grid
/// (no periodic image summation; intended for boxes much wider than the bump).
inline SpectralField gaussian_bump(const Grid& grid, const std::array<double, 2>& center,
                                   double width, double amplitude) {
    if (!(width > 0.0)) throw std::invalid_argument("gaussian_bump: width must be positive");
    std::vector<double> phys(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto x = grid.point(i);
        double r2 = (x[0] - center[0]) * (x[0] - center[0]);
        if (grid.dim() == 2) r2 += (x[1] - center[1]) * (x[1] - center[1]);
        phys[i] = amplitude * std::exp(-r2 / (2.0 * width * width));
    }
    return forward_transform(phys, grid);
}

/// amplitude * cos(k.x) for an integer frequency vector.
inline SpectralField single_mode(const Grid& grid, int mx, int my, double amplitude) {
    if (std::abs(mx) > grid.points_per_dim() / 2 || std::abs(my) > grid.points_per_dim() / 2)
        throw std::invalid_argument("single_mode: frequency outside resolved band");
    SpectralField f(grid);
    const std::size_t flat = grid.flat_of_modes(mx, grid.dim() == 2 ? my : 0);
    const std::size_t cflat = grid.conjugate_index(flat);
    if (cflat == flat) {
        f[flat] = Complex{amplitude, 0.0};
    } else {
        f[flat] = Complex{amplitude / 2.0, 0.0};
        f[cflat] = Complex{amplitude / 2.0, 0.0};
    }
    return f;
}

/// Random-phase field with flat modulus on integer-frequency shells
/// band_lo <= |m| <= band_hi, zero mean, rescaled to the requested L2 norm.
/// Deterministic for a fixed seed.
inline SpectralField random_band(const Grid& grid, std::uint64_t seed, int band_lo, int band_hi,
                                 double l2_amplitude) {
    if (band_lo < 1 || band_hi < band_lo)
        throw std::invalid_argument("random_band: need 1 <= band_lo <= band_hi");
    if (band_hi > grid.points_per_dim() / 2)
        throw std::invalid_argument("random_band: band exceeds resolved frequencies");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    SpectralField f(grid);
    const int nyq = grid.points_per_dim() / 2;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto m = grid.mode_vector(i);
        // fill one half-spectrum with unit modulus and mirror the conjugate,
        // so every populated mode has exactly the same magnitude
        if (std::abs(m[0]) == nyq || std::abs(m[1]) == nyq) continue;
        if (!(m[0] > 0 || (m[0] == 0 && m[1] > 0))) continue;
        const double r = std::hypot(static_cast<double>(m[0]), static_cast<double>(m[1]));
        if (r >= band_lo - 0.5 && r <= band_hi + 0.5) {
            const double th = phase(rng);
            f[i] = Complex{std::cos(th), std::sin(th)};
            f[grid.conjugate_index(i)] = std::conj(f[i]);
        }
    }
    const double norm = f.l2_norm();
    if (norm > 0.0) f *= l2_amplitude / norm;
    return f;
}

}  // namespace gevlab
