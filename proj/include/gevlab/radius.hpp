#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "gevlab/field.hpp"

namespace gevlab {

/// Per-shell spectrum peak: max |coeff(k)| over the unit-width annulus
/// |k| in [r - 1/2, r + 1/2), together with the |k| attaining it.
struct ShellMax {
    int shell;
    double k_at_max;
    double value;
};

inline std::vector<ShellMax> shell_maxima(const SpectralField& field) {
    const Grid& g = field.grid();
    const int r_max = static_cast<int>(std::floor(g.max_wavenumber() + 0.5));
    std::vector<ShellMax> shells;
    shells.reserve(r_max);
    for (int r = 1; r <= r_max; ++r) shells.push_back({r, 0.0, 0.0});
    for (std::size_t i = 0; i < field.size(); ++i) {
        const double kn = g.wavenumber_norm(i);
        const int r = static_cast<int>(std::floor(kn + 0.5));
        if (r < 1 || r > r_max) continue;
        const double v = std::abs(field[i]);
        if (v > shells[r - 1].value) {
            shells[r - 1].value = v;
            shells[r - 1].k_at_max = kn;
        }
    }
    return shells;
}

struct RadiusFit {
    double rho = 0.0;           // exponential decay rate of shell maxima
    double log_intercept = 0.0; // fitted log amplitude at k = 0
    int shells_used = 0;
    bool saturated = false;     // fit line crosses the noise floor inside the resolved band
};

/// Least-squares fit of log max-spectrum against |k| over the shells above
/// the noise floor: the slope of the exponential tail of the spectrum.
/// Requires at least 4 usable shells; the returned rate is clamped at 0.
inline RadiusFit analyticity_radius_fit(const SpectralField& field, double noise_floor) {
    const auto shells = shell_maxima(field);
    std::vector<double> xs, ys;
    for (const auto& s : shells) {
        if (s.value > noise_floor && s.value > 0.0) {
            xs.push_back(s.k_at_max);
            ys.push_back(std::log(s.value));
        }
    }
    if (xs.size() < 4)
        throw std::invalid_argument("analyticity_radius: only " + std::to_string(xs.size()) +
                                    " shells above the noise floor; need at least 4");
    const double n = static_cast<double>(xs.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("analyticity_radius: degenerate shell layout");
    const double slope = (n * sxy - sx * sy) / denom;
    RadiusFit fit;
    fit.rho = std::max(0.0, -slope);
    fit.log_intercept = (sy - slope * sx) / n;
    fit.shells_used = static_cast<int>(xs.size());
    const double k_top = field.grid().max_wavenumber();
    fit.saturated = fit.log_intercept - fit.rho * k_top < std::log(std::max(noise_floor, 1e-300));
    return fit;
}

inline double analyticity_radius(const SpectralField& field, double noise_floor) {
    return analyticity_radius_fit(field, noise_floor).rho;
}

}  // namespace gevlab
