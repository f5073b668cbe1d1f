#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "gevlab/errors.hpp"
#include "gevlab/field.hpp"
#include "gevlab/multiplier.hpp"
#include "gevlab/transform.hpp"

namespace gevlab {

inline constexpr double kInfExponent = std::numeric_limits<double>::infinity();

/// Grid L^p quadrature of physical samples (Riemann sum; exact only at p=2
/// via Plancherel, which callers use instead where possible).
inline double physical_lp_norm(const std::vector<double>& samples, const Grid& grid, double p) {
    if (p == kInfExponent) {
        double m = 0.0;
        for (double v : samples) m = std::max(m, std::abs(v));
        return m;
    }
    if (!(p >= 1.0)) throw std::invalid_argument("lp norm: p must be >= 1");
    double s = 0.0;
    for (double v : samples) s += std::pow(std::abs(v), p);
    return std::pow(s * grid.cell_volume(), 1.0 / p);
}

/// Homogeneous Sobolev norm || |k|^beta coeff ||: Plancherel sum for p=2,
/// grid quadrature otherwise. Negative beta requires a zero mean.
inline double sobolev_norm(const SpectralField& field, double beta, double p) {
    if (beta < 0.0) {
        const double mean_mag = std::abs(field[field.grid().flat_of_modes(0, 0)]);
        const double scale = std::max(field.max_abs(), 1e-300);
        if (mean_mag > 1e-12 * scale)
            throw std::invalid_argument(
                "sobolev_norm: negative order requires a mean-zero field (|coeff(0)| = " +
                std::to_string(mean_mag) + ")");
    }
    const Grid& g = field.grid();
    if (p == 2.0) {
        double s = 0.0;
        for (std::size_t i = 0; i < field.size(); ++i) {
            const double r = g.wavenumber_norm(i);
            const double w = r == 0.0 ? (beta == 0.0 ? 1.0 : 0.0) : std::pow(r, beta);
            s += w * w * std::norm(field[i]);
        }
        return std::sqrt(g.box_volume() * s);
    }
    const SpectralField lf = apply_multiplier(field, lambda_power_symbol(beta));
    return physical_lp_norm(inverse_transform(lf), g, p);
}

/// Parameters of a Gevrey norm evaluation. The exponential weight is
/// exp(weight_constant * s^(1/kappa) * w(k)) with w(k) the chosen norm of k.
struct GevreyParams {
    enum class WeightNorm { Euclidean, L1 };

    double s = 0.0;
    double beta = 0.0;
    double kappa = 2.0;
    double p = 2.0;
    double weight_constant = 0.5;
    GevreyParams::WeightNorm weight_norm = GevreyParams::WeightNorm::Euclidean;

    GevreyParams with_s(double new_s) const {
        GevreyParams gp = *this;
        gp.s = new_s;
        return gp;
    }
};

/// Largest admissible weight constant for the L1 exponent convention,
/// c |k|_1 < (1/4)|k|: equals 1/(4 sqrt(d)) on R^d.
inline double max_l1_weight_constant(int dim) { return 0.25 / std::sqrt(static_cast<double>(dim)); }

namespace detail {
inline double k_weight(const std::array<double, 2>& k, GevreyParams::WeightNorm wn) {
    return wn == GevreyParams::WeightNorm::Euclidean ? std::hypot(k[0], k[1])
                                                     : std::abs(k[0]) + std::abs(k[1]);
}
}  // namespace detail

/// Gevrey norm of a field. p = 2 evaluates the Plancherel sum
/// (sum exp(2 c s^{1/kappa} w(k)) |k|^{2 beta} |coeff|^2)^{1/2}; p = 1 is the
/// Fourier-side mode sum  sum exp(c s^{1/kappa} w(k)) |k|^beta |coeff|; other
/// p apply the weight spectrally and take the physical grid L^p norm.
/// Throws gevrey_overflow_error when the weight exponent would exceed the
/// double exponential range (argument > 700 at the largest resolved mode).
inline double gevrey_norm(const SpectralField& field, const GevreyParams& gp) {
    if (gp.s < 0.0) throw std::invalid_argument("gevrey_norm: s must be >= 0");
    if (!(gp.kappa > 0.0)) throw std::invalid_argument("gevrey_norm: kappa must be positive");
    if (!(gp.weight_constant > 0.0) || gp.weight_constant > 1.0)
        throw std::invalid_argument("gevrey_norm: weight_constant must be in (0, 1]");
    const Grid& g = field.grid();
    const double s_pow = std::pow(gp.s, 1.0 / gp.kappa);
    const double scale_1d = gp.weight_constant * s_pow * g.wavenumber_unit() * (g.points_per_dim() / 2);
    const double worst = gp.weight_norm == GevreyParams::WeightNorm::Euclidean
                             ? scale_1d * (g.dim() == 2 ? std::numbers::sqrt2 : 1.0)
                             : scale_1d * g.dim();
    if (worst > 700.0)
        throw gevrey_overflow_error("gevrey_norm: weight exponent " + std::to_string(worst) +
                                    " exceeds overflow guard at s = " + std::to_string(gp.s));

    if (gp.p == 2.0) {
        double acc = 0.0;
        for (std::size_t i = 0; i < field.size(); ++i) {
            const double r = g.wavenumber_norm(i);
            const double pw = r == 0.0 ? (gp.beta == 0.0 ? 1.0 : 0.0) : std::pow(r, gp.beta);
            const double w = detail::k_weight(g.wavevector(i), gp.weight_norm);
            acc += std::exp(2.0 * gp.weight_constant * s_pow * w) * pw * pw * std::norm(field[i]);
        }
        return std::sqrt(g.box_volume() * acc);
    }
    if (gp.p == 1.0) {
        double acc = 0.0;
        for (std::size_t i = 0; i < field.size(); ++i) {
            const double r = g.wavenumber_norm(i);
            const double pw = r == 0.0 ? (gp.beta == 0.0 ? 1.0 : 0.0) : std::pow(r, gp.beta);
            const double w = detail::k_weight(g.wavevector(i), gp.weight_norm);
            acc += std::exp(gp.weight_constant * s_pow * w) * pw * std::abs(field[i]);
        }
        return acc;
    }
    // general p: weight the coefficients, go to physical space, quadrature
    SpectralField weighted(g);
    for (std::size_t i = 0; i < field.size(); ++i) {
        const double r = g.wavenumber_norm(i);
        const double pw = r == 0.0 ? (gp.beta == 0.0 ? 1.0 : 0.0) : std::pow(r, gp.beta);
        const double w = detail::k_weight(g.wavevector(i), gp.weight_norm);
        weighted[i] = field[i] * std::exp(gp.weight_constant * s_pow * w) * pw;
    }
    return physical_lp_norm(inverse_transform(weighted), g, gp.p);
}

/// Ratio ||L^s(fg)||_p / (||L^s f||_{p1} ||g||_{q1} + ||f||_{p2} ||L^s g||_{q2})
/// for the fractional product rule, with Hoelder-conjugate exponent pairs
/// 1/p = 1/p1 + 1/q1 = 1/p2 + 1/q2. The product fg is the dealiased
/// pseudo-spectral product.
inline double kato_ponce_ratio(const SpectralField& f, const SpectralField& g, double s, double p,
                               double p1, double q1, double p2, double q2) {
    if (s < 0.0) throw std::invalid_argument("kato_ponce_ratio: s must be >= 0");
    auto inv = [](double e) { return e == kInfExponent ? 0.0 : 1.0 / e; };
    if (std::abs(inv(p) - inv(p1) - inv(q1)) > 1e-12 || std::abs(inv(p) - inv(p2) - inv(q2)) > 1e-12)
        throw std::invalid_argument("kato_ponce_ratio: exponents are not Hoelder-conjugate");
    const SpectralField fg = dealiased_product(f, g);
    const double num = sobolev_norm(fg, s, p);
    const double den = sobolev_norm(f, s, p1) * sobolev_norm(g, 0.0, q1) +
                       sobolev_norm(f, 0.0, p2) * sobolev_norm(g, s, q2);
    if (den == 0.0) throw std::invalid_argument("kato_ponce_ratio: zero denominator");
    return num / den;
}

/// Exact maximum of x^alpha exp(-t x^kappa) over x >= 0, the scalar constant
/// behind the semigroup smoothing estimates.
inline double smoothing_constant(double alpha, double t, double kappa) {
    if (alpha == 0.0) return 1.0;
    if (!(t > 0.0) || !(kappa > 0.0) || alpha < 0.0)
        throw std::invalid_argument("smoothing_constant: need alpha >= 0, t > 0, kappa > 0");
    const double e = alpha / kappa;
    return std::pow(alpha / (t * kappa), e) * std::exp(-e);
}

}  // namespace gevlab
