#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gevlab/field.hpp"
#include "gevlab/grid.hpp"
#include "gevlab/transform.hpp"

namespace gevlab {

/// Fourier multiplier m(k). `order` is the growth degree used in smoothing
/// bookkeeping, with |m(k)| <= bound_constant * |k|^order on nonzero modes
/// (checked for the built-in symbols in tests).
struct MultiplierSymbol {
    std::function<Complex(const std::array<double, 2>&)> eval;
    double order = 0.0;
    double bound_constant = 1.0;
    std::string name;

    Complex operator()(const std::array<double, 2>& k) const { return eval(k); }
};

/// Coefficient-wise product coeff(k) * m(k). NaN in the symbol output is an
/// error; Hermitian symmetry is preserved whenever m(-k) = conj(m(k)).
inline SpectralField apply_multiplier(const SpectralField& field, const MultiplierSymbol& m) {
    SpectralField out(field.grid());
    const Grid& g = field.grid();
    for (std::size_t i = 0; i < field.size(); ++i) {
        const Complex v = m(g.wavevector(i));
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument("apply_multiplier: symbol '" + m.name +
                                        "' produced a non-finite value");
        out[i] = field[i] * v;
    }
    return out;
}

/// Samples of a symbol on a grid, for repeated coefficient-wise use.
inline std::vector<Complex> bake_symbol(const MultiplierSymbol& m, const Grid& grid) {
    std::vector<Complex> baked(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) baked[i] = m(grid.wavevector(i));
    return baked;
}

/// |k|^beta with the homogeneous zero-mode convention: value 0 at k = 0 for
/// beta != 0 (mean-zero subspace), and |0|^0 = 1 for beta = 0 so the
/// degree-zero power acts as the identity.
inline MultiplierSymbol lambda_power_symbol(double beta) {
    MultiplierSymbol m;
    m.order = std::max(beta, 0.0);
    m.bound_constant = 1.0;
    m.name = "lambda^" + std::to_string(beta);
    m.eval = [beta](const std::array<double, 2>& k) -> Complex {
        const double r = std::hypot(k[0], k[1]);
        if (r == 0.0) return beta == 0.0 ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
        return Complex{std::pow(r, beta), 0.0};
    };
    return m;
}

/// Symbol of the fractional dissipation of order kappa: |k|^kappa.
inline MultiplierSymbol fractional_laplacian_symbol(double kappa) {
    if (!(kappa > 0.0))
        throw std::invalid_argument("fractional_laplacian_symbol: kappa must be positive");
    MultiplierSymbol m = lambda_power_symbol(kappa);
    m.name = "fractional_laplacian_" + std::to_string(kappa);
    return m;
}

/// Symbol of the dissipative semigroup at time t: exp(-t |k|^kappa); the
/// zero mode stays fixed and t = 0 gives the identity.
inline MultiplierSymbol semigroup_multiplier(double t, double kappa) {
    if (t < 0.0) throw std::invalid_argument("semigroup_multiplier: t must be >= 0");
    if (!(kappa > 0.0)) throw std::invalid_argument("semigroup_multiplier: kappa must be positive");
    MultiplierSymbol m;
    m.order = 0.0;
    m.bound_constant = 1.0;
    m.name = "semigroup_t" + std::to_string(t);
    m.eval = [t, kappa](const std::array<double, 2>& k) -> Complex {
        const double r = std::hypot(k[0], k[1]);
        return Complex{std::exp(-t * std::pow(r, kappa)), 0.0};
    };
    return m;
}

/// The 2D Riesz-velocity pair (-i k2/|k|, i k1/|k|): maps a scalar to a
/// divergence-free unit-modulus velocity; zero mode maps to 0.
inline std::pair<MultiplierSymbol, MultiplierSymbol> riesz_vector_symbols(int dim) {
    if (dim != 2) throw std::invalid_argument("riesz_vector_symbols: only dim = 2 is defined");
    MultiplierSymbol m1, m2;
    m1.order = m2.order = 0.0;
    m1.bound_constant = m2.bound_constant = 1.0;
    m1.name = "riesz_velocity_x";
    m2.name = "riesz_velocity_y";
    m1.eval = [](const std::array<double, 2>& k) -> Complex {
        const double r = std::hypot(k[0], k[1]);
        if (r == 0.0) return {0.0, 0.0};
        return Complex{0.0, -k[1] / r};
    };
    m2.eval = [](const std::array<double, 2>& k) -> Complex {
        const double r = std::hypot(k[0], k[1]);
        if (r == 0.0) return {0.0, 0.0};
        return Complex{0.0, k[0] / r};
    };
    return {m1, m2};
}

/// Derivative along axis: i * k_axis.
inline MultiplierSymbol derivative_symbol(int axis) {
    if (axis != 0 && axis != 1) throw std::invalid_argument("derivative_symbol: axis must be 0 or 1");
    MultiplierSymbol m;
    m.order = 1.0;
    m.bound_constant = 1.0;
    m.name = axis == 0 ? "d/dx" : "d/dy";
    m.eval = [axis](const std::array<double, 2>& k) -> Complex { return Complex{0.0, k[axis]}; };
    return m;
}

/// Zero all coefficients with any frequency component |m| > rule * N/2.
/// Idempotent; the default rule 2/3 removes aliasing from binary products
/// of retained-band inputs.
inline SpectralField dealias(const SpectralField& field, double rule = 2.0 / 3.0) {
    if (!(rule > 0.0) || rule > 1.0) throw std::invalid_argument("dealias: rule must be in (0, 1]");
    const Grid& g = field.grid();
    const double cutoff = rule * (g.points_per_dim() / 2);
    SpectralField out = field;
    for (std::size_t i = 0; i < out.size(); ++i) {
        const auto m = g.mode_vector(i);
        if (std::abs(m[0]) > cutoff || (g.dim() == 2 && std::abs(m[1]) > cutoff))
            out[i] = Complex{0.0, 0.0};
    }
    return out;
}

inline bool is_band_limited(const SpectralField& field, double rule = 2.0 / 3.0) {
    const Grid& g = field.grid();
    const double cutoff = rule * (g.points_per_dim() / 2);
    for (std::size_t i = 0; i < field.size(); ++i) {
        const auto m = g.mode_vector(i);
        if ((std::abs(m[0]) > cutoff || (g.dim() == 2 && std::abs(m[1]) > cutoff)) &&
            field[i] != Complex{0.0, 0.0})
            return false;
    }
    return true;
}

/// Pseudo-spectral binary product: pointwise product of the physical-space
/// factors, transformed back and dealiased.
inline SpectralField dealiased_product(const SpectralField& a, const SpectralField& b,
                                       double rule = 2.0 / 3.0) {
    if (!(a.grid() == b.grid())) throw std::invalid_argument("dealiased_product: grid mismatch");
    const auto pa = inverse_transform_complex(a);
    const auto pb = inverse_transform_complex(b);
    std::vector<Complex> prod(pa.size());
    for (std::size_t i = 0; i < pa.size(); ++i) prod[i] = pa[i] * pb[i];
    return dealias(forward_transform_complex(prod, a.grid()), rule);
}

}  // namespace gevlab
