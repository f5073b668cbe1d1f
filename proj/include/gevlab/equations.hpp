#pragma once

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "gevlab/errors.hpp"
#include "gevlab/field.hpp"
#include "gevlab/multiplier.hpp"
#include "gevlab/transform.hpp"

namespace gevlab {

enum class EquationName {
    FractionalHeat,
    BurgersN,
    SQG,
    NSE2DVorticity,
    CahnHilliardCubic,
    CahnHilliardGeneral,
};

inline std::string equation_label(EquationName n) {
    switch (n) {
        case EquationName::FractionalHeat: return "fractional_heat";
        case EquationName::BurgersN: return "burgers";
        case EquationName::SQG: return "sqg";
        case EquationName::NSE2DVorticity: return "nse2d_vorticity";
        case EquationName::CahnHilliardCubic: return "cahn_hilliard_cubic";
        case EquationName::CahnHilliardGeneral: return "cahn_hilliard_general";
    }
    return "unknown";
}

/// One instance of u_t + Lambda^kappa u = G(u), G = T0 F(T1 u, ..., Tn u).
/// alpha_T records the multiplier orders (alpha_T0, ..., alpha_Tn); the
/// critical-exponent and admissibility calculators read only these numbers,
/// so specs with dimensions that are not simulated (e.g. d = 3) are allowed.
struct EquationSpec {
    EquationName name = EquationName::FractionalHeat;
    double kappa = 2.0;
    int dim = 1;
    int degree_n = 2;
    std::vector<double> alpha_T;

    // equation-specific coefficients
    double heat_coefficient = 0.0;          // alpha in alpha |u|^{n-1} u
    double ch_coefficient = 0.0;            // beta in beta Laplacian(u^3)
    std::vector<double> poly_coefficients;  // a_1..a_{2N-1} of f(u) = sum a_j u^j

    double alpha_sum() const { return std::accumulate(alpha_T.begin(), alpha_T.end(), 0.0); }

    double min_inner_alpha() const {
        double m = std::numeric_limits<double>::infinity();
        for (std::size_t i = 1; i < alpha_T.size(); ++i) m = std::min(m, alpha_T[i]);
        return m;
    }

    void validate() const {
        if (!(kappa >= 1.0))
            throw std::invalid_argument("EquationSpec: kappa must be >= 1 (dissipation order)");
        if (dim < 1 || dim > 3) throw std::invalid_argument("EquationSpec: dim must be 1, 2 or 3");
        if (degree_n < 2) throw std::invalid_argument("EquationSpec: degree_n must be >= 2");
        if (alpha_T.size() != static_cast<std::size_t>(degree_n) + 1)
            throw std::invalid_argument("EquationSpec: alpha_T must have degree_n + 1 entries");
        for (double a : alpha_T)
            if (a < 0.0) throw std::invalid_argument("EquationSpec: alpha_T entries must be >= 0");
    }
};

/// Nonlinear heat: G(u) = alpha |u|^{n-1} u (equals alpha u^n for odd n).
inline EquationSpec fractional_heat(int dim, double kappa, int n, double alpha) {
    EquationSpec s;
    s.name = EquationName::FractionalHeat;
    s.kappa = kappa;
    s.dim = dim;
    s.degree_n = n;
    s.alpha_T.assign(n + 1, 0.0);
    s.heat_coefficient = alpha;
    s.validate();
    return s;
}

/// Viscous Burgers variant on the line: u_t - u_xx = d/dx(u^n).
inline EquationSpec burgers(int n) {
    EquationSpec s;
    s.name = EquationName::BurgersN;
    s.kappa = 2.0;
    s.dim = 1;
    s.degree_n = n;
    s.alpha_T.assign(n + 1, 0.0);
    s.alpha_T[0] = 1.0;
    s.validate();
    return s;
}

/// Subcritical quasi-geostrophic scalar: eta_t + div(u eta) + Lambda^kappa eta = 0,
/// u the Riesz-rotated velocity of eta.
inline EquationSpec sqg(double kappa) {
    if (!(kappa > 1.0) || kappa > 2.0)
        throw std::invalid_argument("sqg: kappa must lie in (1, 2]");
    EquationSpec s;
    s.name = EquationName::SQG;
    s.kappa = kappa;
    s.dim = 2;
    s.degree_n = 2;
    s.alpha_T = {1.0, 0.0, 0.0};
    s.validate();
    return s;
}

/// 2D Navier-Stokes in vorticity form: w_t + div(u w) = Laplacian w,
/// u recovered from the streamfunction. `dim` may be set to 3 for the
/// exponent calculators; only d = 2 is simulated.
inline EquationSpec nse_vorticity(int dim = 2) {
    EquationSpec s;
    s.name = EquationName::NSE2DVorticity;
    s.kappa = 2.0;
    s.dim = dim;
    s.degree_n = 2;
    s.alpha_T = {1.0, 0.0, 0.0};
    s.validate();
    return s;
}

/// Cahn-Hilliard with cubic flux: u_t = -Laplacian^2 u + beta Laplacian(u^3).
inline EquationSpec cahn_hilliard_cubic(int dim, double beta) {
    EquationSpec s;
    s.name = EquationName::CahnHilliardCubic;
    s.kappa = 4.0;
    s.dim = dim;
    s.degree_n = 3;
    s.alpha_T = {2.0, 0.0, 0.0, 0.0};
    s.ch_coefficient = beta;
    s.validate();
    return s;
}

/// Cahn-Hilliard with polynomial flux: u_t - Laplacian^2 u = Laplacian f(u),
/// f(u) = sum_{j=1}^{2N-1} a_j u^j with positive leading coefficient.
inline EquationSpec cahn_hilliard_general(int dim, std::vector<double> a) {
    if (a.size() < 3 || a.size() % 2 != 1)
        throw std::invalid_argument(
            "cahn_hilliard_general: need coefficients a_1..a_{2N-1} with N >= 2");
    if (!(a.back() > 0.0))
        throw std::invalid_argument("cahn_hilliard_general: leading coefficient must be positive");
    EquationSpec s;
    s.name = EquationName::CahnHilliardGeneral;
    s.kappa = 4.0;
    s.dim = dim;
    s.degree_n = static_cast<int>(a.size());
    s.alpha_T.assign(s.degree_n + 1, 0.0);
    s.alpha_T[0] = 2.0;
    s.poly_coefficients = std::move(a);
    s.validate();
    return s;
}

/// Smallness functional sum_{j=1}^{2N-2} j |a_j| of the polynomial flux
/// (reported, not enforced).
inline double ch_smallness_sum(const EquationSpec& spec) {
    double s = 0.0;
    for (std::size_t j = 1; j + 1 <= spec.poly_coefficients.size(); ++j)
        s += static_cast<double>(j) * std::abs(spec.poly_coefficients[j - 1]);
    return s;
}

/// Critical Sobolev index of the scale-invariant data space:
/// beta_c = d/p - (kappa - sum alpha_T) / (n - 1).
inline double compute_beta_c(const EquationSpec& spec, double p) {
    if (spec.degree_n < 2)
        throw std::invalid_argument("compute_beta_c: degree must be >= 2");
    if (!(p > 1.0)) throw std::invalid_argument("compute_beta_c: p must exceed 1");
    return spec.dim / p - (spec.kappa - spec.alpha_sum()) / (spec.degree_n - 1);
}

/// Decay exponent of ||Lambda^zeta u(t)||_p predicted for data small in the
/// critical space: (zeta - beta_c) / kappa.
inline double predicted_decay_exponent(const EquationSpec& spec, double zeta, double p) {
    const double bc = compute_beta_c(spec, p);
    if (!(zeta > bc))
        throw std::invalid_argument("predicted_decay_exponent: zeta must exceed beta_c = " +
                                    std::to_string(bc));
    return (zeta - bc) / spec.kappa;
}

struct AdmissibilityReport {
    bool condition_sum = false;  // sum of orders within the dissipation budget
    bool condition_min = false;  // inner orders above the structural lower bound
    double beta_c = 0.0;
    double beta0_lo = 0.0;  // admissible data-regularity interval [lo, hi)
    double beta0_hi = 0.0;
};

/// Evaluates the two structural inequalities on the multiplier orders and
/// the admissible regularity interval beta_c <= beta0 < min{d/p, d/p + min alpha}.
inline AdmissibilityReport check_admissibility(const EquationSpec& spec, double p) {
    AdmissibilityReport r;
    const double total = spec.alpha_sum();
    const double inner_sum = total - spec.alpha_T[0];
    const int n = spec.degree_n;
    const double d = spec.dim;
    r.condition_sum = total <= spec.kappa;
    const double lower_bound =
        std::max(inner_sum / n - d / (n * p), (total - spec.kappa) / (n - 1));
    r.condition_min = spec.min_inner_alpha() > lower_bound;
    r.beta_c = compute_beta_c(spec, p);
    r.beta0_lo = r.beta_c;
    r.beta0_hi = std::min(d / p, d / p + spec.min_inner_alpha());
    return r;
}

namespace detail {

inline void check_physical_range(const std::vector<Complex>& phys, double blowup_threshold) {
    double m = 0.0;
    for (const auto& v : phys) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw blowup_error("nonlinearity produced a non-finite physical value", -1.0);
        m = std::max(m, std::abs(v));
    }
    if (m > blowup_threshold)
        throw blowup_error("physical max " + std::to_string(m) + " exceeded blow-up threshold",
                           -1.0);
}

/// u^n by n-1 successive dealiased binary products; returns coefficients.
inline SpectralField dealiased_power(const SpectralField& u, int n, double rule,
                                     double blowup_threshold) {
    const auto phys_u = inverse_transform_complex(u);
    check_physical_range(phys_u, blowup_threshold);
    if (n == 1) return dealias(u, rule);
    std::vector<Complex> acc = phys_u;
    SpectralField acc_hat(u.grid());
    for (int step = 2; step <= n; ++step) {
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] *= phys_u[i];
        acc_hat = dealias(forward_transform_complex(acc, u.grid()), rule);
        if (step < n) acc = inverse_transform_complex(acc_hat);
    }
    return acc_hat;
}

}  // namespace detail

/// Fourier coefficients of G(u), evaluated pseudo-spectrally with dealiasing
/// after every binary product. Throws blowup_error on non-finite or
/// over-threshold physical values.
inline SpectralField evaluate_nonlinearity(const EquationSpec& spec, const SpectralField& u,
                                           double rule = 2.0 / 3.0,
                                           double blowup_threshold =
                                               std::numeric_limits<double>::infinity()) {
    const Grid& g = u.grid();
    if ((spec.name == EquationName::SQG || spec.name == EquationName::NSE2DVorticity) &&
        g.dim() != 2)
        throw std::invalid_argument("evaluate_nonlinearity: equation requires a 2D grid");
    if (spec.name == EquationName::BurgersN && g.dim() != 1)
        throw std::invalid_argument("evaluate_nonlinearity: Burgers requires a 1D grid");

    switch (spec.name) {
        case EquationName::FractionalHeat: {
            if (spec.degree_n % 2 == 1) {
                SpectralField w = detail::dealiased_power(u, spec.degree_n, rule, blowup_threshold);
                w *= spec.heat_coefficient;
                return w;
            }
            // even degree: |u|^{n-1} u evaluated pointwise; the absolute value
            // is not band-limited, so this path is only approximately dealiased
            auto phys = inverse_transform_complex(u);
            detail::check_physical_range(phys, blowup_threshold);
            for (auto& v : phys) {
                const double a = std::abs(v);
                v *= spec.heat_coefficient * std::pow(a, spec.degree_n - 1);
            }
            return dealias(forward_transform_complex(phys, g), rule);
        }
        case EquationName::BurgersN: {
            const SpectralField w = detail::dealiased_power(u, spec.degree_n, rule, blowup_threshold);
            return apply_multiplier(w, derivative_symbol(0));
        }
        case EquationName::SQG:
        case EquationName::NSE2DVorticity: {
            // velocity components from the scalar, then -div(u * scalar)
            SpectralField u1_hat(g), u2_hat(g);
            for (std::size_t i = 0; i < g.size(); ++i) {
                const auto k = g.wavevector(i);
                const double r2 = k[0] * k[0] + k[1] * k[1];
                if (r2 == 0.0) continue;
                if (spec.name == EquationName::SQG) {
                    const double r = std::sqrt(r2);
                    u1_hat[i] = u[i] * Complex{0.0, -k[1] / r};
                    u2_hat[i] = u[i] * Complex{0.0, k[0] / r};
                } else {
                    u1_hat[i] = u[i] * Complex{0.0, k[1] / r2};
                    u2_hat[i] = u[i] * Complex{0.0, -k[0] / r2};
                }
            }
            const auto phys_s = inverse_transform_complex(u);
            detail::check_physical_range(phys_s, blowup_threshold);
            auto phys_u1 = inverse_transform_complex(u1_hat);
            auto phys_u2 = inverse_transform_complex(u2_hat);
            for (std::size_t i = 0; i < g.size(); ++i) {
                phys_u1[i] *= phys_s[i];
                phys_u2[i] *= phys_s[i];
            }
            const SpectralField flux1 = dealias(forward_transform_complex(phys_u1, g), rule);
            const SpectralField flux2 = dealias(forward_transform_complex(phys_u2, g), rule);
            SpectralField out(g);
            for (std::size_t i = 0; i < g.size(); ++i) {
                const auto k = g.wavevector(i);
                out[i] = -(Complex{0.0, k[0]} * flux1[i] + Complex{0.0, k[1]} * flux2[i]);
            }
            return out;
        }
        case EquationName::CahnHilliardCubic: {
            SpectralField w = detail::dealiased_power(u, 3, rule, blowup_threshold);
            for (std::size_t i = 0; i < g.size(); ++i) {
                const double r = g.wavenumber_norm(i);
                w[i] *= -spec.ch_coefficient * r * r;
            }
            return w;
        }
        case EquationName::CahnHilliardGeneral: {
            const auto phys_u = inverse_transform_complex(u);
            detail::check_physical_range(phys_u, blowup_threshold);
            SpectralField sum(g);
            std::vector<Complex> acc(g.size(), Complex{1.0, 0.0});
            SpectralField acc_hat = dealias(u, rule);
            for (std::size_t j = 1; j <= spec.poly_coefficients.size(); ++j) {
                if (j == 1) {
                    acc_hat = dealias(u, rule);
                } else {
                    acc = inverse_transform_complex(acc_hat);
                    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] *= phys_u[i];
                    acc_hat = dealias(forward_transform_complex(acc, g), rule);
                }
                const double a = spec.poly_coefficients[j - 1];
                if (a != 0.0)
                    for (std::size_t i = 0; i < g.size(); ++i) sum[i] += a * acc_hat[i];
            }
            for (std::size_t i = 0; i < g.size(); ++i) {
                const double r = g.wavenumber_norm(i);
                sum[i] *= -r * r;
            }
            return sum;
        }
    }
    throw std::logic_error("evaluate_nonlinearity: unhandled equation");
}

}  // namespace gevlab
