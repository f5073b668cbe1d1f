#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "gevlab/equations.hpp"
#include "gevlab/field.hpp"
#include "gevlab/grid.hpp"

namespace gevlab {
namespace oracle {

/// Exact convolution of two coefficient sets by direct mode-pair summation
/// (no transforms, no dealiasing). Mode sums that leave the representable
/// band are dropped, so inputs must be band-limited enough that the true
/// product fits on the grid. O(nonzero(a) * nonzero(b)).
inline SpectralField direct_convolution(const SpectralField& a, const SpectralField& b) {
    const Grid& g = a.grid();
    const int half = g.points_per_dim() / 2;
    struct Entry {
        int mx, my;
        Complex v;
    };
    auto collect = [&](const SpectralField& f) {
        std::vector<Entry> out;
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (f[i] != Complex{0.0, 0.0}) {
                const auto m = g.mode_vector(i);
                out.push_back({m[0], m[1], f[i]});
            }
        }
        return out;
    };
    const auto ea = collect(a);
    const auto eb = collect(b);
    SpectralField c(g);
    for (const auto& pa : ea) {
        for (const auto& pb : eb) {
            const int mx = pa.mx + pb.mx;
            const int my = pa.my + pb.my;
            if (mx < -half + 1 || mx > half) continue;
            if (g.dim() == 2 && (my < -half + 1 || my > half)) continue;
            c[g.flat_of_modes(mx, g.dim() == 2 ? my : 0)] += pa.v * pb.v;
        }
    }
    return c;
}

inline SpectralField convolution_power(const SpectralField& u, int n) {
    SpectralField acc = u;
    for (int i = 2; i <= n; ++i) acc = direct_convolution(acc, u);
    return acc;
}

/// Reference evaluation of G(u) by direct convolutions and inline symbol
/// formulas; shares nothing with the transform-based pipeline. Only the
/// polynomial nonlinearities are representable this way (the even-degree
/// |u|^{n-1} u heat variant is not).
inline SpectralField nonlinearity(const EquationSpec& spec, const SpectralField& u) {
    const Grid& g = u.grid();
    switch (spec.name) {
        case EquationName::FractionalHeat: {
            if (spec.degree_n % 2 == 0)
                throw std::invalid_argument(
                    "oracle::nonlinearity: even-degree heat nonlinearity has no convolution form");
            SpectralField w = convolution_power(u, spec.degree_n);
            w *= spec.heat_coefficient;
            return w;
        }
        case EquationName::BurgersN: {
            SpectralField w = convolution_power(u, spec.degree_n);
            for (std::size_t i = 0; i < w.size(); ++i)
                w[i] *= Complex{0.0, g.wavevector(i)[0]};
            return w;
        }
        case EquationName::SQG:
        case EquationName::NSE2DVorticity: {
            SpectralField u1(g), u2(g);
            for (std::size_t i = 0; i < g.size(); ++i) {
                const auto k = g.wavevector(i);
                const double r2 = k[0] * k[0] + k[1] * k[1];
                if (r2 == 0.0) continue;
                if (spec.name == EquationName::SQG) {
                    const double r = std::sqrt(r2);
                    u1[i] = u[i] * Complex{0.0, -k[1] / r};
                    u2[i] = u[i] * Complex{0.0, k[0] / r};
                } else {
                    u1[i] = u[i] * Complex{0.0, k[1] / r2};
                    u2[i] = u[i] * Complex{0.0, -k[0] / r2};
                }
            }
            const SpectralField f1 = direct_convolution(u1, u);
            const SpectralField f2 = direct_convolution(u2, u);
            SpectralField out(g);
            for (std::size_t i = 0; i < g.size(); ++i) {
                const auto k = g.wavevector(i);
                out[i] = -(Complex{0.0, k[0]} * f1[i] + Complex{0.0, k[1]} * f2[i]);
            }
            return out;
        }
        case EquationName::CahnHilliardCubic: {
            SpectralField w = convolution_power(u, 3);
            for (std::size_t i = 0; i < w.size(); ++i) {
                const double r = g.wavenumber_norm(i);
                w[i] *= -spec.ch_coefficient * r * r;
            }
            return w;
        }
        case EquationName::CahnHilliardGeneral: {
            SpectralField sum(g);
            SpectralField pw = u;
            for (std::size_t j = 1; j <= spec.poly_coefficients.size(); ++j) {
                if (j > 1) pw = direct_convolution(pw, u);
                const double a = spec.poly_coefficients[j - 1];
                if (a != 0.0)
                    for (std::size_t i = 0; i < g.size(); ++i) sum[i] += a * pw[i];
            }
            for (std::size_t i = 0; i < g.size(); ++i) {
                const double r = g.wavenumber_norm(i);
                sum[i] *= -r * r;
            }
            return sum;
        }
    }
    throw std::logic_error("oracle::nonlinearity: unhandled equation");
}

}  // namespace oracle
}  // namespace gevlab
