#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "gevlab/grid.hpp"

namespace gevlab {

using Complex = std::complex<double>;

/// Fourier coefficients of a real scalar field on a periodic grid.
///
/// Invariant: coeff(-k) == conj(coeff(k)) for all represented modes; the
/// Nyquist rows (which are their own reflection) are real after
/// symmetrize(). Coefficients are normalized so that
/// f(x) = sum_k coeff(k) exp(i k.x).
class SpectralField {
  public:
    explicit SpectralField(const Grid& grid) : grid_(grid), coeffs_(grid.size(), Complex{0.0, 0.0}) {}

    SpectralField(const Grid& grid, std::vector<Complex> coeffs)
        : grid_(grid), coeffs_(std::move(coeffs)) {
        if (coeffs_.size() != grid_.size())
            throw std::invalid_argument("SpectralField: coefficient count does not match grid");
    }

    const Grid& grid() const { return grid_; }
    std::size_t size() const { return coeffs_.size(); }

    Complex& operator[](std::size_t i) { return coeffs_[i]; }
    const Complex& operator[](std::size_t i) const { return coeffs_[i]; }

    std::vector<Complex>& coeffs() { return coeffs_; }
    const std::vector<Complex>& coeffs() const { return coeffs_; }

    Complex at_mode(int mx, int my = 0) const { return coeffs_[grid_.flat_of_modes(mx, my)]; }
    void set_mode(int mx, int my, Complex v) { coeffs_[grid_.flat_of_modes(mx, my)] = v; }

    /// Project onto the Hermitian-symmetric subspace: average each (k, -k)
    /// pair; self-conjugate (Nyquist-type) modes become real.
    void symmetrize() {
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            const std::size_t j = grid_.conjugate_index(i);
            if (j == i) {
                coeffs_[i] = Complex{coeffs_[i].real(), 0.0};
            } else if (j > i) {
                const Complex avg = 0.5 * (coeffs_[i] + std::conj(coeffs_[j]));
                coeffs_[i] = avg;
                coeffs_[j] = std::conj(avg);
            }
        }
    }

    /// Max |coeff(k) - conj(coeff(-k))| over all modes.
    double symmetry_defect() const {
        double d = 0.0;
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            const std::size_t j = grid_.conjugate_index(i);
            d = std::max(d, std::abs(coeffs_[i] - std::conj(coeffs_[j])));
        }
        return d;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
        return m;
    }

    bool all_finite() const {
        for (const auto& c : coeffs_)
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
        return true;
    }

    /// Discrete L2 norm over the box, exact by Plancherel in this
    /// normalization: ||f||^2 = L^d * sum_k |coeff(k)|^2.
    double l2_norm() const {
        double s = 0.0;
        for (const auto& c : coeffs_) s += std::norm(c);
        return std::sqrt(grid_.box_volume() * s);
    }

    SpectralField& operator+=(const SpectralField& o) {
        check_same_grid(o);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        return *this;
    }
    SpectralField& operator-=(const SpectralField& o) {
        check_same_grid(o);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
        return *this;
    }
    SpectralField& operator*=(double a) {
        for (auto& c : coeffs_) c *= a;
        return *this;
    }

    friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
    friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
    friend SpectralField operator*(double a, SpectralField f) { return f *= a; }

    friend double l2_distance(const SpectralField& a, const SpectralField& b) {
        a.check_same_grid(b);
        double s = 0.0;
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) s += std::norm(a.coeffs_[i] - b.coeffs_[i]);
        return std::sqrt(a.grid_.box_volume() * s);
    }

  private:
    void check_same_grid(const SpectralField& o) const {
        if (!(grid_ == o.grid_)) throw std::invalid_argument("SpectralField: grid mismatch");
    }

    Grid grid_;
    std::vector<Complex> coeffs_;
};

}  // namespace gevlab
