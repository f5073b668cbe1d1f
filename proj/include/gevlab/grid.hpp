#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace gevlab {

/// Uniform periodic grid on [0, L)^dim, dim in {1, 2}, N points per axis.
///
/// Fourier modes along an axis carry integer frequencies m in
/// {-N/2+1, ..., N/2} (Nyquist on the positive side); the physical
/// wavenumber is (2*pi/L)*m, so dissipation orders and derivative weights
/// are dimensionally correct for any box size.
class Grid {
  public:
    Grid(int dim, int points_per_dim, double box_length)
        : dim_(dim), n_(points_per_dim), length_(box_length) {
        if (dim != 1 && dim != 2) throw std::invalid_argument("Grid: dim must be 1 or 2");
        if (n_ < 8 || (n_ & (n_ - 1)) != 0)
            throw std::invalid_argument("Grid: points_per_dim must be a power of two >= 8");
        if (!(box_length > 0.0)) throw std::invalid_argument("Grid: box_length must be positive");
    }

    int dim() const { return dim_; }
    int points_per_dim() const { return n_; }
    double box_length() const { return length_; }

    std::size_t size() const {
        std::size_t s = static_cast<std::size_t>(n_);
        return dim_ == 1 ? s : s * s;
    }

    /// Integer frequency for storage index i along one axis.
    int mode(int i) const { return i <= n_ / 2 ? i : i - n_; }

    /// Storage index for integer frequency m (m in {-N/2+1,...,N/2}).
    int index_of_mode(int m) const { return m >= 0 ? m : m + n_; }

    double wavenumber_unit() const { return 2.0 * std::numbers::pi / length_; }

    /// Physical wavevector of the flat index (second component 0 in 1D).
    std::array<double, 2> wavevector(std::size_t flat) const {
        const double u = wavenumber_unit();
        if (dim_ == 1) return {u * mode(static_cast<int>(flat)), 0.0};
        const int ix = static_cast<int>(flat) / n_;
        const int iy = static_cast<int>(flat) % n_;
        return {u * mode(ix), u * mode(iy)};
    }

    std::array<int, 2> mode_vector(std::size_t flat) const {
        if (dim_ == 1) return {mode(static_cast<int>(flat)), 0};
        const int ix = static_cast<int>(flat) / n_;
        const int iy = static_cast<int>(flat) % n_;
        return {mode(ix), mode(iy)};
    }

    std::size_t flat_of_modes(int mx, int my) const {
        if (dim_ == 1) return static_cast<std::size_t>(index_of_mode(mx));
        return static_cast<std::size_t>(index_of_mode(mx)) * n_ + index_of_mode(my);
    }

    /// Flat index of the reflected mode -m (Nyquist maps to itself).
    std::size_t conjugate_index(std::size_t flat) const {
        const auto m = mode_vector(flat);
        const int rx = m[0] == n_ / 2 ? m[0] : -m[0];
        const int ry = m[1] == n_ / 2 ? m[1] : -m[1];
        return flat_of_modes(rx, dim_ == 2 ? ry : 0);
    }

    double wavenumber_norm(std::size_t flat) const {
        const auto k = wavevector(flat);
        return std::hypot(k[0], k[1]);
    }

    /// Largest resolved |k| (Euclidean, corner mode).
    double max_wavenumber() const {
        const double u = wavenumber_unit() * (n_ / 2);
        return dim_ == 1 ? u : u * std::numbers::sqrt2;
    }

    /// Physical sample point of flat physical index.
    std::array<double, 2> point(std::size_t flat) const {
        const double h = length_ / n_;
        if (dim_ == 1) return {h * static_cast<double>(flat), 0.0};
        const int ix = static_cast<int>(flat) / n_;
        const int iy = static_cast<int>(flat) % n_;
        return {h * ix, h * iy};
    }

    double cell_volume() const { return std::pow(length_ / n_, dim_); }
    double box_volume() const { return std::pow(length_, dim_); }

    bool operator==(const Grid& o) const {
        return dim_ == o.dim_ && n_ == o.n_ && length_ == o.length_;
    }

  private:
    int dim_;
    int n_;
    double length_;
};

}  // namespace gevlab
