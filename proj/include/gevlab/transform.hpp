#pragma once

#include <fftw3.h>

#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "gevlab/field.hpp"
#include "gevlab/grid.hpp"

namespace gevlab {

namespace detail {

/// FFTW plan pair for one (dim, N) shape. Plans are created with
/// FFTW_UNALIGNED so they can execute on any caller buffer via the
/// new-array interface; execution is reentrant, planning is serialized.
class FftPlanPair {
  public:
    FftPlanPair(int dim, int n) {
        std::vector<std::complex<double>> a(dim == 1 ? n : static_cast<std::size_t>(n) * n);
        std::vector<std::complex<double>> b(a.size());
        auto* pa = reinterpret_cast<fftw_complex*>(a.data());
        auto* pb = reinterpret_cast<fftw_complex*>(b.data());
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        if (dim == 1) {
            fwd_ = fftw_plan_dft_1d(n, pa, pb, FFTW_FORWARD, flags);
            bwd_ = fftw_plan_dft_1d(n, pa, pb, FFTW_BACKWARD, flags);
        } else {
            fwd_ = fftw_plan_dft_2d(n, n, pa, pb, FFTW_FORWARD, flags);
            bwd_ = fftw_plan_dft_2d(n, n, pa, pb, FFTW_BACKWARD, flags);
        }
        if (!fwd_ || !bwd_) throw std::runtime_error("FFTW plan creation failed");
    }
    ~FftPlanPair() {
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(bwd_);
    }
    FftPlanPair(const FftPlanPair&) = delete;
    FftPlanPair& operator=(const FftPlanPair&) = delete;

    void forward(std::complex<double>* in, std::complex<double>* out) const {
        fftw_execute_dft(fwd_, reinterpret_cast<fftw_complex*>(in),
                         reinterpret_cast<fftw_complex*>(out));
    }
    void backward(std::complex<double>* in, std::complex<double>* out) const {
        fftw_execute_dft(bwd_, reinterpret_cast<fftw_complex*>(in),
                         reinterpret_cast<fftw_complex*>(out));
    }

  private:
    fftw_plan fwd_;
    fftw_plan bwd_;
};

inline const FftPlanPair& plan_for(const Grid& grid) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<FftPlanPair>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{grid.dim(), grid.points_per_dim()}];
    if (!slot) slot = std::make_unique<FftPlanPair>(grid.dim(), grid.points_per_dim());
    return *slot;
}

}  // namespace detail

/// DFT of real samples, normalized so a constant field maps to a unit DC
/// coefficient: coeff(k) = (1/N^d) sum_j f(x_j) exp(-i k.x_j). The result
/// is projected onto the exactly Hermitian-symmetric subspace.
inline SpectralField forward_transform(const std::vector<double>& physical, const Grid& grid) {
    if (physical.size() != grid.size())
        throw std::invalid_argument("forward_transform: sample count does not match grid");
    std::vector<Complex> buf(physical.begin(), physical.end());
    std::vector<Complex> out(buf.size());
    detail::plan_for(grid).forward(buf.data(), out.data());
    const double scale = 1.0 / static_cast<double>(grid.size());
    for (auto& c : out) c *= scale;
    SpectralField f(grid, std::move(out));
    f.symmetrize();
    return f;
}

/// Inverse DFT to real samples. Requires Hermitian symmetry; the imaginary
/// residue is asserted below 1e-10 relative before being discarded.
inline std::vector<double> inverse_transform(const SpectralField& field) {
    std::vector<Complex> buf = field.coeffs();
    std::vector<Complex> out(buf.size());
    detail::plan_for(field.grid()).backward(buf.data(), out.data());
    double max_im = 0.0, max_abs = 0.0;
    for (const auto& c : out) {
        max_im = std::max(max_im, std::abs(c.imag()));
        max_abs = std::max(max_abs, std::abs(c));
    }
    if (max_abs > 0.0 && max_im > 1e-10 * max_abs)
        throw std::invalid_argument("inverse_transform: Hermitian symmetry violated beyond tolerance");
    std::vector<double> result(out.size());
    for (std::size_t i = 0; i < out.size(); ++i) result[i] = out[i].real();
    return result;
}

/// Inverse DFT without the reality check, for complex intermediates
/// (e.g. single Riesz components of a velocity).
inline std::vector<Complex> inverse_transform_complex(const SpectralField& field) {
    std::vector<Complex> buf = field.coeffs();
    std::vector<Complex> out(buf.size());
    detail::plan_for(field.grid()).backward(buf.data(), out.data());
    return out;
}

inline SpectralField forward_transform_complex(const std::vector<Complex>& values, const Grid& grid) {
    if (values.size() != grid.size())
        throw std::invalid_argument("forward_transform: sample count does not match grid");
    std::vector<Complex> buf = values;
    std::vector<Complex> out(buf.size());
    detail::plan_for(grid).forward(buf.data(), out.data());
    const double scale = 1.0 / static_cast<double>(grid.size());
    for (auto& c : out) c *= scale;
    return SpectralField(grid, std::move(out));
}

}  // namespace gevlab
