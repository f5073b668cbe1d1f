#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "gevlab/field.hpp"
#include "gevlab/grid.hpp"
#include "gevlab/norms.hpp"
#include "gevlab/transform.hpp"

namespace gevlab {

namespace detail {

// C-infinity step: 0 at x<=0, 1 at x>=1.
inline double smooth_step(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / x);
    const double b = std::exp(-1.0 / (1.0 - x));
    return a / (a + b);
}

// Radial low-pass profile: 1 on [0, 1/2], 0 on [1, inf), smooth between.
inline double lp_phi(double r) { return smooth_step(2.0 * (1.0 - r)); }

// Annular bump psi(r) = phi(r/2) - phi(r), supported on (1/2, 2), psi(1) = 1.
inline double lp_psi(double r) { return lp_phi(r / 2.0) - lp_phi(r); }

}  // namespace detail

/// Dyadic filter bank: block j holds psi(2^-j |k|) sampled on the grid, plus
/// the low-pass remainder chi. The filters sum to 1 at every resolved mode
/// (renormalized numerically after construction).
class LPBank {
  public:
    explicit LPBank(const Grid& grid) : grid_(grid) {
        const double k_min = grid.wavenumber_unit();
        const double k_max = grid.max_wavenumber();
        j_min_ = static_cast<int>(std::floor(std::log2(k_min)));
        j_max_ = static_cast<int>(std::ceil(std::log2(k_max)));
        const int nblocks = j_max_ - j_min_ + 1;
        blocks_.assign(nblocks, std::vector<double>(grid.size(), 0.0));
        lowpass_.assign(grid.size(), 0.0);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double r = grid.wavenumber_norm(i);
            lowpass_[i] = detail::lp_phi(std::ldexp(r, -j_min_));
            double total = lowpass_[i];
            for (int j = j_min_; j <= j_max_; ++j) {
                const double v = detail::lp_psi(std::ldexp(r, -j));
                blocks_[j - j_min_][i] = v;
                total += v;
            }
            // exact partition of unity at each mode
            if (total > 0.0) {
                lowpass_[i] /= total;
                for (auto& blk : blocks_) blk[i] /= total;
            }
        }
    }

    const Grid& grid() const { return grid_; }
    int j_min() const { return j_min_; }
    int j_max() const { return j_max_; }

    const std::vector<double>& block_filter(int j) const {
        check_range(j);
        return blocks_[j - j_min_];
    }
    const std::vector<double>& lowpass_filter() const { return lowpass_; }

    double partition_defect() const {
        double worst = 0.0;
        for (std::size_t i = 0; i < grid_.size(); ++i) {
            double total = lowpass_[i];
            for (const auto& blk : blocks_) total += blk[i];
            worst = std::max(worst, std::abs(total - 1.0));
        }
        return worst;
    }

  private:
    void check_range(int j) const {
        if (j < j_min_ || j > j_max_)
            throw std::invalid_argument("LPBank: block index " + std::to_string(j) +
                                        " outside [" + std::to_string(j_min_) + ", " +
                                        std::to_string(j_max_) + "]");
    }

    Grid grid_;
    int j_min_ = 0;
    int j_max_ = 0;
    std::vector<std::vector<double>> blocks_;
    std::vector<double> lowpass_;
};

inline LPBank lp_build(const Grid& grid) { return LPBank(grid); }

/// Dyadic block j of a field.
inline SpectralField lp_block(const SpectralField& field, const LPBank& bank, int j) {
    if (!(field.grid() == bank.grid())) throw std::invalid_argument("lp_block: grid mismatch");
    const auto& filt = bank.block_filter(j);
    SpectralField out(field.grid());
    for (std::size_t i = 0; i < field.size(); ++i) out[i] = field[i] * filt[i];
    return out;
}

/// Low-frequency remainder below the first block.
inline SpectralField lp_lowpass(const SpectralField& field, const LPBank& bank) {
    if (!(field.grid() == bank.grid())) throw std::invalid_argument("lp_lowpass: grid mismatch");
    const auto& filt = bank.lowpass_filter();
    SpectralField out(field.grid());
    for (std::size_t i = 0; i < field.size(); ++i) out[i] = field[i] * filt[i];
    return out;
}

/// Homogeneous dyadic square-function norm
/// || (sum_j 2^{2 j alpha} |block_j f|^2)^{1/2} ||_{L^p}.
inline double triebel_lizorkin_norm(const SpectralField& field, double alpha, double p,
                                    const LPBank& bank) {
    if (!(field.grid() == bank.grid()))
        throw std::invalid_argument("triebel_lizorkin_norm: grid mismatch");
    const double mean_mag = std::abs(field[field.grid().flat_of_modes(0, 0)]);
    if (mean_mag > 1e-12 * std::max(field.max_abs(), 1e-300))
        throw std::invalid_argument("triebel_lizorkin_norm: field must be mean-zero");
    const Grid& g = field.grid();
    std::vector<double> sq(g.size(), 0.0);
    for (int j = bank.j_min(); j <= bank.j_max(); ++j) {
        const auto block = inverse_transform(lp_block(field, bank, j));
        const double w = std::exp2(2.0 * j * alpha);
        for (std::size_t i = 0; i < sq.size(); ++i) sq[i] += w * block[i] * block[i];
    }
    for (auto& v : sq) v = std::sqrt(v);
    return physical_lp_norm(sq, g, p);
}

/// Paraproduct split of uv into (low u * high v, low v * high u, diagonal):
/// the three physical-space parts sum exactly to the pointwise product uv.
struct BonyParts {
    std::vector<double> low_high;   // T_u v
    std::vector<double> high_low;   // T_v u
    std::vector<double> diagonal;   // R(u, v)
};

inline BonyParts bony_split(const SpectralField& u, const SpectralField& v, const LPBank& bank) {
    if (!(u.grid() == bank.grid()) || !(v.grid() == bank.grid()))
        throw std::invalid_argument("bony_split: grid mismatch");
    const Grid& g = u.grid();
    // extended block list: index 0 is the low-pass remainder, then j_min..j_max
    const int nb = bank.j_max() - bank.j_min() + 2;
    std::vector<std::vector<double>> bu(nb), bv(nb);
    bu[0] = inverse_transform(lp_lowpass(u, bank));
    bv[0] = inverse_transform(lp_lowpass(v, bank));
    for (int j = bank.j_min(); j <= bank.j_max(); ++j) {
        bu[j - bank.j_min() + 1] = inverse_transform(lp_block(u, bank, j));
        bv[j - bank.j_min() + 1] = inverse_transform(lp_block(v, bank, j));
    }
    BonyParts parts;
    parts.low_high.assign(g.size(), 0.0);
    parts.high_low.assign(g.size(), 0.0);
    parts.diagonal.assign(g.size(), 0.0);
    // running partial sums S_{b-2} of u and of v
    std::vector<double> su(g.size(), 0.0), sv(g.size(), 0.0);
    for (int b = 0; b < nb; ++b) {
        if (b >= 2) {
            for (std::size_t i = 0; i < g.size(); ++i) {
                su[i] += bu[b - 2][i];
                sv[i] += bv[b - 2][i];
            }
        }
        for (std::size_t i = 0; i < g.size(); ++i) {
            parts.low_high[i] += su[i] * bv[b][i];
            parts.high_low[i] += sv[i] * bu[b][i];
        }
        for (int bp = std::max(0, b - 1); bp <= std::min(nb - 1, b + 1); ++bp)
            for (std::size_t i = 0; i < g.size(); ++i)
                parts.diagonal[i] += bu[b][i] * bv[bp][i];
    }
    return parts;
}

}  // namespace gevlab
