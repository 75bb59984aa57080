#pragma once

#include <string>
#include <vector>

#include "svort/grid.hpp"
#include "svort/spectral_density.hpp"

namespace svort {

struct NoiseMode {
    int n1, n2;     // integer lattice mode
    double k1, k2;  // physical wavenumber n * (2 pi / L)
    double q;       // per-mode variance weight
};

struct Mat2 {
    double a11 = 0.0, a12 = 0.0, a22 = 0.0;  // symmetric
};

struct RegularityClass {
    bool known = true;
    bool l2loc = false;
    bool c0loc = false;
    double holder = 0.0;  // Holder exponent; 0 means none claimed
    std::string describe() const;
};

// Discrete divergence-free covariance model on the torus.
//
// Active mode set Lambda: integer modes with |n_i| <= N/2 - 1 (Nyquist rows
// excluded so Lambda is symmetric under k -> -k), n != 0, optionally clipped
// to max(|n1|,|n2|) <= max_mode. Per-mode weight
//     q(k) = c_norm * g(|k|) * exp(-|k|^2 / cutoff),
// c_norm = (2 pi / L)^2, so sum_k q(k) is a Riemann sum of the continuum
// integral of g. The Ito corrector is kappa = (1/4) sum q (d=2).
// Immutable after construction; safe for concurrent reads.
class NoiseModel {
public:
    // cutoff <= 0 disables the smooth cutoff; max_mode <= 0 disables clipping.
    NoiseModel(Grid grid, SpectralDensity density, double cutoff = 0.0, int max_mode = 0);

    const Grid& grid() const { return grid_; }
    const SpectralDensity& density() const { return density_; }
    double cutoff() const { return cutoff_; }
    int max_mode() const { return max_mode_; }

    double sum_q() const { return sum_q_; }
    double kappa() const { return 0.25 * sum_q_; }
    std::size_t mode_count() const { return mode_count_; }

    bool in_lattice(int n1, int n2) const;
    // q at an integer mode; 0 outside the lattice
    double q_at(int n1, int n2) const;

    // Full Lambda, materialized once on first use (small-N paths only).
    const std::vector<NoiseMode>& modes() const;
    // One representative per conjugate pair: n2 > 0, or n2 == 0 && n1 > 0.
    const std::vector<NoiseMode>& half_modes() const;

    // Q(z) = sum_k q(k) P_k cos(k . z); Q(0) = 2 kappa I
    Mat2 covariance(double z1, double z2) const;

    // Exact structure function of a unit-time increment along e1:
    //   S(r) = E|W(x) - W(x + r e1)|^2 = 2 Tr[Q(0) - Q(r e1)]
    //        = 2 sum_k q(k) (1 - cos(k1 r)).
    // Evaluated via the column-collapsed sum G(n1) = sum_{n2} q(n), which
    // keeps the cost O(N^2) total + O(N) per separation even at N = 4096.
    std::vector<double> structure_function(const std::vector<double>& r) const;
    double structure_function(double r) const;

    // Residual of the lattice identity 2 kappa |k|^2 = sum_eta q(eta) |P_eta k|^2
    // (exact on symmetric truncations; the absorbing master equation relies on it).
    double kappa_identity_residual(double k1, double k2) const;

    RegularityClass classify_regularity() const;

private:
    template <typename Fn>
    void for_each_mode(Fn&& fn) const;

    Grid grid_;
    SpectralDensity density_;
    double cutoff_;
    int max_mode_;
    int nmax_;  // active |n_i| bound
    double sum_q_ = 0.0;
    std::size_t mode_count_ = 0;
    std::vector<double> collapsed_;  // G(n1), n1 = -nmax..nmax
    mutable std::vector<NoiseMode> modes_cache_;
    mutable std::vector<NoiseMode> half_cache_;
};

} // namespace svort
