#pragma once

#include <functional>

#include "svort/fft.hpp"
#include "svort/field.hpp"

namespace svort {

// Square 2/3-rule limit: modes with max(|n1|,|n2|) > floor((N-1)/3) are
// dropped, so quadratic products of retained modes cannot alias back onto
// retained ones.
int dealias_limit(const Grid& g);
void dealias_23(SpectralField& f);

// Zeroes the Nyquist row/column (mode set stays symmetric under k -> -k,
// which keeps spectral derivatives real and well defined).
void drop_nyquist(SpectralField& f);

// In-place radial Fourier multiplier phi(k) -> m(|k|) phi(k).
void apply_radial_multiplier(SpectralField& f, const std::function<double(double)>& m);

// Logarithmic regularization: symbol log^{-gamma}(e + |k|); identity at k=0.
SpectralField mult_t_gamma(SpectralField f, double gamma);

// Fractional Laplacian: symbol |k|^beta; annihilates the mean.
SpectralField frac_laplacian(SpectralField f, double beta);

// u = curl^{-1} omega: u_hat(k) = -i k_perp / |k|^2 omega_hat(k), k_perp =
// (-k2, k1), u_hat(0) = 0. Sign fixed so curl u = d1 u2 - d2 u1 = omega.
// Requires zero-mean omega.
SpectralVectorField biot_savart(const SpectralField& omega);

SpectralField curl(const SpectralVectorField& v);

// Projection onto divergence-free fields: v_hat -> (I - k k^T/|k|^2) v_hat.
void leray_project(SpectralVectorField& v);

double divergence_max(const SpectralVectorField& v);  // max_k |k . v_hat(k)|

enum class TransportForm { Conservative, Skew };

// Pseudo-spectral transport of omega by a divergence-free v:
//   Conservative: div(v omega); Skew: (div(v omega) + v . grad omega) / 2.
// Products are formed on the grid; the result has Nyquist content dropped and
// is 2/3-truncated when dealias is set. With Skew and a Nyquist-free omega,
// <omega, T> = 0 holds exactly (summation by parts is exact for trig
// interpolants), which the pathwise L2 balance relies on.
SpectralField transport_term(const SpectralVectorField& v, const SpectralField& omega,
                             Fft& fft, TransportForm form, bool dealias);

// Spectral Hdot^{-1} norm; requires zero mean (mean mode carries no finite
// Hdot^{-1} mass).
double h_minus1_norm(const SpectralField& f);

} // namespace svort
