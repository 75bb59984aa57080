#pragma once

#include <cstdint>
#include <vector>

#include "svort/fft.hpp"
#include "svort/field.hpp"
#include "svort/noise_model.hpp"
#include "svort/rng.hpp"

namespace svort {

// One Brownian increment of the divergence-free noise, in its minimal
// representation: a complex scalar amplitude per conjugate-pair representative
// (aligned with model.half_modes()). The full spectral field is
//   What(k) = amp_k * kperp_hat,  What(-k) = conj(What(k)),
// which gives E[What(k) (x) What(k)*] = dt q(k) P_k.
struct NoiseIncrement {
    std::vector<cplx> amp;
};

// Draws one increment with variance E|amp_k|^2 = q(k) dt. Consumes exactly
// two normals per representative, in half_modes() order, so a given stream
// state reproduces the increment bit-for-bit.
NoiseIncrement sample_increment(const NoiseModel& model, double dt, RngStream& rng);

// Expands the amplitude vector into r2c spectral storage for both components.
SpectralVectorField spectral_increment(const NoiseModel& model, const NoiseIncrement& inc);

// Real-space velocity increment (two c2r transforms).
VectorField real_increment(const NoiseModel& model, const NoiseIncrement& inc, Fft& fft);

// Empirical vs exact second-order structure function at separation
// r = shift_cells * h along e1, using unit-time increments averaged over the
// grid and m_samples draws. exact = 2 Tr[Q(0) - Q(r e1)].
struct StructurePoint {
    double r = 0.0;
    double empirical = 0.0;
    double exact = 0.0;
};
StructurePoint empirical_structure_function(const NoiseModel& model, Fft& fft, int m_samples,
                                            int shift_cells, std::uint64_t seed);

// Empirical covariance E[W(x) . W(x+z)] at a grid-aligned offset, averaged
// over x and samples; companion exact value from the spectral sum.
struct CovariancePoint {
    Mat2 empirical;
    Mat2 exact;
    double a21_empirical = 0.0;  // off-diagonal transpose entry, E[W2(x) W1(x+z)]
};
CovariancePoint empirical_covariance(const NoiseModel& model, Fft& fft, int m_samples,
                                     int shift1, int shift2, std::uint64_t seed);

} // namespace svort
