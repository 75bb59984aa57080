#include "svort/sampler.hpp"

#include <cmath>
#include <stdexcept>

namespace svort {

NoiseIncrement sample_increment(const NoiseModel& model, double dt, RngStream& rng) {
    if (!(dt > 0.0)) throw std::invalid_argument("sample_increment: dt must be > 0");
    const auto& half = model.half_modes();
    NoiseIncrement inc;
    inc.amp.resize(half.size());
    for (std::size_t i = 0; i < half.size(); ++i) {
        const double sd = std::sqrt(0.5 * half[i].q * dt);
        const double g1 = rng.next_normal();
        const double g2 = rng.next_normal();
        inc.amp[i] = cplx(sd * g1, sd * g2);
    }
    return inc;
}

SpectralVectorField spectral_increment(const NoiseModel& model, const NoiseIncrement& inc) {
    const auto& half = model.half_modes();
    if (inc.amp.size() != half.size())
        throw std::invalid_argument("spectral_increment: amplitude/mode count mismatch");
    SpectralVectorField w{SpectralField(model.grid()), SpectralField(model.grid())};
    for (std::size_t i = 0; i < half.size(); ++i) {
        const auto& m = half[i];
        const double kn = std::hypot(m.k1, m.k2);
        // unit k^perp = (-k2, k1)/|k|; guarantees k . What(k) = 0 exactly
        w.x1.set_mode(m.n1, m.n2, inc.amp[i] * (-m.k2 / kn));
        w.x2.set_mode(m.n1, m.n2, inc.amp[i] * (m.k1 / kn));
    }
    return w;
}

VectorField real_increment(const NoiseModel& model, const NoiseIncrement& inc, Fft& fft) {
    SpectralVectorField w = spectral_increment(model, inc);
    return VectorField{fft.backward(w.x1), fft.backward(w.x2)};
}

StructurePoint empirical_structure_function(const NoiseModel& model, Fft& fft, int m_samples,
                                            int shift_cells, std::uint64_t seed) {
    if (m_samples < 1) throw std::invalid_argument("m_samples must be >= 1");
    const Grid& g = model.grid();
    const int n = g.n;
    StructurePoint out;
    out.r = shift_cells * g.spacing();
    out.exact = model.structure_function(out.r);

    double acc = 0.0;
    for (int s = 0; s < m_samples; ++s) {
        RngStream rng(seed, 0, static_cast<std::uint64_t>(s));
        NoiseIncrement inc = sample_increment(model, 1.0, rng);
        VectorField w = real_increment(model, inc, fft);
        for (int i = 0; i < n; ++i) {
            const int ip = (i + shift_cells) % n;
            for (int j = 0; j < n; ++j) {
                const double d1 = w.x1.at(ip, j) - w.x1.at(i, j);
                const double d2 = w.x2.at(ip, j) - w.x2.at(i, j);
                acc += d1 * d1 + d2 * d2;
            }
        }
    }
    out.empirical = acc / (static_cast<double>(m_samples) * g.size());
    return out;
}

CovariancePoint empirical_covariance(const NoiseModel& model, Fft& fft, int m_samples,
                                     int shift1, int shift2, std::uint64_t seed) {
    if (m_samples < 1) throw std::invalid_argument("m_samples must be >= 1");
    const Grid& g = model.grid();
    const int n = g.n;
    CovariancePoint out;
    out.exact = model.covariance(shift1 * g.spacing(), shift2 * g.spacing());

    double a11 = 0.0, a12 = 0.0, a21 = 0.0, a22 = 0.0;
    for (int s = 0; s < m_samples; ++s) {
        RngStream rng(seed, 0, static_cast<std::uint64_t>(s));
        NoiseIncrement inc = sample_increment(model, 1.0, rng);
        VectorField w = real_increment(model, inc, fft);
        for (int i = 0; i < n; ++i) {
            const int ip = (i + shift1 % n + n) % n;
            for (int j = 0; j < n; ++j) {
                const int jp = (j + shift2 % n + n) % n;
                a11 += w.x1.at(i, j) * w.x1.at(ip, jp);
                a12 += w.x1.at(i, j) * w.x2.at(ip, jp);
                a21 += w.x2.at(i, j) * w.x1.at(ip, jp);
                a22 += w.x2.at(i, j) * w.x2.at(ip, jp);
            }
        }
    }
    const double scale = 1.0 / (static_cast<double>(m_samples) * g.size());
    out.empirical = Mat2{a11 * scale, a12 * scale, a22 * scale};
    out.a21_empirical = a21 * scale;
    return out;
}

} // namespace svort
