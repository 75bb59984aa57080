#pragma once

#include <cmath>

#include "svort/field.hpp"

namespace svort {

// Grid quadrature norms: ||f||_p = (h^2 sum |f|^p)^(1/p).
inline double lp_norm(const ScalarField& f, double p) {
    const double h2 = f.grid.spacing() * f.grid.spacing();
    double acc = 0.0;
    if (p == 2.0) {
        for (double v : f.values) acc += v * v;
    } else if (p == 3.0) {
        for (double v : f.values) acc += std::abs(v) * v * v;
    } else if (p == 4.0) {
        for (double v : f.values) acc += (v * v) * (v * v);
    } else {
        for (double v : f.values) acc += std::pow(std::abs(v), p);
    }
    return std::pow(h2 * acc, 1.0 / p);
}

inline double l2_norm(const ScalarField& f) { return lp_norm(f, 2.0); }

inline double grid_mean(const ScalarField& f) {
    double acc = 0.0;
    for (double v : f.values) acc += v;
    return acc / static_cast<double>(f.grid.size());
}

// Spectral sums: each stored column j2 in (0, N/2) represents a conjugate
// pair, hence weight 2; j2 = 0 and j2 = N/2 columns list their mirrors
// explicitly (weight 1).
template <typename WeightFn>
double weighted_spectral_sum(const SpectralField& c, WeightFn&& w) {
    const int n = c.grid.n;
    const double dk = c.grid.dk();
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double k1 = c.grid.mode_of(i) * dk;
        for (int j2 = 0; j2 <= n / 2; ++j2) {
            const double k2 = j2 * dk;
            const double mult = (j2 == 0 || j2 == n / 2) ? 1.0 : 2.0;
            acc += mult * std::norm(c.at(i, j2)) * w(k1, k2);
        }
    }
    return acc;
}

// ||f||_{L2}^2 = L^2 sum |c_k|^2 (Parseval for synthesis coefficients)
inline double l2_norm(const SpectralField& c) {
    const double l2 = c.grid.length * c.grid.length;
    return std::sqrt(l2 * weighted_spectral_sum(c, [](double, double) { return 1.0; }));
}

// Homogeneous Sobolev norm, k = 0 excluded (required for s < 0)
inline double sobolev_norm(const SpectralField& c, double s) {
    const double l2 = c.grid.length * c.grid.length;
    double acc = weighted_spectral_sum(c, [s](double k1, double k2) {
        const double kk = k1 * k1 + k2 * k2;
        return kk == 0.0 ? 0.0 : std::pow(kk, s);
    });
    return std::sqrt(l2 * acc);
}

// sqrt(L^2 sum |c_k|^2 log^{2 gamma}(e + |k|)); the gamma-weighted space of
// the logarithmically improved regularity functional
inline double log_weighted_norm(const SpectralField& c, double gamma) {
    const double l2 = c.grid.length * c.grid.length;
    double acc = weighted_spectral_sum(c, [gamma](double k1, double k2) {
        const double r = std::sqrt(k1 * k1 + k2 * k2);
        return std::pow(std::log(std::exp(1.0) + r), 2.0 * gamma);
    });
    return std::sqrt(l2 * acc);
}

} // namespace svort
