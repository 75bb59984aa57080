#include "svort/operators.hpp"

#include <cmath>
#include <stdexcept>

#include "svort/norms.hpp"

namespace svort {

namespace {

// Applies fn(k1, k2, coeff&) over the r2c storage. k uses the signed mode
// convention; the Nyquist row i = N/2 maps to mode -N/2.
template <typename Fn>
void for_each_coeff(SpectralField& f, Fn&& fn) {
    const int n = f.grid.n;
    const double dk = f.grid.dk();
    for (int i = 0; i < n; ++i) {
        const double k1 = f.grid.mode_of(i) * dk;
        for (int j2 = 0; j2 <= n / 2; ++j2) {
            fn(k1, j2 * dk, f.at(i, j2));
        }
    }
}

} // namespace

int dealias_limit(const Grid& g) { return (g.n - 1) / 3; }

void dealias_23(SpectralField& f) {
    const int n = f.grid.n;
    const int kmax = dealias_limit(f.grid);
    for (int i = 0; i < n; ++i) {
        const int n1 = f.grid.mode_of(i);
        for (int j2 = 0; j2 <= n / 2; ++j2) {
            if (std::abs(n1) > kmax || j2 > kmax) f.at(i, j2) = 0.0;
        }
    }
}

void drop_nyquist(SpectralField& f) {
    const int n = f.grid.n;
    for (int j2 = 0; j2 <= n / 2; ++j2) f.at(n / 2, j2) = 0.0;
    for (int i = 0; i < n; ++i) f.at(i, n / 2) = 0.0;
}

void apply_radial_multiplier(SpectralField& f, const std::function<double(double)>& m) {
    for_each_coeff(f, [&m](double k1, double k2, cplx& c) { c *= m(std::hypot(k1, k2)); });
}

SpectralField mult_t_gamma(SpectralField f, double gamma) {
    if (!(gamma >= 0.0)) throw std::invalid_argument("mult_t_gamma: gamma must be >= 0");
    for_each_coeff(f, [gamma](double k1, double k2, cplx& c) {
        c *= std::pow(std::log(std::exp(1.0) + std::hypot(k1, k2)), -gamma);
    });
    return f;
}

SpectralField frac_laplacian(SpectralField f, double beta) {
    if (!(beta > 0.0 && beta < 2.0)) throw std::invalid_argument("frac_laplacian: beta must be in (0,2)");
    for_each_coeff(f, [beta](double k1, double k2, cplx& c) {
        const double kk = k1 * k1 + k2 * k2;
        c = kk == 0.0 ? cplx(0.0) : c * std::pow(kk, 0.5 * beta);
    });
    return f;
}

SpectralVectorField biot_savart(const SpectralField& omega) {
    double cmax = 0.0;
    for (const cplx& c : omega.coeff) cmax = std::max(cmax, std::abs(c));
    if (std::abs(omega.at(0, 0)) > 1e-12 * std::max(cmax, 1e-300))
        throw std::invalid_argument("biot_savart: vorticity must have zero mean");

    SpectralVectorField u{SpectralField(omega.grid), SpectralField(omega.grid)};
    const int n = omega.grid.n;
    const double dk = omega.grid.dk();
    for (int i = 0; i < n; ++i) {
        const double k1 = omega.grid.mode_of(i) * dk;
        for (int j2 = 0; j2 <= n / 2; ++j2) {
            const double k2 = j2 * dk;
            const double kk = k1 * k1 + k2 * k2;
            if (kk == 0.0) continue;
            const cplx w = omega.at(i, j2);
            // u_hat = -i k_perp / |k|^2 w, k_perp = (-k2, k1)
            const cplx iw(-w.imag(), w.real());  // i*w
            u.x1.at(i, j2) = iw * (k2 / kk);
            u.x2.at(i, j2) = iw * (-k1 / kk);
        }
    }
    return u;
}

SpectralField curl(const SpectralVectorField& v) {
    SpectralField w(v.x1.grid);
    const int n = w.grid.n;
    const double dk = w.grid.dk();
    for (int i = 0; i < n; ++i) {
        const double k1 = w.grid.mode_of(i) * dk;
        for (int j2 = 0; j2 <= n / 2; ++j2) {
            const double k2 = j2 * dk;
            const cplx z = k1 * v.x2.at(i, j2) - k2 * v.x1.at(i, j2);
            w.at(i, j2) = cplx(-z.imag(), z.real());  // i*(k1 v2 - k2 v1)
        }
    }
    return w;
}

void leray_project(SpectralVectorField& v) {
    const int n = v.x1.grid.n;
    const double dk = v.x1.grid.dk();
    for (int i = 0; i < n; ++i) {
        const double k1 = v.x1.grid.mode_of(i) * dk;
        for (int j2 = 0; j2 <= n / 2; ++j2) {
            const double k2 = j2 * dk;
            const double kk = k1 * k1 + k2 * k2;
            if (kk == 0.0) continue;
            const cplx dot = (k1 * v.x1.at(i, j2) + k2 * v.x2.at(i, j2)) / kk;
            v.x1.at(i, j2) -= dot * k1;
            v.x2.at(i, j2) -= dot * k2;
        }
    }
}

double divergence_max(const SpectralVectorField& v) {
    double worst = 0.0;
    const int n = v.x1.grid.n;
    const double dk = v.x1.grid.dk();
    for (int i = 0; i < n; ++i) {
        const double k1 = v.x1.grid.mode_of(i) * dk;
        for (int j2 = 0; j2 <= n / 2; ++j2) {
            const double k2 = j2 * dk;
            worst = std::max(worst, std::abs(k1 * v.x1.at(i, j2) + k2 * v.x2.at(i, j2)));
        }
    }
    return worst;
}

SpectralField transport_term(const SpectralVectorField& v, const SpectralField& omega,
                             Fft& fft, TransportForm form, bool dealias) {
    const Grid& g = omega.grid;
    const int sz = static_cast<int>(g.size());

    ScalarField w = fft.backward(omega);
    ScalarField v1 = fft.backward(v.x1);
    ScalarField v2 = fft.backward(v.x2);

    // conservative part: div(v w) via spectral derivative of grid fluxes
    ScalarField flux1(g), flux2(g);
    for (int idx = 0; idx < sz; ++idx) {
        flux1.values[idx] = v1.values[idx] * w.values[idx];
        flux2.values[idx] = v2.values[idx] * w.values[idx];
    }
    SpectralField f1 = fft.forward(flux1);
    SpectralField f2 = fft.forward(flux2);

    SpectralField out(g);
    const int n = g.n;
    const double dk = g.dk();
    for (int i = 0; i < n; ++i) {
        const double k1 = g.mode_of(i) * dk;
        for (int j2 = 0; j2 <= n / 2; ++j2) {
            const double k2 = j2 * dk;
            const cplx z = k1 * f1.at(i, j2) + k2 * f2.at(i, j2);
            out.at(i, j2) = cplx(-z.imag(), z.real());  // i k . flux_hat
        }
    }

    if (form == TransportForm::Skew) {
        // advective part: v . grad w on the grid
        SpectralField d1 = omega, d2 = omega;
        for_each_coeff(d1, [](double k1, double, cplx& c) { c = cplx(-c.imag() * k1, c.real() * k1); });
        for_each_coeff(d2, [](double, double k2, cplx& c) { c = cplx(-c.imag() * k2, c.real() * k2); });
        ScalarField g1 = fft.backward(d1);
        ScalarField g2 = fft.backward(d2);
        ScalarField adv(g);
        for (int idx = 0; idx < sz; ++idx)
            adv.values[idx] = v1.values[idx] * g1.values[idx] + v2.values[idx] * g2.values[idx];
        SpectralField a = fft.forward(adv);
        for (std::size_t idx = 0; idx < out.coeff.size(); ++idx)
            out.coeff[idx] = 0.5 * (out.coeff[idx] + a.coeff[idx]);
    }

    drop_nyquist(out);
    if (dealias) dealias_23(out);
    out.at(0, 0) = 0.0;  // transport never moves the mean
    return out;
}

double h_minus1_norm(const SpectralField& f) {
    double cmax = 0.0;
    for (const cplx& c : f.coeff) cmax = std::max(cmax, std::abs(c));
    if (std::abs(f.at(0, 0)) > 1e-12 * std::max(cmax, 1e-300))
        throw std::invalid_argument("h_minus1_norm: field must have zero mean");
    return sobolev_norm(f, -1.0);
}

} // namespace svort
