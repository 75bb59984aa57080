#include "svort/fractional_split.hpp"

#include <cmath>
#include <stdexcept>

#include "svort/fft.hpp"
#include "svort/rng.hpp"

namespace svort {

namespace {

constexpr int kImages = 16;  // |m|_inf bound of the direct image sum

// 20-node Gauss-Legendre rule on [-1, 1]
constexpr double kGl20[20][2] = {
    {-0.99312859918509488, 0.017614007139153273},
    {-0.96397192727791381, 0.040601429800386217},
    {-0.91223442825132584, 0.062672048334109443},
    {-0.83911697182221878, 0.083276741576704671},
    {-0.7463319064601508, 0.10193011981724026},
    {-0.63605368072651502, 0.11819453196151825},
    {-0.51086700195082713, 0.13168863844917653},
    {-0.37370608871541955, 0.14209610931838187},
    {-0.2277858511416451, 0.14917298647260366},
    {-0.076526521133497338, 0.15275338713072578},
    {0.076526521133497338, 0.15275338713072578},
    {0.2277858511416451, 0.14917298647260366},
    {0.37370608871541955, 0.14209610931838187},
    {0.51086700195082713, 0.13168863844917653},
    {0.63605368072651502, 0.11819453196151825},
    {0.7463319064601508, 0.10193011981724026},
    {0.83911697182221878, 0.083276741576704671},
    {0.91223442825132584, 0.062672048334109443},
    {0.96397192727791381, 0.040601429800386217},
    {0.99312859918509488, 0.017614007139153273},
};

double ring_integral(double beta) {
    // int_0^{pi/4} cos(t)^beta dt
    const double a = 0.0, b = kPi / 4.0;
    double acc = 0.0;
    for (const auto& nw : kGl20)
        acc += nw[1] * std::pow(std::cos(0.5 * (b - a) * nw[0] + 0.5 * (b + a)), beta);
    return 0.5 * (b - a) * acc;
}

// Phi(z) = K_per(z) - K_min(z): direct image sum plus the analytic tail of
// the image rings beyond the summed block. By 8-fold symmetry the tail is
// (8/beta) W^{-beta} I(beta) / L^2 with W = (kImages + 1/2) L; dipole terms
// cancel by lattice symmetry, so the tail is z-independent to high order.
double phi_at(double z1, double z2, double beta, double length) {
    const double ex = -(2.0 + beta) / 2.0;
    double acc = 0.0;
    for (int m1 = -kImages; m1 <= kImages; ++m1) {
        const double d1 = z1 + length * m1;
        for (int m2 = -kImages; m2 <= kImages; ++m2) {
            if (m1 == 0 && m2 == 0) continue;
            const double d2 = z2 + length * m2;
            acc += std::pow(d1 * d1 + d2 * d2, ex);
        }
    }
    const double w = (kImages + 0.5) * length;
    return acc + (8.0 / beta) * std::pow(w, -beta) * ring_integral(beta) / (length * length);
}

double wrapped(int idx, int n, double h) { return (idx < n / 2 ? idx : idx - n) * h; }

} // namespace

double frac_laplacian_constant(double beta) {
    if (!(beta > 0.0 && beta < 2.0))
        throw std::invalid_argument("frac_laplacian_constant: beta must be in (0,2)");
    return std::pow(4.0, 0.5 * beta) * std::tgamma(1.0 + 0.5 * beta) /
           (kPi * std::abs(std::tgamma(-0.5 * beta)));
}

FracSplit::FracSplit(const Grid& g, double beta, double R, double constant)
    : grid_(g), beta_(beta), radius_(R) {
    if (!(beta > 0.0 && beta < 2.0)) throw std::invalid_argument("frac split: beta must be in (0,2)");
    const double h = g.spacing();
    if (!(R > h)) throw std::invalid_argument("frac split: R must exceed the grid spacing");
    if (!(R <= 0.5 * g.length))
        throw std::invalid_argument("frac split: R must not exceed L/2 (split meaningless beyond the cell)");
    constant_ = constant > 0.0 ? constant : frac_laplacian_constant(beta);

    const int n = g.n;
    const double r0 = h / std::sqrt(kPi);
    ccorr_ = constant_ * kPi * std::pow(r0, 2.0 - beta) / (2.0 * (2.0 - beta));

    // smooth image part, direct for N <= 256, else off a 257^2 coarse grid
    std::vector<double> phi(g.size());
    if (n <= 256) {
        for (int i = 0; i < n; ++i) {
            const double z1 = wrapped(i, n, h);
            for (int j = 0; j < n; ++j)
                phi[static_cast<std::size_t>(i) * n + j] = phi_at(z1, wrapped(j, n, h), beta, g.length);
        }
    } else {
        const int mc = 256;
        const double dc = g.length / mc;
        std::vector<double> coarse(static_cast<std::size_t>(mc + 1) * (mc + 1));
        for (int a = 0; a <= mc; ++a) {
            const double u = -0.5 * g.length + a * dc;
            for (int b = 0; b <= mc; ++b)
                coarse[static_cast<std::size_t>(a) * (mc + 1) + b] =
                    phi_at(u, -0.5 * g.length + b * dc, beta, g.length);
        }
        auto interp = [&](double z1, double z2) {
            const double x = (z1 + 0.5 * g.length) / dc;
            const double y = (z2 + 0.5 * g.length) / dc;
            int a = static_cast<int>(x), b = static_cast<int>(y);
            a = std::min(a, mc - 1);
            b = std::min(b, mc - 1);
            const double tx = x - a, ty = y - b;
            const double* row = coarse.data() + static_cast<std::size_t>(a) * (mc + 1) + b;
            const double v00 = row[0], v01 = row[1];
            const double v10 = row[mc + 1], v11 = row[mc + 2];
            return (1 - tx) * ((1 - ty) * v00 + ty * v01) + tx * ((1 - ty) * v10 + ty * v11);
        };
        for (int i = 0; i < n; ++i) {
            const double z1 = wrapped(i, n, h);
            for (int j = 0; j < n; ++j)
                phi[static_cast<std::size_t>(i) * n + j] = interp(z1, wrapped(j, n, h));
        }
    }

    // split kernels, C h^2 weighted
    ScalarField w1(g), w2(g);
    const double ch2 = constant_ * h * h;
    const double ex = -(2.0 + beta) / 2.0;
    for (int i = 0; i < n; ++i) {
        const double z1 = wrapped(i, n, h);
        for (int j = 0; j < n; ++j) {
            const double z2 = wrapped(j, n, h);
            const double rr = z1 * z1 + z2 * z2;
            const std::size_t idx = static_cast<std::size_t>(i) * n + j;
            const double kmin = rr > 0.0 ? std::pow(rr, ex) : 0.0;
            const bool near = rr > 0.0 && rr <= R * R;
            w1.values[idx] = ch2 * (near ? kmin : 0.0);
            w2.values[idx] = ch2 * ((near ? 0.0 : kmin) + phi[idx]);
            s1_ += w1.values[idx];
            s2_ += w2.values[idx];
        }
    }

    // one FFT per kernel yields the full symbol: m(k) = S - W_hat(k)
    Fft fft(g);
    SpectralField w1h = fft.forward(w1);
    SpectralField w2h = fft.forward(w2);
    const double nn = static_cast<double>(g.size());
    const double dk = g.dk();
    m1_.resize(w1h.coeff.size());
    m2_.resize(w2h.coeff.size());
    for (int i = 0; i < n; ++i) {
        const double k1 = g.mode_of(i) * dk;
        for (int j2 = 0; j2 <= n / 2; ++j2) {
            const double k2 = j2 * dk;
            const std::size_t slot = static_cast<std::size_t>(i) * (n / 2 + 1) + j2;
            const double sten = (4.0 / (h * h)) * (std::sin(0.5 * k1 * h) * std::sin(0.5 * k1 * h) +
                                                   std::sin(0.5 * k2 * h) * std::sin(0.5 * k2 * h));
            m1_[slot] = s1_ - nn * w1h.coeff[slot].real() + ccorr_ * sten;
            m2_[slot] = s2_ - nn * w2h.coeff[slot].real();
        }
    }
}

double FracSplit::multiplier1(int n1, int n2) const {
    if (n2 < 0) {
        n1 = -n1;
        n2 = -n2;
    }
    const int i = grid_.index_of(n1);
    return m1_[static_cast<std::size_t>(i) * (grid_.n / 2 + 1) + n2];
}

double FracSplit::multiplier2(int n1, int n2) const {
    if (n2 < 0) {
        n1 = -n1;
        n2 = -n2;
    }
    const int i = grid_.index_of(n1);
    return m2_[static_cast<std::size_t>(i) * (grid_.n / 2 + 1) + n2];
}

SpectralField FracSplit::apply_part1(SpectralField f) const {
    if (!(f.grid == grid_)) throw std::invalid_argument("frac split: grid mismatch");
    for (std::size_t s = 0; s < f.coeff.size(); ++s) f.coeff[s] *= m1_[s];
    return f;
}

SpectralField FracSplit::apply_part2(SpectralField f) const {
    if (!(f.grid == grid_)) throw std::invalid_argument("frac split: grid mismatch");
    for (std::size_t s = 0; s < f.coeff.size(); ++s) f.coeff[s] *= m2_[s];
    return f;
}

SpectralField FracSplit::apply_total(SpectralField f) const {
    if (!(f.grid == grid_)) throw std::invalid_argument("frac split: grid mismatch");
    for (std::size_t s = 0; s < f.coeff.size(); ++s) f.coeff[s] *= m1_[s] + m2_[s];
    return f;
}

double FracSplit::part2_norm_ratio(int band, std::uint64_t seed) const {
    if (band < 1 || band > grid_.n / 2 - 1)
        throw std::invalid_argument("frac split: band outside the resolved lattice");
    RngStream rng(seed, 0, 0);
    double num = 0.0, den = 0.0;
    // one draw per conjugate pair; the pair weight is uniform and cancels
    for (int n2 = 0; n2 <= band; ++n2) {
        for (int n1 = -band; n1 <= band; ++n1) {
            if (n2 == 0 && n1 <= 0) continue;
            const cplx c(rng.next_normal(), rng.next_normal());
            const double a2 = std::norm(c);
            const double m = multiplier2(n1, n2);
            num += m * m * a2;
            den += a2;
        }
    }
    return std::sqrt(num / den);
}

double calibrate_constant(const Grid& g, double beta, double R, int band) {
    FracSplit unit(g, beta, R, 1.0);
    const double dk = g.dk();
    double st = 0.0, ss = 0.0;
    for (int n1 = -band; n1 <= band; ++n1) {
        for (int n2 = -band; n2 <= band; ++n2) {
            if (n1 == 0 && n2 == 0) continue;
            const double t = unit.multiplier1(n1, n2) + unit.multiplier2(n1, n2);
            const double target = std::pow(std::hypot(n1 * dk, n2 * dk), beta);
            st += t * target;
            ss += t * t;
        }
    }
    return st / ss;
}

} // namespace svort
