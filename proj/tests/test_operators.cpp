// Spectral operators: transforms, norms, Biot-Savart, fractional dissipation,
// dealiasing, and the two transport forms with their exact discrete identities.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "svort/fft.hpp"
#include "svort/norms.hpp"
#include "svort/operators.hpp"
#include "svort/rng.hpp"

using namespace svort;

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

ScalarField random_field(const Grid& g, std::uint64_t seed) {
    ScalarField f(g);
    RngStream rng(seed, 0, 0);
    for (double& v : f.values) v = rng.next_normal();
    return f;
}

// mean-free, Nyquist-free band field in spectral form
SpectralField random_band(const Grid& g, int nmax, std::uint64_t seed) {
    SpectralField c(g);
    RngStream rng(seed, 1, 0);
    for (int n1 = -nmax; n1 <= nmax; ++n1)
        for (int n2 = 0; n2 <= nmax; ++n2) {
            if (n2 == 0 && n1 <= 0) continue;
            c.set_mode(n1, n2, cplx(rng.next_normal(), rng.next_normal()));
        }
    return c;
}
}  // namespace

TEST_CASE("transform round trip and analytic coefficients") {
    const Grid g{32, kTwoPi};
    Fft fft(g);
    const ScalarField f = random_field(g, 5);
    const ScalarField back = fft.backward(fft.forward(f));
    double err = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i)
        err = std::max(err, std::abs(f.values[i] - back.values[i]));
    CHECK(err < 1e-13);

    // cos(3 x1): synthesis coefficients 1/2 at (3, 0) and (-3, 0)
    ScalarField cosf(g);
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) cosf.at(i, j) = std::cos(3.0 * g.coord(i));
    const SpectralField c = fft.forward(cosf);
    CHECK(std::abs(c.mode(3, 0) - 0.5) < 1e-14);
    CHECK(std::abs(c.mode(-3, 0) - 0.5) < 1e-14);
    CHECK(std::abs(c.mode(2, 0)) < 1e-14);
}

TEST_CASE("grid quadrature and Parseval agree") {
    const Grid g{32, kTwoPi};
    Fft fft(g);
    const ScalarField f = random_field(g, 8);
    const SpectralField c = fft.forward(f);
    CHECK(l2_norm(f) == doctest::Approx(l2_norm(c)).epsilon(1e-13));

    // constant field: ||c||_p = |c| L^{2/p}
    ScalarField two(g);
    for (double& v : two.values) v = 2.0;
    CHECK(lp_norm(two, 3.0) == doctest::Approx(2.0 * std::pow(kTwoPi * kTwoPi, 1.0 / 3.0)));
    CHECK(lp_norm(two, 4.0) == doctest::Approx(2.0 * std::sqrt(kTwoPi)));
}

TEST_CASE("single-mode spectral norms have closed forms") {
    const Grid g{32, kTwoPi};
    SpectralField c(g);
    c.set_mode(3, 4, cplx(0.7, -0.2));  // |k| = 5, conjugate pair carried implicitly
    const double amp_sq = 2.0 * std::norm(cplx(0.7, -0.2));
    const double l2sq = kTwoPi * kTwoPi * amp_sq;
    CHECK(l2_norm(c) == doctest::Approx(std::sqrt(l2sq)).epsilon(1e-14));
    CHECK(sobolev_norm(c, 0.5) == doctest::Approx(std::sqrt(l2sq * 5.0)).epsilon(1e-14));
    CHECK(sobolev_norm(c, -1.0) == doctest::Approx(std::sqrt(l2sq / 25.0)).epsilon(1e-14));
    CHECK(h_minus1_norm(c) == doctest::Approx(std::sqrt(l2sq / 25.0)).epsilon(1e-14));
    const double lg = std::log(std::exp(1.0) + 5.0);
    CHECK(log_weighted_norm(c, 1.5) ==
          doctest::Approx(std::sqrt(l2sq * std::pow(lg, 3.0))).epsilon(1e-14));
}

TEST_CASE("Biot-Savart inverts the curl and is divergence-free") {
    const Grid g{32, kTwoPi};
    const SpectralField omega = random_band(g, 9, 21);
    const SpectralVectorField u = biot_savart(omega);
    CHECK(divergence_max(u) < 1e-14);

    const SpectralField rt = curl(u);
    double err = 0.0, ref = 0.0;
    for (std::size_t i = 0; i < omega.coeff.size(); ++i) {
        err = std::max(err, std::abs(rt.coeff[i] - omega.coeff[i]));
        ref = std::max(ref, std::abs(omega.coeff[i]));
    }
    CHECK(err < 1e-14 * ref);

    // sign convention: omega_hat at (1,0) drives u2 = -i k1 / |k|^2 omega
    SpectralField single(g);
    single.set_mode(1, 0, cplx(1.0, 0.0));
    const SpectralVectorField us = biot_savart(single);
    CHECK(std::abs(us.x2.mode(1, 0) - cplx(0.0, -1.0)) < 1e-15);
    CHECK(std::abs(us.x1.mode(1, 0)) < 1e-15);

    SpectralField with_mean(g);
    with_mean.set_mode(0, 0, cplx(1.0, 0.0));
    CHECK_THROWS_AS(biot_savart(with_mean), std::invalid_argument);
}

TEST_CASE("Leray projection removes divergence and is idempotent") {
    const Grid g{32, kTwoPi};
    Fft fft(g);
    SpectralVectorField v(fft.forward(random_field(g, 31)), fft.forward(random_field(g, 32)));
    leray_project(v);
    CHECK(divergence_max(v) < 1e-13);
    SpectralVectorField w(v.x1, v.x2);
    leray_project(w);
    double diff = 0.0;
    for (std::size_t i = 0; i < v.x1.coeff.size(); ++i)
        diff = std::max({diff, std::abs(v.x1.coeff[i] - w.x1.coeff[i]),
                         std::abs(v.x2.coeff[i] - w.x2.coeff[i])});
    CHECK(diff < 1e-15);
}

TEST_CASE("fractional Laplacian applies |k|^beta and kills the mean") {
    const Grid g{32, kTwoPi};
    SpectralField c(g);
    c.set_mode(0, 0, cplx(3.0, 0.0));
    c.set_mode(3, 4, cplx(1.0, 1.0));
    const SpectralField out = frac_laplacian(c, 1.2);
    CHECK(std::abs(out.mode(0, 0)) == 0.0);
    CHECK(std::abs(out.mode(3, 4) - std::pow(5.0, 1.2) * cplx(1.0, 1.0)) < 1e-13);
    CHECK_THROWS_AS(frac_laplacian(c, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(frac_laplacian(c, 2.0), std::invalid_argument);
}

TEST_CASE("logarithmic damping multiplier") {
    const Grid g{32, kTwoPi};
    SpectralField c(g);
    c.set_mode(0, 0, cplx(2.0, 0.0));
    c.set_mode(3, 4, cplx(1.0, 0.0));
    const SpectralField out = mult_t_gamma(c, 2.0);
    CHECK(std::abs(out.mode(0, 0) - cplx(2.0, 0.0)) < 1e-15);  // log(e) = 1 at k = 0
    const double expect = std::pow(std::log(std::exp(1.0) + 5.0), -2.0);
    CHECK(std::abs(out.mode(3, 4) - cplx(expect, 0.0)) < 1e-15);
}

TEST_CASE("dealias limit and truncation") {
    CHECK(dealias_limit(Grid{32, kTwoPi}) == 10);
    CHECK(dealias_limit(Grid{16, kTwoPi}) == 5);
    CHECK(dealias_limit(Grid{256, kTwoPi}) == 85);

    const Grid g{32, kTwoPi};
    SpectralField c(g);
    c.set_mode(10, 2, cplx(1.0, 0.0));
    c.set_mode(11, 0, cplx(1.0, 0.0));
    c.set_mode(3, 12, cplx(1.0, 0.0));
    dealias_23(c);
    CHECK(std::abs(c.mode(10, 2)) == 1.0);
    CHECK(std::abs(c.mode(11, 0)) == 0.0);
    CHECK(std::abs(c.mode(3, 12)) == 0.0);

    SpectralField d(g);
    d.set_mode(5, 16, cplx(1.0, 0.0));  // Nyquist column
    d.set_mode(2, 3, cplx(1.0, 0.0));
    drop_nyquist(d);
    CHECK(std::abs(d.mode(5, 16)) == 0.0);
    CHECK(std::abs(d.mode(2, 3)) == 1.0);
}

TEST_CASE("transport by a uniform stream is the spectral derivative") {
    const Grid g{32, kTwoPi};
    Fft fft(g);
    const SpectralField omega = random_band(g, 8, 77);
    SpectralVectorField v{SpectralField(g), SpectralField(g)};
    v.x1.set_mode(0, 0, cplx(1.0, 0.0));  // v = (1, 0)
    const SpectralField t = transport_term(v, omega, fft, TransportForm::Conservative, false);
    double err = 0.0;
    for (int n1 = -8; n1 <= 8; ++n1)
        for (int n2 = -8; n2 <= 8; ++n2) {
            if (n1 == 0 && n2 == 0) continue;
            const cplx expect = cplx(0.0, n1) * omega.mode(n1, n2);
            err = std::max(err, std::abs(t.mode(n1, n2) - expect));
        }
    CHECK(err < 1e-13);
}

TEST_CASE("skew transport pairs to zero against omega, pathwise") {
    const Grid g{32, kTwoPi};
    Fft fft(g);
    // deliberately NOT band-limited: the skew identity is exact even when the
    // grid products alias, as long as omega is Nyquist-free
    const SpectralField omega = random_band(g, 15, 13);
    const SpectralVectorField v = biot_savart(omega);
    const SpectralField t = transport_term(v, omega, fft, TransportForm::Skew, false);
    double pairing = 0.0, scale = 0.0;
    const int n = g.n;
    for (int i = 0; i < n; ++i)
        for (int j2 = 0; j2 <= n / 2; ++j2) {
            const double w = (j2 == 0 || j2 == n / 2) ? 1.0 : 2.0;
            pairing += w * (std::conj(omega.at(i, j2)) * t.at(i, j2)).real();
            scale += w * std::abs(omega.at(i, j2)) * std::abs(t.at(i, j2));
        }
    CHECK(std::abs(pairing) < 1e-14 * scale);
}

TEST_CASE("conservative and skew forms coincide on dealiased band inputs") {
    const Grid g{32, kTwoPi};
    Fft fft(g);
    const SpectralField omega = random_band(g, 10, 99);  // within the 2/3 band
    const SpectralVectorField v = biot_savart(omega);
    const SpectralField tc = transport_term(v, omega, fft, TransportForm::Conservative, true);
    const SpectralField ts = transport_term(v, omega, fft, TransportForm::Skew, true);
    double err = 0.0, ref = 0.0;
    for (std::size_t i = 0; i < tc.coeff.size(); ++i) {
        err = std::max(err, std::abs(tc.coeff[i] - ts.coeff[i]));
        ref = std::max(ref, std::abs(tc.coeff[i]));
    }
    CHECK(err < 1e-12 * ref);
    // transport output never carries a mean (integral of div(v omega) = 0)
    CHECK(std::abs(tc.mode(0, 0)) == 0.0);
}
