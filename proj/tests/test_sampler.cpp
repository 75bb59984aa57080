// Noise increment sampling: reproducibility, per-mode variance, exact
// divergence-freeness, and empirical-vs-exact second-order statistics.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "svort/fft.hpp"
#include "svort/norms.hpp"
#include "svort/operators.hpp"
#include "svort/sampler.hpp"

using namespace svort;

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

NoiseModel small_model() {
    return NoiseModel(Grid{16, kTwoPi}, SpectralDensity::log_euler(1.0));
}
}  // namespace

TEST_CASE("streams are reproducible and decorrelated across members and steps") {
    NoiseModel m = small_model();
    RngStream a(42, 0, 0), b(42, 0, 0), c(42, 1, 0), d(42, 0, 1);
    const NoiseIncrement ia = sample_increment(m, 1e-3, a);
    const NoiseIncrement ib = sample_increment(m, 1e-3, b);
    const NoiseIncrement ic = sample_increment(m, 1e-3, c);
    const NoiseIncrement id = sample_increment(m, 1e-3, d);
    REQUIRE(ia.amp.size() == m.half_modes().size());
    bool identical = true, differs_member = false, differs_step = false;
    for (std::size_t i = 0; i < ia.amp.size(); ++i) {
        identical = identical && ia.amp[i] == ib.amp[i];
        differs_member = differs_member || ia.amp[i] != ic.amp[i];
        differs_step = differs_step || ia.amp[i] != id.amp[i];
    }
    CHECK(identical);
    CHECK(differs_member);
    CHECK(differs_step);
}

TEST_CASE("per-representative variance is q(k) dt") {
    NoiseModel m = small_model();
    const double dt = 0.25;
    const int samples = 20000;
    const auto& half = m.half_modes();
    std::vector<double> acc(half.size(), 0.0);
    for (int s = 0; s < samples; ++s) {
        RngStream rng(7, 0, static_cast<std::uint64_t>(s));
        const NoiseIncrement inc = sample_increment(m, dt, rng);
        for (std::size_t i = 0; i < half.size(); ++i) acc[i] += std::norm(inc.amp[i]);
    }
    // 4-sigma bound on the relative MC error of a chi^2_2 mean
    const double tol = 4.0 / std::sqrt(static_cast<double>(samples));
    for (std::size_t i = 0; i < half.size(); ++i) {
        CAPTURE(half[i].n1);
        CAPTURE(half[i].n2);
        CHECK(std::abs(acc[i] / samples / (half[i].q * dt) - 1.0) < tol);
    }
}

TEST_CASE("real-space increments are mean-free and exactly divergence-free") {
    NoiseModel m = small_model();
    Fft fft(m.grid());
    RngStream rng(3, 0, 0);
    const NoiseIncrement inc = sample_increment(m, 1.0, rng);
    const VectorField w = real_increment(m, inc, fft);

    CHECK(std::abs(grid_mean(w.x1)) < 1e-13);
    CHECK(std::abs(grid_mean(w.x2)) < 1e-13);

    const SpectralVectorField what(fft.forward(w.x1), fft.forward(w.x2));
    CHECK(divergence_max(what) < 1e-12);

    // energy identity: E ||W||^2_{L^2} = L^2 sum_k q(k) = L^2 sum_q. One draw
    // fluctuates, but the spectral expansion must reproduce its own amplitudes.
    const SpectralVectorField direct = spectral_increment(m, inc);
    double diff = 0.0, ref = 0.0;
    for (std::size_t i = 0; i < direct.x1.coeff.size(); ++i) {
        diff += std::norm(direct.x1.coeff[i] - what.x1.coeff[i]) +
                std::norm(direct.x2.coeff[i] - what.x2.coeff[i]);
        ref += std::norm(direct.x1.coeff[i]) + std::norm(direct.x2.coeff[i]);
    }
    CHECK(diff < 1e-24 * ref);
}

TEST_CASE("empirical structure function converges to the exact spectral sum") {
    NoiseModel m = small_model();
    Fft fft(m.grid());
    for (int shift : {1, 3}) {
        const StructurePoint pt = empirical_structure_function(m, fft, 3000, shift, 11);
        CAPTURE(shift);
        CHECK(pt.r == doctest::Approx(shift * m.grid().spacing()));
        CHECK(pt.exact ==
              doctest::Approx(m.structure_function(shift * m.grid().spacing())).epsilon(1e-12));
        // grid averaging correlates the samples; allow a generous MC margin
        CHECK(std::abs(pt.empirical / pt.exact - 1.0) < 0.1);
    }
}

TEST_CASE("empirical covariance matches Q(z) entrywise") {
    NoiseModel m = small_model();
    Fft fft(m.grid());
    const CovariancePoint pt = empirical_covariance(m, fft, 4000, 2, -3, 19);
    const double h = m.grid().spacing();
    const Mat2 qz = m.covariance(2 * h, -3 * h);
    CHECK(pt.exact.a11 == doctest::Approx(qz.a11).epsilon(1e-12));
    CHECK(pt.exact.a12 == doctest::Approx(qz.a12).epsilon(1e-12));
    CHECK(pt.exact.a22 == doctest::Approx(qz.a22).epsilon(1e-12));
    const double scale = m.covariance(0, 0).a11;
    CHECK(std::abs(pt.empirical.a11 - qz.a11) < 0.05 * scale);
    CHECK(std::abs(pt.empirical.a12 - qz.a12) < 0.05 * scale);
    CHECK(std::abs(pt.empirical.a22 - qz.a22) < 0.05 * scale);
    // E[W2(x) W1(x+z)] estimates the transpose entry Q21(z) = Q12(-z) = Q12(z)
    CHECK(std::abs(pt.a21_empirical - qz.a12) < 0.05 * scale);
}
