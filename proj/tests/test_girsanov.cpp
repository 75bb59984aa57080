// Girsanov reweighting: closed-form Cameron-Martin norms, accumulator
// identities, the reweighted estimator, and the exponential-martingale
// normalization on a small linear ensemble.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "svort/girsanov.hpp"
#include "svort/norms.hpp"
#include "svort/rng.hpp"
#include "svort/solver.hpp"

using namespace svort;

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

SpectralField band_field(const Grid& g, int nmax, std::uint64_t seed) {
    SpectralField c(g);
    RngStream rng(seed, 2, 0);
    for (int n1 = -nmax; n1 <= nmax; ++n1)
        for (int n2 = 0; n2 <= nmax; ++n2) {
            if (n2 == 0 && n1 <= 0) continue;
            c.set_mode(n1, n2, cplx(rng.next_normal(), rng.next_normal()));
        }
    return c;
}
}  // namespace

TEST_CASE("log-damped Cameron-Martin norm collapses to Hdot^-1 + L2") {
    NoiseModel m(Grid{32, kTwoPi}, SpectralDensity::log_euler(1.3));
    // the conversion constant between the mode-sum norm (synthesis
    // coefficients) and the integral norms is c_norm L^2 = 4 pi^2 for any L
    const double c = 4.0 * 3.14159265358979323846 * 3.14159265358979323846;
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL, 4ULL}) {
        const SpectralField omega = band_field(m.grid(), 10, seed);
        const double got = cameron_martin_norm_sq(omega, Scheme::log_euler(1.3), m);
        const double hm1 = h_minus1_norm(omega);
        const double l2 = l2_norm(omega);
        const double expect = (hm1 * hm1 + l2 * l2) / c;
        CHECK(got == doctest::Approx(expect).epsilon(1e-12));
    }
    // the linear scheme has no drift, hence zero norm
    CHECK(cameron_martin_norm_sq(band_field(m.grid(), 4, 9), Scheme::linear(), m) == 0.0);
}

TEST_CASE("hypodissipative multiplier value per mode") {
    NoiseModel m(Grid{32, kTwoPi}, SpectralDensity::hypo_ns(0.5));
    const double c_norm = m.grid().dk() * m.grid().dk();
    SpectralField omega(m.grid());
    omega.set_mode(3, 4, cplx(0.6, -0.8));  // |k|^2 = 25, pair weight 2
    const double got = cameron_martin_norm_sq(omega, Scheme::hypo_ns(), m);
    const double mult = std::pow(26.0, 1.25) / 25.0;
    const double expect = 2.0 * 1.0 * mult / c_norm;  // |amp|^2 = 1
    CHECK(got == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("scheme/covariance mismatches and singular pairings are rejected") {
    NoiseModel le(Grid{32, kTwoPi}, SpectralDensity::log_euler(1.0));
    NoiseModel hn(Grid{32, kTwoPi}, SpectralDensity::hypo_ns(0.5));
    const SpectralField omega = band_field(le.grid(), 4, 3);

    CHECK_THROWS_AS(cameron_martin_norm_sq(omega, Scheme::log_euler(1.0), hn),
                    std::invalid_argument);
    CHECK_THROWS_AS(cameron_martin_norm_sq(omega, Scheme::log_euler(0.7), le),
                    std::invalid_argument);
    CHECK_THROWS_AS(cameron_martin_norm_sq(omega, Scheme::hypo_ns(), le),
                    std::invalid_argument);

    // drift content outside the clipped noise lattice has no q to pair with
    NoiseModel clipped(Grid{32, kTwoPi}, SpectralDensity::log_euler(1.0), 0.0, 4);
    SpectralField outside(clipped.grid());
    outside.set_mode(6, 0, cplx(1.0, 0.0));
    CHECK_THROWS_AS(cameron_martin_norm_sq(outside, Scheme::log_euler(1.0), clipped),
                    std::domain_error);
}

TEST_CASE("accumulator: forward and reverse signs share the quadratic") {
    NoiseModel m(Grid{16, kTwoPi}, SpectralDensity::log_euler(1.0), 0.0, 4);
    const double dt = 1e-2;
    GirsanovAccumulator fwd(m, DensitySign::Forward);
    GirsanovAccumulator rev(m, DensitySign::Reverse);

    RngStream rng(5, 0, 0);
    SpectralField omega = band_field(m.grid(), 3, 8);
    for (int s = 0; s < 20; ++s) {
        RngStream step_rng(5, 0, static_cast<std::uint64_t>(s));
        const NoiseIncrement dW = sample_increment(m, dt, step_rng);
        const SpectralVectorField h = scheme_drift_velocity(Scheme::log_euler(1.0), omega);
        fwd.accumulate(h, dW, dt);
        rev.accumulate(h, dW, dt);
    }
    CHECK(fwd.quadratic() == doctest::Approx(rev.quadratic()).epsilon(1e-15));
    // the raw integral is sign-free; the sign enters in log_density
    CHECK(fwd.stochastic_integral() ==
          doctest::Approx(rev.stochastic_integral()).epsilon(1e-15));
    CHECK(fwd.log_density() + rev.log_density() ==
          doctest::Approx(-fwd.quadratic()).epsilon(1e-12));
    CHECK(fwd.quadratic() > 0.0);

    // the quadratic matches the Cameron-Martin norm accumulated step by step
    const double per_step = cameron_martin_norm_sq(omega, Scheme::log_euler(1.0), m);
    CHECK(fwd.quadratic() == doctest::Approx(20 * per_step * dt).epsilon(1e-12));

    // zero drift leaves the density at exactly one
    GirsanovAccumulator none(m, DensitySign::Forward);
    RngStream z(5, 0, 0);
    const NoiseIncrement dW = sample_increment(m, dt, z);
    none.accumulate(SpectralVectorField(SpectralField(m.grid()), SpectralField(m.grid())), dW, dt);
    CHECK(none.log_density() == 0.0);
    CHECK(none.quadratic() == 0.0);
}

TEST_CASE("reweighted expectation: unit weights, jackknife, and ESS") {
    std::vector<double> f(12);
    for (int i = 0; i < 12; ++i) f[i] = i + 1.0;
    const std::vector<double> zero_logs(12, 0.0);
    const ReweightedEstimate plain = reweighted_expectation(f, zero_logs);
    CHECK(plain.estimate == doctest::Approx(6.5));
    CHECK(plain.ess == doctest::Approx(12.0));
    CHECK(plain.members == 12);
    CHECK_FALSE(plain.low_ess_warning);  // the warning threshold is ESS < 10

    // constant integrand: zero variance regardless of the weights
    const ReweightedEstimate c =
        reweighted_expectation(std::vector<double>(12, 1.0), zero_logs);
    CHECK(c.stderr_jackknife == doctest::Approx(0.0));

    // one dominant weight collapses the effective sample size
    std::vector<double> spiked(40, 0.0);
    spiked[0] = 20.0;
    const ReweightedEstimate s = reweighted_expectation(std::vector<double>(40, 1.0), spiked);
    CHECK(s.ess < 1.5);
    CHECK(s.low_ess_warning);

    CHECK_THROWS_AS(reweighted_expectation({1.0}, {0.0, 0.0}), std::invalid_argument);

    const EntropyBound eb = entropy_bound({0.4, 0.4, 0.4});
    CHECK(eb.value == doctest::Approx(0.2));
    CHECK(eb.stderr_ == doctest::Approx(0.0));
}

TEST_CASE("linear-ensemble martingale mean is 1 within Monte Carlo error") {
    NoiseModel m(Grid{16, kTwoPi}, SpectralDensity::log_euler(1.0), 0.0, 4);
    SolverConfig cfg;
    cfg.scheme = Scheme::linear();
    cfg.dt = 1e-3;
    cfg.horizon = 0.05;
    cfg.seed = 31;
    cfg.member_count = 200;
    const SpectralField omega0 = single_mode_data(m.grid(), 1, 0, 0.5);

    const GirsanovEnsemble ens =
        girsanov_linear_ensemble(m, cfg, Scheme::log_euler(1.0), omega0, 1, 0);
    REQUIRE(ens.log_density.size() == 200);
    REQUIRE(ens.f_l2sq.size() == 200);
    REQUIRE(ens.f_mode.size() == 200);

    const std::vector<double> ones(200, 1.0);
    const ReweightedEstimate mart = reweighted_expectation(ones, ens.log_density);
    CHECK(std::abs(mart.estimate - 1.0) <= 3.0 * mart.stderr_jackknife);
    CHECK(mart.stderr_jackknife < 0.05);

    // quadratic is positive along genuine paths and the entropy bound is finite
    const EntropyBound eb = entropy_bound(ens.quadratic);
    CHECK(eb.value > 0.0);

    // the recorded L2 observable matches a direct rerun of one member
    Solver solver(m, cfg);
    const auto member3 = solver.run_member(omega0, 3);
    const double e3 = l2_norm(member3.final_state);
    CHECK(ens.f_l2sq[3] == doctest::Approx(e3 * e3).epsilon(1e-12));
}
