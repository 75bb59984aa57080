// Stochastic solver: exact integrating factor against a silent noise model,
// forcing accumulation, reproducibility, velocity maps, preflight and
// blow-up guards, and ensemble statistics bookkeeping.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "svort/fft.hpp"
#include "svort/norms.hpp"
#include "svort/operators.hpp"
#include "svort/solver.hpp"

using namespace svort;

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

// admissible density carrying zero variance: the dynamics degenerate to the
// deterministic dissipative flow, which has a closed form
NoiseModel silent_model(int n) {
    return NoiseModel(Grid{n, kTwoPi}, SpectralDensity::custom({1.0, 2.0}, {0.0, 0.0}));
}

NoiseModel live_model(int n, int max_mode = 0) {
    return NoiseModel(Grid{n, kTwoPi}, SpectralDensity::log_euler(1.0), 0.0, max_mode);
}
}  // namespace

TEST_CASE("silent noise reduces to the exact dissipative semigroup") {
    NoiseModel m = silent_model(32);
    CHECK(m.kappa() == 0.0);

    SolverConfig cfg;
    cfg.scheme = Scheme::linear();
    cfg.nu = 1.0;
    cfg.beta = 1.5;
    cfg.dt = 1e-2;
    cfg.horizon = 0.1;
    Solver solver(m, cfg);

    SpectralField omega0 = single_mode_data(m.grid(), 3, 2, 2.0);
    const auto res = solver.run_member(omega0, 0);
    const double decay = std::exp(-std::pow(13.0, 0.75) * 0.1);  // |k|^1.5, |k|^2 = 13
    const cplx expect = omega0.mode(3, 2) * decay;
    CHECK(std::abs(res.final_state.mode(3, 2) - expect) < 1e-13 * std::abs(expect));
    // no other mode is excited
    double leak = 0.0;
    for (std::size_t i = 0; i < res.final_state.coeff.size(); ++i)
        leak = std::max(leak, std::abs(res.final_state.coeff[i]));
    CHECK(leak <= std::abs(res.final_state.mode(3, 2)) + 1e-18);
}

TEST_CASE("constant forcing accumulates exactly when the symbol vanishes") {
    NoiseModel m = silent_model(32);
    SolverConfig cfg;
    cfg.scheme = Scheme::linear();
    cfg.nu = 0.0;
    cfg.dt = 1e-2;
    cfg.horizon = 0.5;
    SpectralField fhat(m.grid());
    fhat.set_mode(2, 1, cplx(0.3, -0.4));
    cfg.forcing = [fhat](double t0, double t1) {
        SpectralField out = fhat;
        for (cplx& c : out.coeff) c *= (t1 - t0);
        return out;
    };
    Solver solver(m, cfg);
    SpectralField omega0 = single_mode_data(m.grid(), 1, 0, 1.0);
    const auto res = solver.run_member(omega0, 0);
    CHECK(std::abs(res.final_state.mode(2, 1) - cplx(0.15, -0.2)) < 1e-14);
    CHECK(std::abs(res.final_state.mode(1, 0) - omega0.mode(1, 0)) < 1e-14);
}

TEST_CASE("runs are reproducible and the mean mode is invariant") {
    NoiseModel m = live_model(32, 8);
    SolverConfig cfg;
    cfg.scheme = Scheme::log_euler(1.0);
    cfg.dt = 1e-3;
    cfg.horizon = 0.05;
    cfg.seed = 99;
    Solver solver(m, cfg);
    SpectralField omega0 = random_band_data(m.grid(), 1, 4, 1.0, 5);

    const auto a = solver.run_member(omega0, 3);
    const auto b = solver.run_member(omega0, 3);
    double diff = 0.0;
    for (std::size_t i = 0; i < a.final_state.coeff.size(); ++i)
        diff = std::max(diff, std::abs(a.final_state.coeff[i] - b.final_state.coeff[i]));
    CHECK(diff == 0.0);

    const auto c = solver.run_member(omega0, 4);
    double member_diff = 0.0;
    for (std::size_t i = 0; i < a.final_state.coeff.size(); ++i)
        member_diff =
            std::max(member_diff, std::abs(a.final_state.coeff[i] - c.final_state.coeff[i]));
    CHECK(member_diff > 0.0);

    CHECK(std::abs(a.final_state.mode(0, 0)) == 0.0);
}

TEST_CASE("diagnostics rows carry the state norms at the sampled times") {
    NoiseModel m = live_model(32, 8);
    SolverConfig cfg;
    cfg.scheme = Scheme::linear();
    cfg.dt = 1e-3;
    cfg.horizon = 0.02;
    cfg.diag_stride = 5;
    cfg.snap_times = {0.01, 0.02};
    Solver solver(m, cfg);
    Fft fft(m.grid());
    SpectralField omega0 = random_band_data(m.grid(), 1, 4, 1.0, 6);

    const auto res = solver.run_member(omega0, 0);
    REQUIRE(res.record.rows.size() == 5);  // t = 0, 5dt, 10dt, 15dt, 20dt
    CHECK(res.record.rows.front().t == doctest::Approx(0.0));
    CHECK(res.record.rows.back().t == doctest::Approx(0.02));
    CHECK(res.record.rows.front().l2 == doctest::Approx(l2_norm(omega0)).epsilon(1e-12));
    const ScalarField w0 = fft.backward(omega0);
    CHECK(res.record.rows.front().l1 == doctest::Approx(lp_norm(w0, 1.0)).epsilon(1e-12));
    CHECK(res.record.rows.front().l4 == doctest::Approx(lp_norm(w0, 4.0)).epsilon(1e-12));
    CHECK(res.record.rows.front().hm1 ==
          doctest::Approx(h_minus1_norm(omega0)).epsilon(1e-12));

    REQUIRE(res.record.snapshots.size() == 2);
    CHECK(res.record.snapshots[0].first == doctest::Approx(0.01));
    CHECK(res.record.snapshots[1].first == doctest::Approx(0.02));
    CHECK(l2_norm(res.record.snapshots[1].second) ==
          doctest::Approx(l2_norm(res.final_state)).epsilon(1e-13));
}

TEST_CASE("scheme velocity maps") {
    const Grid g{32, kTwoPi};
    SpectralField omega = single_mode_data(g, 3, 4, 2.0);

    const SpectralVectorField lin = scheme_drift_velocity(Scheme::linear(), omega);
    CHECK(l2_norm(lin.x1) == 0.0);
    CHECK(l2_norm(lin.x2) == 0.0);

    const SpectralVectorField euler = scheme_drift_velocity(Scheme::hypo_ns(), omega);
    const SpectralVectorField bs = biot_savart(omega);
    CHECK(std::abs(euler.x1.mode(3, 4) - bs.x1.mode(3, 4)) < 1e-15);

    const SpectralVectorField damped = scheme_drift_velocity(Scheme::log_euler(2.0), omega);
    const double factor = std::pow(std::log(std::exp(1.0) + 5.0), -2.0);
    CHECK(std::abs(damped.x1.mode(3, 4) - factor * bs.x1.mode(3, 4)) < 1e-15);
    CHECK(std::abs(damped.x2.mode(3, 4) - factor * bs.x2.mode(3, 4)) < 1e-15);

    const SpectralVectorField gen = scheme_drift_velocity(
        Scheme::general([](double s) { return 1.0 / (1.0 + s); }), omega);
    CHECK(std::abs(gen.x1.mode(3, 4) - bs.x1.mode(3, 4) / 6.0) < 1e-15);
}

TEST_CASE("preflight refuses advectively unstable configurations") {
    NoiseModel m = live_model(32, 8);
    SolverConfig cfg;
    cfg.scheme = Scheme::log_euler(1.0);
    cfg.dt = 1e-3;
    cfg.horizon = 0.01;
    cfg.cfl_limit = 1e-9;
    Solver solver(m, cfg);
    SpectralField omega0 = random_band_data(m.grid(), 1, 4, 1.0, 7);
    CHECK(solver.preflight_ratio(omega0) > 1e-9);
    CHECK_THROWS_AS(solver.run_member(omega0, 0), PreflightError);
}

TEST_CASE("overflow is reported as a blow-up with its step index") {
    NoiseModel m = live_model(32, 8);
    SolverConfig cfg;
    cfg.scheme = Scheme::log_euler(1.0);
    cfg.dt = 0.5;
    cfg.horizon = 5.0;
    cfg.cfl_limit = 1e30;  // disarm the preflight to reach the in-run guard
    Solver solver(m, cfg);
    SpectralField omega0 = random_band_data(m.grid(), 1, 6, 1e9, 8);
    CHECK_THROWS_AS(solver.run_member(omega0, 0), BlowUpError);
    try {
        solver.run_member(omega0, 0);
    } catch (const BlowUpError& e) {
        CHECK(e.step >= 0);
        CHECK(e.step < 10);
    }
}

TEST_CASE("observer sees every step in order") {
    NoiseModel m = live_model(32, 4);
    SolverConfig cfg;
    cfg.scheme = Scheme::linear();
    cfg.dt = 1e-3;
    cfg.horizon = 0.01;
    Solver solver(m, cfg);
    SpectralField omega0 = single_mode_data(m.grid(), 1, 0, 1.0);
    int count = 0;
    double last_t = -1.0;
    bool sizes_ok = true;
    const auto res = solver.run_member(omega0, 0, [&](const StepContext& ctx) {
        sizes_ok = sizes_ok && ctx.increment.amp.size() == m.half_modes().size();
        sizes_ok = sizes_ok && ctx.step == count;
        CHECK(ctx.t > last_t);
        last_t = ctx.t;
        ++count;
    });
    CHECK(count == 10);
    CHECK(sizes_ok);
}

TEST_CASE("ensemble statistics at the recorded times") {
    NoiseModel m = live_model(32, 4);
    SolverConfig cfg;
    cfg.scheme = Scheme::linear();
    cfg.dt = 1e-3;
    cfg.horizon = 0.02;
    cfg.member_count = 8;
    cfg.record_times = {0.01, 0.02};
    Solver solver(m, cfg);
    SpectralField omega0 = single_mode_data(m.grid(), 1, 0, 1.0);

    const EnsembleStats stats = solver.run_ensemble(omega0);
    CHECK(stats.members == 8);
    REQUIRE(stats.at.size() == 2);
    CHECK(stats.at[0].t == doctest::Approx(0.01));
    CHECK(stats.at[1].t == doctest::Approx(0.02));
    CHECK(stats.failed_members.empty());

    const int cols = m.grid().n / 2 + 1;
    const std::size_t slot = static_cast<std::size_t>(1) * cols + 0;  // mode (1,0)
    CHECK(stats.at[1].mean_sq[slot] > 0.0);
    CHECK(stats.at[1].var_sq[slot] >= 0.0);
    // transport redistributes but cannot create mean vorticity
    const std::size_t mean_slot = 0;
    CHECK(std::abs(stats.at[1].mean[mean_slot]) == 0.0);

    // deterministic reruns give identical statistics
    const EnsembleStats again = solver.run_ensemble(omega0);
    CHECK(again.at[1].mean_sq[slot] == stats.at[1].mean_sq[slot]);
}

TEST_CASE("discrete l2 drift: left-point injection loses energy at O(dt)") {
    // nu = 0 linear transport conserves ||omega||_{L2} pathwise in the
    // continuum. The discrete balance per mode trades the exact decay
    // E^2 = e^{-2 kappa |k|^2 dt} against the injected transfer; the
    // left-point weight under-injects by ~kappa |k|^2 dt, so the signed
    // ensemble-mean energy drift is negative and proportional to dt, while
    // the midpoint weight cancels that deficit to O(dt^2).
    NoiseModel m = live_model(32, 4);
    SpectralField omega0 = random_band_data(m.grid(), 1, 4, 1.0, 11);
    const double e0 = l2_norm(omega0) * l2_norm(omega0);

    auto drift = [&](NoiseInjection inj, double dt) {
        SolverConfig cfg;
        cfg.scheme = Scheme::linear();
        cfg.nu = 0.0;
        cfg.ito_corrector = true;
        cfg.transport = TransportForm::Skew;
        cfg.dealias = false;
        cfg.injection = inj;
        cfg.dt = dt;
        cfg.horizon = 0.04;
        cfg.seed = 42;
        Solver solver(m, cfg);
        double acc = 0.0;
        const int reps = 24;
        for (int member = 0; member < reps; ++member) {
            const auto res = solver.run_member(omega0, member);
            const double eT = l2_norm(res.final_state) * l2_norm(res.final_state);
            acc += (eT - e0) / e0;
        }
        return acc / reps;
    };

    const double left2 = drift(NoiseInjection::AtLeft, 2e-3);
    const double left1 = drift(NoiseInjection::AtLeft, 1e-3);
    CHECK(left2 < 0.0);
    CHECK(left1 < 0.0);
    const double ratio = left2 / left1;
    CHECK(ratio > 1.5);  // deficit scales like dt
    CHECK(ratio < 2.6);

    // the midpoint weight is an order more accurate at the same step
    const double mid2 = drift(NoiseInjection::Midpoint, 2e-3);
    CHECK(std::abs(mid2) < 0.25 * std::abs(left2));
}
