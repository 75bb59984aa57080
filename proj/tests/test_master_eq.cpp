// Mode-energy master equation: frozen right-hand-side and trajectory values
// (tools/oracles/master_eq_oracle.py), plus the exact structural identities
// of the wrap-around closure.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "svort/master_eq.hpp"
#include "svort/solver.hpp"

using namespace svort;

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

NoiseModel tiny_model() {
    return NoiseModel(Grid{8, kTwoPi}, SpectralDensity::log_euler(1.0), 0.0, 2);
}
}  // namespace

TEST_CASE("state indexing and sizes") {
    NoiseModel m = tiny_model();
    MasterEquation eq(m, 0.0, 1.0, LatticeClosure::Absorbing, 2);
    CHECK(eq.bound() == 2);
    CHECK(eq.side() == 5);
    CHECK(eq.state_size() == 25);
    CHECK(eq.index_of(0, 0) == 12);
    CHECK(eq.index_of(-2, -2) == 0);
    CHECK(eq.index_of(2, 2) == 24);
    CHECK_THROWS_AS(eq.index_of(3, 0), std::out_of_range);

    // bound <= 0 selects the grid's full symmetric lattice
    MasterEquation full(m, 0.0, 1.0, LatticeClosure::Absorbing, 0);
    CHECK(full.bound() == 3);
}

TEST_CASE("right-hand side matches the frozen reference entrywise") {
    NoiseModel m = tiny_model();
    CHECK(m.kappa() == doctest::Approx(0.70659778333796786).epsilon(1e-14));
    MasterEquation eq(m, 0.3, 0.7, LatticeClosure::Absorbing, 2);

    MasterEquation::State a = eq.zero_state();
    a[eq.index_of(1, 0)] = 1.0;
    const MasterEquation::State r = eq.rhs(a);

    auto at = [&](int n1, int n2) { return r[eq.index_of(n1, n2)]; };
    CHECK(at(1, 0) == doctest::Approx(-2.0131955666759356).epsilon(1e-13));
    CHECK(at(1, 1) == doctest::Approx(0.28991284328626771).epsilon(1e-13));
    CHECK(at(2, 1) == doctest::Approx(0.082785930918052017).epsilon(1e-13));
    CHECK(at(0, 1) == doctest::Approx(0.082785930918052017).epsilon(1e-13));
    CHECK(at(-1, -1) == doctest::Approx(0.013016505971732725).epsilon(1e-13));
    CHECK(at(1, -1) == doctest::Approx(0.28991284328626771).epsilon(1e-13));
    // transfers along eta parallel to k vanish: |P_eta k|^2 = 0
    CHECK(at(2, 0) == 0.0);
    CHECK(at(0, 0) == 0.0);
    CHECK(at(-1, 0) == 0.0);
    CHECK(at(-2, 2) == 0.0);
}

TEST_CASE("trajectory endpoint matches the frozen reference") {
    NoiseModel m = tiny_model();
    MasterEquation eq(m, 0.0, 1.0, LatticeClosure::Absorbing, 2);

    // a0 = 1 at +-(1,0): amplitude-2 cosine data has |omega_hat| = 1 there
    const SpectralField omega0 = single_mode_data(m.grid(), 1, 0, 2.0);
    MasterEquation::State a0 = eq.from_field(omega0);
    CHECK(a0[eq.index_of(1, 0)] == doctest::Approx(1.0));
    CHECK(a0[eq.index_of(-1, 0)] == doctest::Approx(1.0));
    CHECK(MasterEquation::sum(a0) == doctest::Approx(2.0));

    const auto traj = eq.integrate(a0, 0.25, 1e-3, 0);
    REQUIRE(traj.states.size() == 2);  // initial + final
    const MasterEquation::State& aT = traj.states.back();
    auto at = [&](int n1, int n2) { return aT[eq.index_of(n1, n2)]; };
    CHECK(at(1, 0) == doctest::Approx(0.70786170973534657).epsilon(1e-12));
    CHECK(at(2, 0) == doctest::Approx(0.0072930864917097847).epsilon(1e-12));
    CHECK(at(1, 1) == doctest::Approx(0.049171663342628805).epsilon(1e-12));
    CHECK(at(0, 2) == doctest::Approx(0.018618062368466623).epsilon(1e-12));
    CHECK(at(2, 2) == doctest::Approx(0.0061452178510185236).epsilon(1e-12));
    CHECK(at(0, 1) == doctest::Approx(0.033789984851128149).epsilon(1e-12));
    CHECK(at(0, 0) == 0.0);
    CHECK(MasterEquation::sum(aT) == doctest::Approx(1.8678169430057423).epsilon(1e-12));

    // absorbing closure only loses mass, and energies stay nonnegative
    CHECK(MasterEquation::sum(aT) < MasterEquation::sum(a0));
    double mn = 1e300;
    for (double v : aT) mn = std::min(mn, v);
    CHECK(mn >= 0.0);

    // symmetry k -> -k is preserved by the dynamics
    CHECK(at(1, 1) == doctest::Approx(at(-1, -1)).epsilon(1e-13));
    CHECK(at(2, 0) == doctest::Approx(at(-2, 0)).epsilon(1e-13));
}

TEST_CASE("record stride populates intermediate states") {
    NoiseModel m = tiny_model();
    MasterEquation eq(m, 0.0, 1.0, LatticeClosure::Absorbing, 2);
    MasterEquation::State a0 = eq.zero_state();
    a0[eq.index_of(1, 0)] = 1.0;
    a0[eq.index_of(-1, 0)] = 1.0;
    const auto traj = eq.integrate(a0, 0.1, 1e-2, 5);
    REQUIRE(traj.times.size() == 3);
    CHECK(traj.times[0] == doctest::Approx(0.0));
    CHECK(traj.times[1] == doctest::Approx(0.05));
    CHECK(traj.times[2] == doctest::Approx(0.1));
}

TEST_CASE("wrap-around closure conserves mass and dissipates l2 exactly") {
    NoiseModel m = tiny_model();
    MasterEquation eq(m, 0.0, 1.0, LatticeClosure::WrapAround, 2);

    // constant spectra are exact fixed points
    MasterEquation::State flat(eq.state_size(), 0.7);
    const MasterEquation::State r = eq.rhs(flat);
    double rmax = 0.0;
    for (double v : r) rmax = std::max(rmax, std::abs(v));
    CHECK(rmax < 1e-12 * m.sum_q());

    // generic state: mass exactly conserved, sum of squares non-increasing,
    // max principle at the endpoints
    MasterEquation::State a0 = eq.zero_state();
    a0[eq.index_of(1, 0)] = 2.0;
    a0[eq.index_of(-1, 0)] = 2.0;
    a0[eq.index_of(0, 1)] = 0.5;
    a0[eq.index_of(0, -1)] = 0.5;
    const auto traj = eq.integrate(a0, 1.0, 1e-3, 0);
    const MasterEquation::State& aT = traj.states.back();
    CHECK(MasterEquation::sum(aT) ==
          doctest::Approx(MasterEquation::sum(a0)).epsilon(1e-12));
    CHECK(MasterEquation::sum_sq(aT) < MasterEquation::sum_sq(a0));
    CHECK(MasterEquation::max_entry(aT) <= MasterEquation::max_entry(a0) + 1e-12);
    double mn = 1e300;
    for (double v : aT) mn = std::min(mn, v);
    CHECK(mn >= -1e-15);

    // d/dt sum a^2 = -2 Q(a): check against a centered difference
    const double dt = 1e-5;
    const auto fwd = eq.integrate(aT, dt, dt, 0);
    const auto mid = eq.rhs(aT);
    double dsum = 0.0;
    for (std::size_t i = 0; i < aT.size(); ++i) dsum += 2.0 * aT[i] * mid[i];
    CHECK(dsum == doctest::Approx(-2.0 * eq.l2_dissipation(aT)).epsilon(1e-10));
    CHECK(eq.l2_dissipation(aT) >= 0.0);
    CHECK(MasterEquation::sum_sq(fwd.states.back()) <= MasterEquation::sum_sq(aT));
}

TEST_CASE("construction and stepping guards") {
    NoiseModel m = tiny_model();
    CHECK_THROWS_AS(MasterEquation(m, -1.0, 1.0), std::invalid_argument);
    // beta participates only when dissipation is active
    CHECK_THROWS_AS(MasterEquation(m, 0.5, -0.5), std::invalid_argument);
    CHECK_THROWS_AS(MasterEquation(m, 0.5, 2.5), std::invalid_argument);
    CHECK_NOTHROW(MasterEquation(m, 0.5, 2.0));  // beta = 2 (classical) is admitted
    // wrap-around requires a dissipation-free system with noise inside the lattice
    CHECK_THROWS_AS(MasterEquation(m, 0.5, 1.0, LatticeClosure::WrapAround, 2),
                    std::invalid_argument);
    CHECK_THROWS_AS(MasterEquation(m, 0.0, 1.0, LatticeClosure::WrapAround, 1),
                    std::invalid_argument);

    MasterEquation eq(m, 0.0, 1.0, LatticeClosure::Absorbing, 2);
    MasterEquation::State a0 = eq.zero_state();
    a0[eq.index_of(1, 0)] = 1.0;
    CHECK_THROWS_AS(eq.integrate(a0, 1.0, 2.1 / eq.max_rate(), 0), std::invalid_argument);
    MasterEquation::State wrong(9, 0.0);
    CHECK_THROWS_AS(eq.rhs(wrong), std::invalid_argument);
}
