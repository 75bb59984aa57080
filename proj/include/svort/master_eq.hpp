#pragma once

#include <cstddef>
#include <vector>

#include "svort/field.hpp"
#include "svort/noise_model.hpp"
#include "svort/solver.hpp"

namespace svort {

enum class LatticeClosure { Absorbing, WrapAround };

// Linear ODE system for the mode energies a(k) ~ E|omega_hat(k)|^2 driven by
// the transport noise:
//
//   da(k)/dt = -2 (kappa |k|^2 + nu |k|^beta) a(k)
//              + sum_{eta in Lambda} q(eta) |P_eta k|^2 a(k + eta)
//
// on the square state lattice |n_i| <= bound. Closures:
//  - Absorbing: a = 0 outside (decaying spectra; matches the dealiased
//    solver's truncated convolution exactly).
//  - WrapAround: k + eta wraps periodically, and the kernel is symmetrized,
//    S(k,j) = q(eta) (|P_eta k|^2 + |P_eta j|^2)/2 with the loss term
//    sum_j S(k,j) replacing the literal 2 kappa |k|^2. Wrapping breaks the
//    translation identity P_eta(k+eta) = P_eta k, so only the symmetrized
//    kernel keeps sum a exactly conserved, a == const an exact fixed point,
//    and the l2 dissipation identity exact. Structural-test closure; nu = 0.
class MasterEquation {
public:
    using State = std::vector<double>;  // index (n1+bound)*(2 bound+1) + (n2+bound)

    // bound <= 0 selects the grid's full symmetric lattice N/2 - 1.
    MasterEquation(const NoiseModel& model, double nu, double beta,
                   LatticeClosure closure = LatticeClosure::Absorbing, int bound = 0);

    int bound() const { return bound_; }
    int side() const { return 2 * bound_ + 1; }
    std::size_t state_size() const { return loss_.size(); }
    std::size_t index_of(int n1, int n2) const;
    LatticeClosure closure() const { return closure_; }

    State zero_state() const { return State(state_size(), 0.0); }
    // a0(k) = |omega_hat(k)|^2 from an r2c field (mirrors filled by realness)
    State from_field(const SpectralField& omega) const;

    State rhs(const State& a) const;
    double max_rate() const { return max_rate_; }

    struct Trajectory {
        std::vector<double> times;
        std::vector<State> states;
    };
    // RK4 at fixed dt. Refuses dt > 2/max_rate; negative entries beyond
    // -1e-12 * max(a) raise a step-size error. record_stride in steps.
    Trajectory integrate(const State& a0, double horizon, double dt, int record_stride = 0) const;

    // Quadratic form Q(a) = 1/2 sum_{k,eta} S(k,j)(a(j)-a(k))^2; the exact
    // wrap-around identity is d/dt sum a^2 = -2 Q(a).
    double l2_dissipation(const State& a) const;

    static double sum(const State& a);
    static double sum_sq(const State& a);
    static double max_entry(const State& a);

private:
    const NoiseModel* model_;
    double nu_, beta_;
    LatticeClosure closure_;
    int bound_;
    double max_rate_ = 0.0;

    // CSR gain kernel: rhs(k) = -loss_[k] a[k] + sum_j w[j] a[src[j]]
    std::vector<double> loss_;
    std::vector<std::size_t> offset_;
    std::vector<int> src_;
    std::vector<double> weight_;
};

struct ComparisonReport {
    int considered = 0;  // modes with oracle energy above threshold
    int within = 0;      // |z| <= 3
    double worst_z = 0.0;
    int worst_n1 = 0, worst_n2 = 0;
    double fraction() const { return considered > 0 ? static_cast<double>(within) / considered : 1.0; }
};

// Per-mode z-scores of the ensemble second moments against the master
// equation state at the same time. Modes below threshold_frac * max(a) are
// skipped. Representatives only (n2 > 0, or n2 == 0 and n1 > 0).
ComparisonReport compare_mc(const EnsembleStats& stats, std::size_t time_index,
                            const MasterEquation& eq, const MasterEquation::State& a,
                            double threshold_frac = 1e-6);

} // namespace svort
