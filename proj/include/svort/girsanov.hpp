#pragma once

#include <cstdint>
#include <vector>

#include "svort/field.hpp"
#include "svort/noise_model.hpp"
#include "svort/sampler.hpp"
#include "svort/solver.hpp"

namespace svort {

// Sign of h in the exponential density: Forward reweights the linear law to
// the nonlinear one, E_NL[F] = E_L[F * density]; Reverse uses -h.
enum class DensitySign { Forward, Reverse };

// Closed-form Cameron-Martin norm of the scheme drift h = R curl^{-1} omega
// against the model's covariance:
//   ||h||_H^2 = sum_{k in Lambda} |h_hat(k)|^2 / q(k)
//             = sum_{k != 0} m(k) |omega_hat(k)|^2 / c_norm,
// with m(k) = (1+|k|^2)/|k|^2 for the log-damped velocity map (the gamma
// factors cancel against q exactly), m(k) = (1+|k|^2)^{1+beta/2}/|k|^2 for the
// hypodissipative one. GeneralR is evaluated generically from r and q. Throws
// if the scheme's velocity map does not match the model driving the run
// (family or parameter mismatch), or if omega has content on q = 0 modes.
double cameron_martin_norm_sq(const SpectralField& omega, const Scheme& scheme,
                              const NoiseModel& model);

// Running log-density along one path:
//   log E_T = sign * sum_steps sum_k Re[conj(h_hat(k)) dW_hat(k)] / q(k)
//           - 1/2 sum_steps ||h||_H^2 dt,
// h evaluated at the left point (Ito convention), paired mode-wise with the
// exact increments the solver consumed.
class GirsanovAccumulator {
public:
    explicit GirsanovAccumulator(const NoiseModel& model, DensitySign sign = DensitySign::Forward);

    // drift_velocity: spectral h at the pre-step state; dW: the step's increment
    void accumulate(const SpectralVectorField& drift_velocity, const NoiseIncrement& dW, double dt);

    double stochastic_integral() const { return si_; }
    double quadratic() const { return quad_; }
    double log_density() const;
    DensitySign sign() const { return sign_; }

private:
    const NoiseModel* model_;
    DensitySign sign_;
    double si_ = 0.0;
    double quad_ = 0.0;
};

struct ReweightedEstimate {
    double estimate = 0.0;
    double stderr_jackknife = 0.0;
    double ess = 0.0;  // (sum w)^2 / sum w^2
    bool low_ess_warning = false;
    int members = 0;
};

// (1/M) sum F_m exp(log_density_m), jackknife standard error, effective
// sample size of the weights; warns when ESS < 10.
ReweightedEstimate reweighted_expectation(const std::vector<double>& f,
                                          const std::vector<double>& log_density);

struct EntropyBound {
    double value = 0.0;    // (1/2) mean of the accumulated quadratic at T
    double stderr_ = 0.0;
};
EntropyBound entropy_bound(const std::vector<double>& quadratic);

// Linear-ensemble driver: runs M linear members, accumulates the density of
// the target scheme's drift along each path, and records the observables
// F = ||omega_T||_L2^2 and omega_hat_T(obs mode).
struct GirsanovEnsemble {
    std::vector<double> log_density;
    std::vector<double> quadratic;
    std::vector<double> f_l2sq;
    std::vector<cplx> f_mode;
};
GirsanovEnsemble girsanov_linear_ensemble(const NoiseModel& model, const SolverConfig& linear_cfg,
                                          const Scheme& target, const SpectralField& omega0,
                                          int obs_n1, int obs_n2,
                                          DensitySign sign = DensitySign::Forward);

} // namespace svort
