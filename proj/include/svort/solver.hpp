#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "svort/fft.hpp"
#include "svort/field.hpp"
#include "svort/noise_model.hpp"
#include "svort/operators.hpp"
#include "svort/sampler.hpp"

namespace svort {

enum class SchemeKind { Linear, LogEuler, HypoNS, GeneralR };
enum class NoiseInjection { AtLeft, Midpoint };

struct Scheme {
    SchemeKind kind = SchemeKind::Linear;
    double gamma = 1.0;                           // LogEuler velocity damping
    std::function<double(double)> r;              // GeneralR radial velocity multiplier

    static Scheme linear() { return {}; }
    static Scheme log_euler(double gamma) { return {SchemeKind::LogEuler, gamma, {}}; }
    static Scheme hypo_ns() { return {SchemeKind::HypoNS, 1.0, {}}; }
    static Scheme general(std::function<double(double)> r) {
        return {SchemeKind::GeneralR, 1.0, std::move(r)};
    }
};

// Integrated forcing: returns F with F_hat = integral of f_hat over [t0, t1].
// Null means no forcing.
using ForcingIntegral = std::function<SpectralField(double t0, double t1)>;

struct SolverConfig {
    Scheme scheme;
    double nu = 0.0;    // dissipation strength
    double beta = 1.0;  // dissipation exponent, symbol nu |k|^beta
    double dt = 1e-3;
    double horizon = 1.0;
    bool dealias = true;
    TransportForm transport = TransportForm::Conservative;
    NoiseInjection injection = NoiseInjection::Midpoint;
    bool ito_corrector = true;  // false drops kappa |k|^2 (negative control)
    double cfl_limit = 5.0;
    std::uint64_t seed = 1;
    int member_count = 1;
    int diag_stride = 1;                 // record diagnostics every this many steps
    std::vector<double> snap_times;      // trajectory snapshot times
    std::vector<double> record_times;    // ensemble statistics times (else final only)
    ForcingIntegral forcing;             // null = unforced
};

struct BlowUpError : std::runtime_error {
    explicit BlowUpError(int s)
        : std::runtime_error("non-finite state at step " + std::to_string(s)), step(s) {}
    int step;
};

struct PreflightError : std::runtime_error {
    PreflightError(double r, double lim)
        : std::runtime_error("advective CFL preflight refused: ratio " + std::to_string(r) +
                             " exceeds limit " + std::to_string(lim)),
          ratio(r) {}
    double ratio;
};

struct DiagRow {
    double t = 0.0;
    double l1 = 0.0, l2 = 0.0, l4 = 0.0;
    double hm1 = 0.0;     // Hdot^{-1} of the zero-mean part
    double hbeta2 = 0.0;  // Hdot^{beta/2}
    double logw = 0.0;    // log-weighted norm at the scheme's gamma (1 otherwise)
    double cm_integrand = 0.0;  // sum_k |b_hat(k)|^2 / q(k) over q > 0 modes
};

struct TrajectoryRecord {
    std::vector<DiagRow> rows;
    std::vector<std::pair<double, SpectralField>> snapshots;
};

// Observer sees the state and increment of every step before the update.
struct StepContext {
    int step;
    double t;
    const SpectralField& omega;
    const SpectralVectorField& drift_velocity;
    const NoiseIncrement& increment;
};
using StepObserver = std::function<void(const StepContext&)>;

struct ModeStats {
    double t = 0.0;
    std::vector<cplx> mean;        // r2c layout: Ehat[omega_hat(k)]
    std::vector<double> mean_sq;   // Ehat[|omega_hat(k)|^2]
    std::vector<double> var_sq;    // sample variance of |omega_hat(k)|^2
    std::vector<double> var_re, var_im;  // sample variances of Re/Im
};

struct EnsembleStats {
    Grid grid{8, 1.0};
    int members = 0;
    std::vector<ModeStats> at;  // one per record time (final time always last)
    std::vector<int> failed_members;
};

// Ito-form Euler-Maruyama with exact integrating factor for the linear symbol
// -(kappa |k|^2 + nu |k|^beta):
//   bracket = -T(dW, omega) - T(b, omega) dt + integral of f_hat dt
//   Midpoint: omega' = E omega + sqrt(E) bracket
//   AtLeft:   omega' = E (omega + bracket)
// b is the scheme's velocity map of omega (zero for Linear); T is the
// configured transport form; the mean mode is exactly invariant.
class Solver {
public:
    Solver(const NoiseModel& model, SolverConfig cfg);

    const SolverConfig& config() const { return cfg_; }
    const NoiseModel& model() const { return *model_; }

    // max(|b| dt + 3 E-max|dW|) / h; used by the preflight refusal and manifest
    double preflight_ratio(const SpectralField& omega0) const;

    SpectralVectorField drift_velocity(const SpectralField& omega) const;

    SpectralField step(const SpectralField& omega, double t, const NoiseIncrement& dW,
                       Fft& fft, int step_index = 0) const;

    struct MemberResult {
        SpectralField final_state;
        TrajectoryRecord record;
    };
    MemberResult run_member(const SpectralField& omega0, int member,
                            const StepObserver& obs = {}) const;

    EnsembleStats run_ensemble(const SpectralField& omega0) const;

private:
    DiagRow diagnostics(double t, const SpectralField& omega,
                        const SpectralVectorField& b) const;

    const NoiseModel* model_;
    SolverConfig cfg_;
    int steps_;
};

// Velocity map of a scheme applied to a vorticity state (zero for Linear).
SpectralVectorField scheme_drift_velocity(const Scheme& scheme, const SpectralField& omega);

// Initial-data generators (all zero-mean, Nyquist-free).
SpectralField single_mode_data(const Grid& g, int n1, int n2, double amplitude);
SpectralField random_band_data(const Grid& g, double nmin, double nmax, double amplitude,
                               std::uint64_t seed);

} // namespace svort
