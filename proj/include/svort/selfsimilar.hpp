#pragma once

#include <functional>

#include "svort/fft.hpp"
#include "svort/field.hpp"
#include "svort/solver.hpp"

namespace svort {

// ============================================================
// Self-similar scenario: scaled radial profiles, the forcing that
// makes them exact solutions, and integrability diagnostics
// ============================================================

// Annular sign-changing bump
//   W(r) = A [ phi(r/r1) - c phi(r/r2) ],   phi(u) = exp(-s/(1-u^2)) on |u|<1,
// with c = (r1/r2)^2 so the integral over the plane vanishes exactly.
// The scaled field w_t(x) = t^{-1} W(t^{-1/alpha} x) solves
//   dw/dt + u.grad w + Lambda^beta w = f
// for the forcing assembled in forcing_field(); radial symmetry kills the
// transport term in the continuum.
struct SimilarityProfile {
    double alpha = 1.0;        // similarity exponent, beta < alpha < 2
    double beta  = 0.5;        // dissipation order, 0 < beta < alpha
    double amplitude = 1.0;
    double inner_radius = 1.2;
    double outer_radius = 2.4;
    double sharpness = 3.0;    // s in phi(u) = exp(-s/(1-u^2))

    void validate() const;

    // (r1/r2)^2; makes the plane integral of the profile zero exactly.
    double cancel_coeff() const;
    double support_radius() const { return outer_radius; }

    double bump(double u) const;        // phi(u)
    double bump_deriv(double u) const;  // phi'(u)
    double value(double r) const;       // W(r)
    double radial_term(double r) const; // r W'(r)
    double g_value(double r) const;     // W + (1/alpha) r W'
};

// Samples radial(|x - center|) on the grid, centered at (L/2, L/2).
ScalarField sample_radial(const Grid& grid,
                          const std::function<double(double)>& radial);

// w_t(x) = t^{-1} W(t^{-1/alpha}|x - center|).
// Requires t > 0 and t^{1/alpha} * support_radius < L/2 (fits the torus).
ScalarField background(const SimilarityProfile& prof, double t, const Grid& grid);

// Closed-form d/dt of the background: -t^{-2} [W + (1/alpha) r W'](t^{-1/alpha} .).
ScalarField background_time_derivative(const SimilarityProfile& prof, double t,
                                       const Grid& grid);

// f_t = d/dt w_t + Lambda^beta w_t; the dissipative part is evaluated
// spectrally on the sampled background (equivalent to rescaling the
// unit-scale symbol by the fractional-Laplacian scaling identity).
ScalarField forcing_field(const SimilarityProfile& prof, double t,
                          const Grid& grid, Fft& fft);

// Midpoint-rule forcing integral for the solver: over [t0,t1] returns
// f_hat(t_start + (t0+t1)/2) * (t1-t0), mean mode dropped.
ForcingIntegral forcing_integral(const SimilarityProfile& prof, const Grid& grid,
                                 double t_start);

// ============================================================
// Closed-form integrability predicates on t in (0,1]
// ============================================================

struct IntegrabilityFlags {
    bool omega_l2_lp;      // ||w_t||_Lp in L^2(dt)      iff alpha < 4/p
    bool omega_l2_hbeta2;  // ||w_t||_{H^{beta/2}} in L^2 iff alpha + beta < 2
    bool f_l1_lp;          // ||f_t||_Lp in L^1(dt)      iff alpha < 2/p and beta < 2/p
    bool full;             // conjunction at p=2; with beta < alpha this is alpha < 1
};

// Requires 0 < beta < alpha < 2 and p >= 1.
IntegrabilityFlags integrability_predicates(double alpha, double beta, int p);

// ============================================================
// Numeric confirmation by geometric-shell quadrature
// ============================================================

enum class ShellLabel { Convergent, Logarithmic, Divergent };
const char* label_name(ShellLabel label);

// Shell masses m_j = int over t in [4^-(j-13)... ] -- specifically shells
// [4^{-(j+1)}, 4^{-j}], j = 0..13, by 16-point Gauss-Legendre in log t.
// Returns m_13 / m_12; for integrand ~ t^e the ratio tends to 4^{-(e+1)}.
double shell_ratio(const std::function<double(double)>& integrand);

// < 0.95 convergent, <= 1.05 logarithmic, above power-divergent.
ShellLabel classify_ratio(double rho);

// Estimates e+1 for integrand ~ t^e from the final shell ratio.
double fitted_power(double rho);

struct ShellReport {
    ShellLabel omega_numeric, energy_numeric, forcing_numeric;
    ShellLabel omega_closed, energy_closed, forcing_closed;
    double omega_ratio = 0, energy_ratio = 0, forcing_ratio = 0;
    bool agree() const;
};

// Precomputes the unit-scale grid fields needed by the shell integrands:
//   W, G = W + (1/alpha) r W', H = Lambda^beta W, and the H^{beta/2} seminorm.
// The forcing integrand uses the mixed profile ||-G + s(t) H||_Lp with
// s(t) = t^{1 - beta/alpha}, so the classifier sees the genuine t-dependent
// norm rather than a hand-fed power law.
class ShellClassifier {
  public:
    ShellClassifier(const SimilarityProfile& prof, const Grid& grid, Fft& fft);

    ShellReport report(int p) const;

    // Shell integrands as functions of t:
    //   omega:   (t^{-1+2/(alpha p)} ||W||_p)^2
    //   energy:  (t^{-1+(2-beta)/(2 alpha)} |W|_{H^{beta/2}})^2
    //   forcing: t^{-2+2/(alpha p)} ||-G + s(t) H||_p,  s(t) = t^{1-beta/alpha}
    double omega_integrand(double t, int p) const;
    double energy_integrand(double t) const;
    double forcing_integrand(double t, int p) const;

    const ScalarField& g_field() const { return g_field_; }
    const ScalarField& h_field() const { return h_field_; }
    double hdot_seminorm() const { return hdot_seminorm_; }

  private:
    SimilarityProfile prof_;
    Grid grid_;
    ScalarField omega_;
    ScalarField g_field_;
    ScalarField h_field_;
    double hdot_seminorm_ = 0;
};

// ============================================================
// Residual diagnostics
// ============================================================

// || u.grad w ||_2 / (||u||_2 ||grad w||_2) with u = curl^{-1} w; the mean
// mode is stripped before inversion (it contributes to neither factor).
double transport_residual(const ScalarField& w, Fft& fft);

struct ResidualReport {
    double transport_rel = 0;  // relative advection residual at time t
    double pde_residual = 0;   // || dw/dt(central diff) + u.grad w + Lambda^beta w - f ||_2
};

// Central time difference with half-width dt_fd; requires t - dt_fd > 0.
ResidualReport residual(const SimilarityProfile& prof, double t, double dt_fd,
                        const Grid& grid, Fft& fft);

// Non-radial negative control: same annular bump on stretched coordinates
// hypot(x/stretch, stretch*y); area-preserving, so the mean stays near zero.
ScalarField elliptical_control(const SimilarityProfile& prof, const Grid& grid,
                               double stretch);

}  // namespace svort
