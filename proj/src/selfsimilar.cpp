#include "svort/selfsimilar.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "svort/norms.hpp"
#include "svort/operators.hpp"

namespace svort {

namespace {

// 16-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr double kGl16[16][2] = {
    {-0.98940093499164994, 0.027152459411754037},
    {-0.9445750230732326, 0.062253523938647706},
    {-0.86563120238783176, 0.095158511682492591},
    {-0.755404408355003, 0.12462897125553403},
    {-0.61787624440264377, 0.14959598881657676},
    {-0.45801677765722737, 0.16915651939500262},
    {-0.28160355077925892, 0.18260341504492361},
    {-0.095012509837637454, 0.18945061045506859},
    {0.095012509837637454, 0.18945061045506859},
    {0.28160355077925892, 0.18260341504492361},
    {0.45801677765722737, 0.16915651939500262},
    {0.61787624440264377, 0.14959598881657676},
    {0.755404408355003, 0.12462897125553403},
    {0.86563120238783176, 0.095158511682492591},
    {0.9445750230732326, 0.062253523938647706},
    {0.98940093499164994, 0.027152459411754037},
};

void check_support(const SimilarityProfile& prof, double t, const Grid& grid) {
    if (!(t > 0.0)) throw std::invalid_argument("background time must be positive");
    const double radius = std::pow(t, 1.0 / prof.alpha) * prof.support_radius();
    if (!(radius < 0.5 * grid.length))
        throw std::domain_error("self-similar support does not fit in half the period");
}

// d/dx_axis as a spectral multiplier i k_axis; Nyquist row/column zeroed
// (the i k factor is ill-defined there for real fields).
SpectralField spectral_derivative(const SpectralField& w, int axis) {
    SpectralField out = w;
    const Grid& g = out.grid;
    const double dk = g.dk();
    const int cols = g.n / 2 + 1;
    for (int i = 0; i < g.n; ++i) {
        const int n1 = g.mode_of(i);
        for (int j2 = 0; j2 < cols; ++j2) {
            cplx& c = out.coeff[static_cast<std::size_t>(i) * cols + j2];
            if (std::abs(n1) == g.n / 2 || j2 == g.n / 2) {
                c = 0.0;
                continue;
            }
            const double k = dk * (axis == 0 ? n1 : j2);
            c *= cplx(0.0, k);
        }
    }
    return out;
}

struct AdvectionParts {
    ScalarField adv;
    double u_norm = 0;
    double grad_norm = 0;
    double adv_norm = 0;
};

// u.grad w for u = curl^{-1} w, evaluated pointwise on the grid.
// The mean mode of the input must already be stripped.
AdvectionParts compute_advection(const SpectralField& what, Fft& fft) {
    const Grid g = what.grid;
    SpectralVectorField u = biot_savart(what);
    ScalarField u1 = fft.backward(u.x1);
    ScalarField u2 = fft.backward(u.x2);
    ScalarField g1 = fft.backward(spectral_derivative(what, 0));
    ScalarField g2 = fft.backward(spectral_derivative(what, 1));

    AdvectionParts parts;
    parts.adv = ScalarField(g);
    const double cell = g.spacing() * g.spacing();
    double su = 0, sg = 0, sa = 0;
    for (std::size_t i = 0; i < parts.adv.values.size(); ++i) {
        const double a = u1.values[i] * g1.values[i] + u2.values[i] * g2.values[i];
        parts.adv.values[i] = a;
        su += u1.values[i] * u1.values[i] + u2.values[i] * u2.values[i];
        sg += g1.values[i] * g1.values[i] + g2.values[i] * g2.values[i];
        sa += a * a;
    }
    parts.u_norm = std::sqrt(cell * su);
    parts.grad_norm = std::sqrt(cell * sg);
    parts.adv_norm = std::sqrt(cell * sa);
    return parts;
}

double mixed_lp(const ScalarField& gf, const ScalarField& hf, double s, int p) {
    const double cell = gf.grid.spacing() * gf.grid.spacing();
    double acc = 0;
    for (std::size_t i = 0; i < gf.values.size(); ++i) {
        const double v = -gf.values[i] + s * hf.values[i];
        const double a = std::abs(v);
        switch (p) {
            case 1: acc += a; break;
            case 2: acc += a * a; break;
            case 3: acc += a * a * a; break;
            case 4: acc += (a * a) * (a * a); break;
            default: acc += std::pow(a, p); break;
        }
    }
    return std::pow(cell * acc, 1.0 / p);
}

ShellLabel closed_label(double lhs, double rhs) {
    if (lhs < rhs) return ShellLabel::Convergent;
    if (lhs == rhs) return ShellLabel::Logarithmic;
    return ShellLabel::Divergent;
}

}  // namespace

// ============================================================
// Profile
// ============================================================

void SimilarityProfile::validate() const {
    if (!(beta > 0.0 && beta < alpha && alpha < 2.0))
        throw std::invalid_argument("similarity exponents must satisfy 0 < beta < alpha < 2");
    if (!(inner_radius > 0.0 && inner_radius < outer_radius))
        throw std::invalid_argument("bump radii must satisfy 0 < inner < outer");
    if (!(sharpness > 0.0)) throw std::invalid_argument("bump sharpness must be positive");
    if (!std::isfinite(amplitude)) throw std::invalid_argument("amplitude must be finite");
}

double SimilarityProfile::cancel_coeff() const {
    const double ratio = inner_radius / outer_radius;
    return ratio * ratio;
}

double SimilarityProfile::bump(double u) const {
    const double u2 = u * u;
    if (u2 >= 1.0) return 0.0;
    return std::exp(-sharpness / (1.0 - u2));
}

double SimilarityProfile::bump_deriv(double u) const {
    const double u2 = u * u;
    if (u2 >= 1.0) return 0.0;
    const double d = 1.0 - u2;
    return std::exp(-sharpness / d) * (-2.0 * sharpness * u / (d * d));
}

double SimilarityProfile::value(double r) const {
    return amplitude * (bump(r / inner_radius) - cancel_coeff() * bump(r / outer_radius));
}

double SimilarityProfile::radial_term(double r) const {
    const double u1 = r / inner_radius;
    const double u2 = r / outer_radius;
    return amplitude * (u1 * bump_deriv(u1) - cancel_coeff() * u2 * bump_deriv(u2));
}

double SimilarityProfile::g_value(double r) const {
    return value(r) + radial_term(r) / alpha;
}

// ============================================================
// Sampled fields
// ============================================================

ScalarField sample_radial(const Grid& grid,
                          const std::function<double(double)>& radial) {
    ScalarField out(grid);
    const double c = 0.5 * grid.length;
    for (int i = 0; i < grid.n; ++i) {
        const double x = grid.coord(i) - c;
        for (int j = 0; j < grid.n; ++j) {
            const double y = grid.coord(j) - c;
            out.at(i, j) = radial(std::hypot(x, y));
        }
    }
    return out;
}

ScalarField background(const SimilarityProfile& prof, double t, const Grid& grid) {
    prof.validate();
    check_support(prof, t, grid);
    const double inv_t = 1.0 / t;
    const double lam = std::pow(t, -1.0 / prof.alpha);
    return sample_radial(grid, [&](double r) { return inv_t * prof.value(lam * r); });
}

ScalarField background_time_derivative(const SimilarityProfile& prof, double t,
                                       const Grid& grid) {
    prof.validate();
    check_support(prof, t, grid);
    const double c = -1.0 / (t * t);
    const double lam = std::pow(t, -1.0 / prof.alpha);
    return sample_radial(grid, [&](double r) { return c * prof.g_value(lam * r); });
}

ScalarField forcing_field(const SimilarityProfile& prof, double t,
                          const Grid& grid, Fft& fft) {
    ScalarField out = background_time_derivative(prof, t, grid);
    SpectralField what = fft.forward(background(prof, t, grid));
    ScalarField diss = fft.backward(frac_laplacian(what, prof.beta));
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += diss.values[i];
    return out;
}

ForcingIntegral forcing_integral(const SimilarityProfile& prof, const Grid& grid,
                                 double t_start) {
    prof.validate();
    if (!(t_start > 0.0)) throw std::invalid_argument("forcing start time must be positive");
    auto fft = std::make_shared<Fft>(grid);
    return [prof, grid, t_start, fft](double t0, double t1) {
        const double tm = t_start + 0.5 * (t0 + t1);
        SpectralField fhat = fft->forward(forcing_field(prof, tm, grid, *fft));
        fhat.coeff[0] = 0.0;  // continuum mean is zero; drop the sampling residue
        for (cplx& c : fhat.coeff) c *= (t1 - t0);
        return fhat;
    };
}

// ============================================================
// Predicates and shell classifier
// ============================================================

IntegrabilityFlags integrability_predicates(double alpha, double beta, int p) {
    if (!(beta > 0.0 && beta < alpha && alpha < 2.0))
        throw std::invalid_argument("predicates require 0 < beta < alpha < 2");
    if (p < 1) throw std::invalid_argument("p must be >= 1");
    IntegrabilityFlags flags;
    flags.omega_l2_lp = alpha < 4.0 / p;
    flags.omega_l2_hbeta2 = alpha + beta < 2.0;
    flags.f_l1_lp = alpha < 2.0 / p && beta < 2.0 / p;
    // p = 2 conjunction: alpha < 2, alpha + beta < 2, alpha and beta < 1.
    flags.full = alpha < 2.0 && alpha + beta < 2.0 && alpha < 1.0 && beta < 1.0;
    return flags;
}

const char* label_name(ShellLabel label) {
    switch (label) {
        case ShellLabel::Convergent: return "convergent";
        case ShellLabel::Logarithmic: return "logarithmic";
        default: return "divergent";
    }
}

double shell_ratio(const std::function<double(double)>& integrand) {
    constexpr double lam = 4.0;
    constexpr int shells = 14;
    const double lnl = std::log(lam);
    double prev = 0, last = 0;
    for (int j = 0; j < shells; ++j) {
        const double a = -(j + 1) * lnl;  // log of shell endpoints
        const double b = -j * lnl;
        double mass = 0;
        for (const auto& nw : kGl16) {
            const double t = std::exp(0.5 * (b - a) * nw[0] + 0.5 * (a + b));
            mass += 0.5 * (b - a) * nw[1] * t * integrand(t);
        }
        prev = last;
        last = mass;
    }
    return last / prev;
}

ShellLabel classify_ratio(double rho) {
    if (rho < 0.95) return ShellLabel::Convergent;
    if (rho <= 1.05) return ShellLabel::Logarithmic;
    return ShellLabel::Divergent;
}

double fitted_power(double rho) { return -std::log(rho) / std::log(4.0); }

bool ShellReport::agree() const {
    return omega_numeric == omega_closed && energy_numeric == energy_closed &&
           forcing_numeric == forcing_closed;
}

ShellClassifier::ShellClassifier(const SimilarityProfile& prof, const Grid& grid, Fft& fft)
    : prof_(prof), grid_(grid), omega_(grid), g_field_(grid), h_field_(grid) {
    prof.validate();
    check_support(prof, 1.0, grid);
    omega_ = sample_radial(grid, [&](double r) { return prof_.value(r); });
    g_field_ = sample_radial(grid, [&](double r) { return prof_.g_value(r); });
    SpectralField what = fft.forward(omega_);
    h_field_ = fft.backward(frac_laplacian(what, prof_.beta));
    hdot_seminorm_ = sobolev_norm(what, 0.5 * prof_.beta);
}

double ShellClassifier::omega_integrand(double t, int p) const {
    const double v = std::pow(t, -1.0 + 2.0 / (prof_.alpha * p)) * lp_norm(omega_, p);
    return v * v;
}

double ShellClassifier::energy_integrand(double t) const {
    const double e = -1.0 + (2.0 - prof_.beta) / (2.0 * prof_.alpha);
    const double v = std::pow(t, e) * hdot_seminorm_;
    return v * v;
}

double ShellClassifier::forcing_integrand(double t, int p) const {
    const double s = std::pow(t, 1.0 - prof_.beta / prof_.alpha);
    return std::pow(t, -2.0 + 2.0 / (prof_.alpha * p)) * mixed_lp(g_field_, h_field_, s, p);
}

ShellReport ShellClassifier::report(int p) const {
    if (p < 1) throw std::invalid_argument("p must be >= 1");
    const double alpha = prof_.alpha;
    const double beta = prof_.beta;

    ShellReport rep;
    rep.omega_ratio = shell_ratio([&](double t) { return omega_integrand(t, p); });
    rep.energy_ratio = shell_ratio([&](double t) { return energy_integrand(t); });
    rep.forcing_ratio = shell_ratio([&](double t) { return forcing_integrand(t, p); });
    rep.omega_numeric = classify_ratio(rep.omega_ratio);
    rep.energy_numeric = classify_ratio(rep.energy_ratio);
    rep.forcing_numeric = classify_ratio(rep.forcing_ratio);
    rep.omega_closed = closed_label(alpha, 4.0 / p);
    rep.energy_closed = closed_label(alpha + beta, 2.0);
    // beta < alpha, so the time-derivative piece dominates the f integrand.
    rep.forcing_closed = closed_label(alpha, 2.0 / p);
    return rep;
}

// ============================================================
// Residuals
// ============================================================

double transport_residual(const ScalarField& w, Fft& fft) {
    SpectralField what = fft.forward(w);
    what.coeff[0] = 0.0;
    drop_nyquist(what);
    AdvectionParts parts = compute_advection(what, fft);
    const double denom = parts.u_norm * parts.grad_norm;
    return denom > 0.0 ? parts.adv_norm / denom : 0.0;
}

ResidualReport residual(const SimilarityProfile& prof, double t, double dt_fd,
                        const Grid& grid, Fft& fft) {
    if (!(dt_fd > 0.0 && t - dt_fd > 0.0))
        throw std::invalid_argument("central difference needs 0 < dt_fd < t");

    ScalarField w = background(prof, t, grid);
    SpectralField what = fft.forward(w);
    what.coeff[0] = 0.0;
    drop_nyquist(what);
    AdvectionParts parts = compute_advection(what, fft);

    ScalarField lap = fft.backward(frac_laplacian(fft.forward(w), prof.beta));
    ScalarField wp = background(prof, t + dt_fd, grid);
    ScalarField wm = background(prof, t - dt_fd, grid);
    ScalarField f = forcing_field(prof, t, grid, fft);

    const double cell = grid.spacing() * grid.spacing();
    double acc = 0;
    for (std::size_t i = 0; i < w.values.size(); ++i) {
        const double ddt = (wp.values[i] - wm.values[i]) / (2.0 * dt_fd);
        const double r = ddt + parts.adv.values[i] + lap.values[i] - f.values[i];
        acc += r * r;
    }

    ResidualReport rep;
    const double denom = parts.u_norm * parts.grad_norm;
    rep.transport_rel = denom > 0.0 ? parts.adv_norm / denom : 0.0;
    rep.pde_residual = std::sqrt(cell * acc);
    return rep;
}

ScalarField elliptical_control(const SimilarityProfile& prof, const Grid& grid,
                               double stretch) {
    prof.validate();
    if (!(stretch > 0.0)) throw std::invalid_argument("stretch must be positive");
    const double reach = prof.support_radius() * std::max(stretch, 1.0 / stretch);
    if (!(reach < 0.5 * grid.length))
        throw std::domain_error("stretched support does not fit in half the period");
    ScalarField out(grid);
    const double c = 0.5 * grid.length;
    const double cc = prof.cancel_coeff();
    for (int i = 0; i < grid.n; ++i) {
        const double x = grid.coord(i) - c;
        for (int j = 0; j < grid.n; ++j) {
            const double y = grid.coord(j) - c;
            const double r = std::hypot(x / stretch, y * stretch);
            out.at(i, j) = prof.amplitude *
                           (prof.bump(r / prof.inner_radius) - cc * prof.bump(r / prof.outer_radius));
        }
    }
    return out;
}

}  // namespace svort
