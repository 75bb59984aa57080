#include "svort/girsanov.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "svort/norms.hpp"
#include "svort/parallel.hpp"

namespace svort {

namespace {

// amplitude of a divergence-free field along unit(k^perp) at a half mode
cplx perp_amplitude(const SpectralVectorField& v, const NoiseMode& m) {
    const double kn = std::hypot(m.k1, m.k2);
    return (-m.k2 / kn) * v.x1.mode(m.n1, m.n2) + (m.k1 / kn) * v.x2.mode(m.n1, m.n2);
}

} // namespace

double cameron_martin_norm_sq(const SpectralField& omega, const Scheme& scheme,
                              const NoiseModel& model) {
    const Grid& g = omega.grid;
    if (!(g == model.grid()))
        throw std::invalid_argument("cameron_martin_norm_sq: field/model grid mismatch");
    const DensityFamily fam = model.density().family;

    std::function<double(double)> m;  // multiplier on |omega_hat|^2
    switch (scheme.kind) {
    case SchemeKind::Linear:
        return 0.0;
    case SchemeKind::LogEuler:
        if (fam != DensityFamily::LogEuler || model.density().gamma != scheme.gamma)
            throw std::invalid_argument(
                "cameron_martin_norm_sq: log-damped velocity map requires the logEuler "
                "covariance at the same gamma");
        m = [](double s) { return (1.0 + s * s) / (s * s); };
        break;
    case SchemeKind::HypoNS: {
        if (fam != DensityFamily::HypoNS)
            throw std::invalid_argument(
                "cameron_martin_norm_sq: Euler velocity map paired with the hypoNS covariance only");
        const double beta = model.density().beta;
        m = [beta](double s) { return std::pow(1.0 + s * s, 1.0 + 0.5 * beta) / (s * s); };
        break;
    }
    case SchemeKind::GeneralR: {
        if (!scheme.r) throw std::invalid_argument("cameron_martin_norm_sq: GeneralR needs a multiplier");
        // |h_hat| = r(s)|omega_hat|/s against q = c_norm g(s)
        const SpectralDensity den = model.density();
        auto r = scheme.r;
        m = [den, r](double s) {
            const double gs = den(s);
            if (gs <= 0.0) return -1.0;  // flagged below as singular
            return r(s) * r(s) / (s * s * gs);
        };
        break;
    }
    }

    const double c_norm = g.dk() * g.dk();
    const int n = g.n;
    const double dk = g.dk();
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const int n1 = g.mode_of(i);
        for (int j2 = 0; j2 <= n / 2; ++j2) {
            const double a2 = std::norm(omega.at(i, j2));
            if (a2 == 0.0) continue;
            if (n1 == 0 && j2 == 0)
                throw std::invalid_argument("cameron_martin_norm_sq: field must have zero mean");
            if (!model.in_lattice(n1, j2))
                throw std::domain_error(
                    "cameron_martin_norm_sq: drift has content on q = 0 modes (singular pairing)");
            const double s = std::hypot(n1 * dk, j2 * dk);
            const double mult = (j2 == 0 || j2 == n / 2) ? 1.0 : 2.0;
            const double mv = m(s);
            if (mv < 0.0)
                throw std::domain_error(
                    "cameron_martin_norm_sq: drift has content on q = 0 modes (singular pairing)");
            acc += mult * mv * a2;
        }
    }
    return acc / c_norm;
}

GirsanovAccumulator::GirsanovAccumulator(const NoiseModel& model, DensitySign sign)
    : model_(&model), sign_(sign) {}

void GirsanovAccumulator::accumulate(const SpectralVectorField& drift_velocity,
                                     const NoiseIncrement& dW, double dt) {
    const auto& half = model_->half_modes();
    if (dW.amp.size() != half.size())
        throw std::invalid_argument("girsanov: increment does not match the model");
    double si = 0.0, quad = 0.0;
    for (std::size_t i = 0; i < half.size(); ++i) {
        const NoiseMode& m = half[i];
        const cplx h = perp_amplitude(drift_velocity, m);
        if (m.q <= 0.0) {
            if (std::abs(h) > 1e-30)
                throw std::domain_error("girsanov: drift pairs with a q = 0 mode (singular pairing)");
            continue;
        }
        // conjugate pair contributes twice the real part
        si += 2.0 * (h.real() * dW.amp[i].real() + h.imag() * dW.amp[i].imag()) / m.q;
        quad += 2.0 * std::norm(h) / m.q;
    }
    si_ += si;
    quad_ += quad * dt;
}

double GirsanovAccumulator::log_density() const {
    const double s = sign_ == DensitySign::Forward ? 1.0 : -1.0;
    return s * si_ - 0.5 * quad_;
}

ReweightedEstimate reweighted_expectation(const std::vector<double>& f,
                                          const std::vector<double>& log_density) {
    const std::size_t m = f.size();
    if (m != log_density.size() || m < 2)
        throw std::invalid_argument("reweighted_expectation: need >= 2 aligned members");

    std::vector<double> w(m), fw(m);
    double sum_w = 0.0, sum_w2 = 0.0, sum_fw = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        w[i] = std::exp(log_density[i]);
        fw[i] = f[i] * w[i];
        sum_w += w[i];
        sum_w2 += w[i] * w[i];
        sum_fw += fw[i];
    }

    ReweightedEstimate est;
    est.members = static_cast<int>(m);
    est.estimate = sum_fw / m;
    est.ess = sum_w2 > 0.0 ? sum_w * sum_w / sum_w2 : 0.0;
    est.low_ess_warning = est.ess < 10.0;

    // leave-one-out jackknife of the plain mean
    double acc = 0.0;
    const double full = est.estimate;
    for (std::size_t i = 0; i < m; ++i) {
        const double loo = (sum_fw - fw[i]) / (m - 1);
        acc += (loo - full) * (loo - full);
    }
    est.stderr_jackknife = std::sqrt((m - 1.0) / m * acc);
    return est;
}

EntropyBound entropy_bound(const std::vector<double>& quadratic) {
    const std::size_t m = quadratic.size();
    if (m < 2) throw std::invalid_argument("entropy_bound: need >= 2 members");
    double mean = 0.0;
    for (double q : quadratic) mean += q;
    mean /= m;
    double var = 0.0;
    for (double q : quadratic) var += (q - mean) * (q - mean);
    var /= (m - 1.0);
    return EntropyBound{0.5 * mean, 0.5 * std::sqrt(var / m)};
}

GirsanovEnsemble girsanov_linear_ensemble(const NoiseModel& model, const SolverConfig& linear_cfg,
                                          const Scheme& target, const SpectralField& omega0,
                                          int obs_n1, int obs_n2, DensitySign sign) {
    if (linear_cfg.scheme.kind != SchemeKind::Linear)
        throw std::invalid_argument("girsanov_linear_ensemble: base run must use the Linear scheme");
    Solver solver(model, linear_cfg);
    const int mcount = linear_cfg.member_count;
    GirsanovEnsemble out;
    out.log_density.resize(static_cast<std::size_t>(mcount));
    out.quadratic.resize(static_cast<std::size_t>(mcount));
    out.f_l2sq.resize(static_cast<std::size_t>(mcount));
    out.f_mode.resize(static_cast<std::size_t>(mcount));

    // Each member writes only its own slot, so worker order cannot change the
    // output; run_member's noise stream is keyed by (seed, member, step).
    const int nblocks = std::min(16, mcount);
    run_blocks(nblocks, [&](int b) {
        const int lo = static_cast<int>(static_cast<long long>(mcount) * b / nblocks);
        const int hi = static_cast<int>(static_cast<long long>(mcount) * (b + 1) / nblocks);
        for (int m = lo; m < hi; ++m) {
            GirsanovAccumulator acc(model, sign);
            auto obs = [&](const StepContext& ctx) {
                SpectralVectorField h = scheme_drift_velocity(target, ctx.omega);
                acc.accumulate(h, ctx.increment, linear_cfg.dt);
            };
            Solver::MemberResult res = solver.run_member(omega0, m, obs);
            const std::size_t slot = static_cast<std::size_t>(m);
            out.log_density[slot] = acc.log_density();
            out.quadratic[slot] = acc.quadratic();
            const double l2 = l2_norm(res.final_state);
            out.f_l2sq[slot] = l2 * l2;
            out.f_mode[slot] = res.final_state.mode(obs_n1, obs_n2);
        }
    });
    return out;
}

} // namespace svort
