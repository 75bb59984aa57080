#include "svort/solver.hpp"

#include <algorithm>
#include <cmath>

#include "svort/norms.hpp"
#include "svort/parallel.hpp"
#include "svort/rng.hpp"

namespace svort {

namespace {

bool finite(const SpectralField& f) {
    for (const cplx& c : f.coeff)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    return true;
}

double max_abs(const ScalarField& f) {
    double m = 0.0;
    for (double v : f.values) m = std::max(m, std::abs(v));
    return m;
}

} // namespace

Solver::Solver(const NoiseModel& model, SolverConfig cfg) : model_(&model), cfg_(std::move(cfg)) {
    if (!(cfg_.dt > 0.0)) throw std::invalid_argument("solver: dt must be > 0");
    if (!(cfg_.horizon >= 0.0)) throw std::invalid_argument("solver: horizon must be >= 0");
    if (cfg_.nu < 0.0) throw std::invalid_argument("solver: nu must be >= 0");
    if (cfg_.nu > 0.0 && !(cfg_.beta > 0.0 && cfg_.beta <= 2.0))
        throw std::invalid_argument("solver: dissipation exponent must be in (0,2]");
    if (cfg_.scheme.kind == SchemeKind::GeneralR && !cfg_.scheme.r)
        throw std::invalid_argument("solver: GeneralR scheme needs a multiplier");
    const double steps_real = cfg_.horizon / cfg_.dt;
    steps_ = static_cast<int>(std::llround(steps_real));
    if (std::abs(steps_real - steps_) > 1e-9 * std::max(1.0, steps_real))
        throw std::invalid_argument("solver: horizon must be an integral number of steps");
}

SpectralVectorField scheme_drift_velocity(const Scheme& scheme, const SpectralField& omega) {
    switch (scheme.kind) {
    case SchemeKind::Linear: {
        return SpectralVectorField{SpectralField(omega.grid), SpectralField(omega.grid)};
    }
    case SchemeKind::LogEuler: {
        SpectralVectorField u = biot_savart(omega);
        u.x1 = mult_t_gamma(std::move(u.x1), scheme.gamma);
        u.x2 = mult_t_gamma(std::move(u.x2), scheme.gamma);
        return u;
    }
    case SchemeKind::HypoNS:
        return biot_savart(omega);
    case SchemeKind::GeneralR: {
        SpectralVectorField u = biot_savart(omega);
        apply_radial_multiplier(u.x1, scheme.r);
        apply_radial_multiplier(u.x2, scheme.r);
        return u;
    }
    }
    throw std::logic_error("unreachable");
}

SpectralVectorField Solver::drift_velocity(const SpectralField& omega) const {
    return scheme_drift_velocity(cfg_.scheme, omega);
}

double Solver::preflight_ratio(const SpectralField& omega0) const {
    const Grid& g = omega0.grid;
    Fft fft(g);
    double max_b = 0.0;
    if (cfg_.scheme.kind != SchemeKind::Linear) {
        SpectralVectorField b = drift_velocity(omega0);
        max_b = std::max(max_abs(fft.backward(b.x1)), max_abs(fft.backward(b.x2)));
    }
    // expected max of N^2 centered Gaussians with per-component variance
    // 2 kappa dt: sigma sqrt(2 log N^2), doubled for the two components
    const double sigma = std::sqrt(4.0 * model_->kappa() * cfg_.dt);
    const double e_max_dw = sigma * std::sqrt(2.0 * std::log(static_cast<double>(g.size())));
    return (max_b * cfg_.dt + 3.0 * e_max_dw) / g.spacing();
}

SpectralField Solver::step(const SpectralField& omega, double t, const NoiseIncrement& dW,
                           Fft& fft, int step_index) const {
    const Grid& g = omega.grid;
    const cplx mean = omega.at(0, 0);

    // bracket = -T(dW, omega) - T(b, omega) dt + int f_hat dt
    SpectralVectorField wfield = spectral_increment(*model_, dW);
    SpectralField bracket = transport_term(wfield, omega, fft, cfg_.transport, cfg_.dealias);
    for (cplx& c : bracket.coeff) c = -c;

    if (cfg_.scheme.kind != SchemeKind::Linear) {
        SpectralVectorField b = drift_velocity(omega);
        SpectralField tb = transport_term(b, omega, fft, cfg_.transport, cfg_.dealias);
        for (std::size_t i = 0; i < bracket.coeff.size(); ++i)
            bracket.coeff[i] -= cfg_.dt * tb.coeff[i];
    }
    if (cfg_.forcing) {
        SpectralField fint = cfg_.forcing(t, t + cfg_.dt);
        if (cfg_.dealias) dealias_23(fint);
        drop_nyquist(fint);
        for (std::size_t i = 0; i < bracket.coeff.size(); ++i)
            bracket.coeff[i] += fint.coeff[i];
    }

    const double kappa = cfg_.ito_corrector ? model_->kappa() : 0.0;
    SpectralField out(g);
    const int n = g.n;
    const double dk = g.dk();
    for (int i = 0; i < n; ++i) {
        const double k1 = g.mode_of(i) * dk;
        for (int j2 = 0; j2 <= n / 2; ++j2) {
            const double k2 = j2 * dk;
            const double kk = k1 * k1 + k2 * k2;
            double rate = kappa * kk;
            if (cfg_.nu > 0.0 && kk > 0.0) rate += cfg_.nu * std::pow(kk, 0.5 * cfg_.beta);
            const double e = std::exp(-rate * cfg_.dt);
            const double einj = cfg_.injection == NoiseInjection::Midpoint ? std::sqrt(e) : e;
            out.at(i, j2) = e * omega.at(i, j2) + einj * bracket.at(i, j2);
        }
    }
    out.at(0, 0) = mean;

    if (!finite(out)) throw BlowUpError(step_index);
    return out;
}

DiagRow Solver::diagnostics(double t, const SpectralField& omega,
                            const SpectralVectorField& b) const {
    DiagRow d;
    d.t = t;
    Fft fft(omega.grid);
    ScalarField w = fft.backward(omega);
    d.l1 = lp_norm(w, 1.0);
    d.l2 = l2_norm(omega);
    d.l4 = lp_norm(w, 4.0);
    d.hm1 = sobolev_norm(omega, -1.0);
    d.hbeta2 = sobolev_norm(omega, 0.5 * cfg_.beta);
    d.logw = log_weighted_norm(omega, cfg_.scheme.kind == SchemeKind::LogEuler ? cfg_.scheme.gamma : 1.0);

    if (cfg_.scheme.kind != SchemeKind::Linear) {
        // Cameron-Martin integrand sum_{k in Lambda} |b_hat(k)|^2 / q(k);
        // restricted to q > 0 modes (the reweighting module enforces the
        // strict singular-pairing rule).
        double acc = 0.0;
        for (const NoiseMode& m : model_->half_modes()) {
            if (m.q <= 0.0) continue;
            const double kn = std::hypot(m.k1, m.k2);
            const cplx amp = (-m.k2 / kn) * b.x1.mode(m.n1, m.n2) + (m.k1 / kn) * b.x2.mode(m.n1, m.n2);
            acc += 2.0 * std::norm(amp) / m.q;
        }
        d.cm_integrand = acc;
    }
    return d;
}

Solver::MemberResult Solver::run_member(const SpectralField& omega0, int member,
                                        const StepObserver& obs) const {
    const Grid& g = omega0.grid;
    Fft fft(g);
    SpectralField omega = omega0;
    if (cfg_.dealias) dealias_23(omega);
    drop_nyquist(omega);

    const double ratio = preflight_ratio(omega);
    if (ratio > cfg_.cfl_limit) throw PreflightError(ratio, cfg_.cfl_limit);

    MemberResult res{SpectralField(g), {}};
    auto maybe_snapshot = [&](double t, const SpectralField& st) {
        for (double ts : cfg_.snap_times)
            if (std::abs(ts - t) < 0.5 * cfg_.dt) res.record.snapshots.emplace_back(t, st);
    };

    SpectralVectorField b = drift_velocity(omega);
    res.record.rows.push_back(diagnostics(0.0, omega, b));
    maybe_snapshot(0.0, omega);

    for (int s = 0; s < steps_; ++s) {
        const double t = s * cfg_.dt;
        RngStream rng(cfg_.seed, static_cast<std::uint64_t>(member), static_cast<std::uint64_t>(s));
        NoiseIncrement dW = sample_increment(*model_, cfg_.dt, rng);
        if (obs) {
            b = drift_velocity(omega);
            obs(StepContext{s, t, omega, b, dW});
        }
        omega = step(omega, t, dW, fft, s);
        const double tn = (s + 1) * cfg_.dt;
        if ((s + 1) % cfg_.diag_stride == 0 || s + 1 == steps_) {
            b = drift_velocity(omega);
            res.record.rows.push_back(diagnostics(tn, omega, b));
        }
        maybe_snapshot(tn, omega);
    }
    res.final_state = std::move(omega);
    return res;
}

namespace {

// Per-block partial sums for the ensemble reduction.  Workers own exactly one
// of these, so the parallel section needs no locks; merging them in block
// index order keeps the final statistics bit-identical for a fixed member
// count, whatever the thread count.
struct EnsembleAcc {
    std::vector<std::vector<cplx>> sum_c;
    std::vector<std::vector<double>> sum_re2, sum_im2, sum_sq, sum_sq2;
    std::vector<int> failed;
    int ok = 0;

    EnsembleAcc(std::size_t nt, std::size_t nc)
        : sum_c(nt, std::vector<cplx>(nc, cplx(0.0))),
          sum_re2(nt, std::vector<double>(nc, 0.0)),
          sum_im2(nt, std::vector<double>(nc, 0.0)),
          sum_sq(nt, std::vector<double>(nc, 0.0)),
          sum_sq2(nt, std::vector<double>(nc, 0.0)) {}

    void deposit(std::size_t r, const SpectralField& omega) {
        const std::size_t nc = sum_c[r].size();
        for (std::size_t i = 0; i < nc; ++i) {
            const cplx c = omega.coeff[i];
            sum_c[r][i] += c;
            sum_re2[r][i] += c.real() * c.real();
            sum_im2[r][i] += c.imag() * c.imag();
            const double sq = std::norm(c);
            sum_sq[r][i] += sq;
            sum_sq2[r][i] += sq * sq;
        }
    }
};

}  // namespace

EnsembleStats Solver::run_ensemble(const SpectralField& omega0) const {
    if (cfg_.member_count < 1) throw std::invalid_argument("ensemble needs member_count >= 1");
    const Grid& g = omega0.grid;
    EnsembleStats stats;
    stats.grid = g;

    std::vector<double> times = cfg_.record_times;
    const bool has_final = !times.empty() && std::abs(times.back() - cfg_.horizon) < 1e-12;
    if (!has_final) times.push_back(cfg_.horizon);
    const std::size_t nt = times.size();
    const std::size_t nc = static_cast<std::size_t>(g.n) * (g.n / 2 + 1);

    SpectralField prepared = omega0;
    if (cfg_.dealias) dealias_23(prepared);
    drop_nyquist(prepared);
    {
        const double ratio = preflight_ratio(prepared);
        if (ratio > cfg_.cfl_limit) throw PreflightError(ratio, cfg_.cfl_limit);
    }

    // Members are split into fixed contiguous blocks; the block layout depends
    // only on member_count, and each member draws its noise from
    // RngStream(seed, member, step), so the trajectories are independent of
    // how blocks land on threads.
    const int mcount = cfg_.member_count;
    const int nblocks = std::min(16, mcount);
    std::vector<EnsembleAcc> accs;
    accs.reserve(static_cast<std::size_t>(nblocks));
    for (int b = 0; b < nblocks; ++b) accs.emplace_back(nt, nc);

    run_blocks(nblocks, [&](int b) {
        EnsembleAcc& acc = accs[static_cast<std::size_t>(b)];
        const int lo = static_cast<int>(static_cast<long long>(mcount) * b / nblocks);
        const int hi = static_cast<int>(static_cast<long long>(mcount) * (b + 1) / nblocks);
        Fft fft(g);
        for (int m = lo; m < hi; ++m) {
            SpectralField omega = prepared;
            bool failed = false;
            std::size_t next_rec = 0;
            try {
                for (int s = 0; s < steps_; ++s) {
                    const double t = s * cfg_.dt;
                    while (next_rec < nt && times[next_rec] <= t + 1e-12 &&
                           times[next_rec] < cfg_.horizon - 1e-12) {
                        acc.deposit(next_rec, omega);
                        ++next_rec;
                    }
                    RngStream rng(cfg_.seed, static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(s));
                    NoiseIncrement dW = sample_increment(*model_, cfg_.dt, rng);
                    omega = step(omega, t, dW, fft, s);
                }
            } catch (const BlowUpError&) {
                failed = true;
                acc.failed.push_back(m);
            }
            if (failed) continue;
            ++acc.ok;
            for (std::size_t r = next_rec; r < nt; ++r) acc.deposit(r, omega);
        }
    });

    // single-writer reduction, blocks merged in index order
    int ok_members = 0;
    std::vector<std::vector<cplx>> sum_c(nt, std::vector<cplx>(nc, cplx(0.0)));
    std::vector<std::vector<double>> sum_re2(nt, std::vector<double>(nc, 0.0));
    std::vector<std::vector<double>> sum_im2(nt, std::vector<double>(nc, 0.0));
    std::vector<std::vector<double>> sum_sq(nt, std::vector<double>(nc, 0.0));
    std::vector<std::vector<double>> sum_sq2(nt, std::vector<double>(nc, 0.0));
    for (const EnsembleAcc& acc : accs) {
        ok_members += acc.ok;
        stats.failed_members.insert(stats.failed_members.end(), acc.failed.begin(), acc.failed.end());
        for (std::size_t r = 0; r < nt; ++r) {
            for (std::size_t i = 0; i < nc; ++i) {
                sum_c[r][i] += acc.sum_c[r][i];
                sum_re2[r][i] += acc.sum_re2[r][i];
                sum_im2[r][i] += acc.sum_im2[r][i];
                sum_sq[r][i] += acc.sum_sq[r][i];
                sum_sq2[r][i] += acc.sum_sq2[r][i];
            }
        }
    }

    stats.members = ok_members;
    const double inv_m = ok_members > 0 ? 1.0 / ok_members : 0.0;
    for (std::size_t r = 0; r < nt; ++r) {
        ModeStats ms;
        ms.t = times[r];
        ms.mean.resize(nc);
        ms.mean_sq.resize(nc);
        ms.var_sq.resize(nc);
        ms.var_re.resize(nc);
        ms.var_im.resize(nc);
        for (std::size_t i = 0; i < nc; ++i) {
            const cplx mc = sum_c[r][i] * inv_m;
            ms.mean[i] = mc;
            const double msq = sum_sq[r][i] * inv_m;
            ms.mean_sq[i] = msq;
            ms.var_sq[i] = std::max(0.0, sum_sq2[r][i] * inv_m - msq * msq);
            ms.var_re[i] = std::max(0.0, sum_re2[r][i] * inv_m - mc.real() * mc.real());
            ms.var_im[i] = std::max(0.0, sum_im2[r][i] * inv_m - mc.imag() * mc.imag());
        }
        stats.at.push_back(std::move(ms));
    }
    return stats;
}

SpectralField single_mode_data(const Grid& g, int n1, int n2, double amplitude) {
    if (n1 == 0 && n2 == 0) throw std::invalid_argument("single-mode data: mode must be nonzero");
    SpectralField f(g);
    f.set_mode(n1, n2, cplx(0.5 * amplitude, 0.0));  // field = amplitude cos(k.x)
    return f;
}

SpectralField random_band_data(const Grid& g, double nmin, double nmax, double amplitude,
                               std::uint64_t seed) {
    SpectralField f(g);
    RngStream rng(seed, 0, 0);
    const int half = g.n / 2;
    // half-lattice sweep in fixed order keeps the draw deterministic
    for (int n2 = 0; n2 < half; ++n2) {
        for (int n1 = -(half - 1); n1 < half; ++n1) {
            if (n2 == 0 && n1 <= 0) continue;
            const double r = std::hypot(static_cast<double>(n1), static_cast<double>(n2));
            if (r < nmin || r > nmax) continue;
            const double sd = amplitude / std::sqrt(2.0);
            f.set_mode(n1, n2, cplx(sd * rng.next_normal(), sd * rng.next_normal()));
        }
    }
    return f;
}

} // namespace svort
