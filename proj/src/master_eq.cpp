#include "svort/master_eq.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace svort {

namespace {

// |P_eta k|^2 = |k|^2 - (k.eta)^2/|eta|^2 with physical vectors
double proj_sq(double k1, double k2, double e1, double e2) {
    const double kk = k1 * k1 + k2 * k2;
    if (kk == 0.0) return 0.0;
    const double dot = k1 * e1 + k2 * e2;
    return kk - dot * dot / (e1 * e1 + e2 * e2);
}

} // namespace

MasterEquation::MasterEquation(const NoiseModel& model, double nu, double beta,
                               LatticeClosure closure, int bound)
    : model_(&model), nu_(nu), beta_(beta), closure_(closure) {
    if (nu_ < 0.0) throw std::invalid_argument("master equation: nu must be >= 0");
    if (nu_ > 0.0 && !(beta_ > 0.0 && beta_ <= 2.0))
        throw std::invalid_argument("master equation: beta must be in (0,2]");
    const int full = model.grid().n / 2 - 1;
    bound_ = (bound <= 0 || bound > full) ? full : bound;

    const auto& noise = model.modes();
    if (closure_ == LatticeClosure::WrapAround) {
        if (nu_ != 0.0)
            throw std::invalid_argument("wrap-around closure is a structural-test device; nu must be 0");
        for (const NoiseMode& m : noise)
            if (std::abs(m.n1) > bound_ || std::abs(m.n2) > bound_)
                throw std::invalid_argument("wrap-around closure needs the noise lattice inside the state lattice");
    }

    const int s = side();
    const std::size_t n_sites = static_cast<std::size_t>(s) * s;
    const double dk = model.grid().dk();
    loss_.assign(n_sites, 0.0);
    offset_.assign(n_sites + 1, 0);
    src_.reserve(n_sites * std::min<std::size_t>(noise.size(), 64));
    weight_.reserve(src_.capacity());

    auto wrap = [this](int v) {
        const int s2 = side();
        int w = (v + bound_) % s2;
        if (w < 0) w += s2;
        return w - bound_;
    };

    for (int n1 = -bound_; n1 <= bound_; ++n1) {
        for (int n2 = -bound_; n2 <= bound_; ++n2) {
            const std::size_t row = index_of(n1, n2);
            const double k1 = n1 * dk, k2 = n2 * dk;
            const double kk = k1 * k1 + k2 * k2;
            double loss = 2.0 * model.kappa() * kk;
            if (nu_ > 0.0 && kk > 0.0) loss += 2.0 * nu_ * std::pow(kk, 0.5 * beta_);

            if (closure_ == LatticeClosure::Absorbing) {
                for (const NoiseMode& m : noise) {
                    const int t1 = n1 + m.n1, t2 = n2 + m.n2;
                    if (std::abs(t1) > bound_ || std::abs(t2) > bound_) continue;
                    const double w = m.q * proj_sq(k1, k2, m.k1, m.k2);
                    if (w == 0.0) continue;
                    src_.push_back(static_cast<int>(index_of(t1, t2)));
                    weight_.push_back(w);
                }
            } else {
                loss = 0.0;  // rebuilt from the symmetrized kernel
                for (const NoiseMode& m : noise) {
                    const int t1 = wrap(n1 + m.n1), t2 = wrap(n2 + m.n2);
                    const double sk = 0.5 * m.q *
                        (proj_sq(k1, k2, m.k1, m.k2) + proj_sq(t1 * dk, t2 * dk, m.k1, m.k2));
                    loss += sk;
                    if (sk == 0.0) continue;
                    src_.push_back(static_cast<int>(index_of(t1, t2)));
                    weight_.push_back(sk);
                }
            }
            loss_[row] = loss;
            offset_[row + 1] = src_.size();
            max_rate_ = std::max(max_rate_, loss);
        }
    }
}

std::size_t MasterEquation::index_of(int n1, int n2) const {
    if (std::abs(n1) > bound_ || std::abs(n2) > bound_)
        throw std::out_of_range("master equation: mode outside state lattice");
    return static_cast<std::size_t>(n1 + bound_) * side() + static_cast<std::size_t>(n2 + bound_);
}

MasterEquation::State MasterEquation::from_field(const SpectralField& omega) const {
    State a = zero_state();
    for (int n1 = -bound_; n1 <= bound_; ++n1)
        for (int n2 = -bound_; n2 <= bound_; ++n2)
            a[index_of(n1, n2)] = std::norm(omega.mode(n1, n2));
    return a;
}

MasterEquation::State MasterEquation::rhs(const State& a) const {
    if (a.size() != state_size()) throw std::invalid_argument("master equation: state size mismatch");
    State out(a.size(), 0.0);
    for (std::size_t row = 0; row < a.size(); ++row) {
        double acc = -loss_[row] * a[row];
        for (std::size_t j = offset_[row]; j < offset_[row + 1]; ++j)
            acc += weight_[j] * a[static_cast<std::size_t>(src_[j])];
        out[row] = acc;
    }
    return out;
}

MasterEquation::Trajectory MasterEquation::integrate(const State& a0, double horizon, double dt,
                                                     int record_stride) const {
    if (!(dt > 0.0)) throw std::invalid_argument("master equation: dt must be > 0");
    if (max_rate_ > 0.0 && dt > 2.0 / max_rate_)
        throw std::invalid_argument("master equation: dt exceeds the linear stability bound 2/max_rate");
    const double steps_real = horizon / dt;
    const int steps = static_cast<int>(std::llround(steps_real));
    if (std::abs(steps_real - steps) > 1e-9 * std::max(1.0, steps_real))
        throw std::invalid_argument("master equation: horizon must be an integral number of steps");

    Trajectory tr;
    tr.times.push_back(0.0);
    tr.states.push_back(a0);

    State a = a0;
    State k1, k2, k3, k4, tmp(a.size());
    for (int s = 0; s < steps; ++s) {
        k1 = rhs(a);
        for (std::size_t i = 0; i < a.size(); ++i) tmp[i] = a[i] + 0.5 * dt * k1[i];
        k2 = rhs(tmp);
        for (std::size_t i = 0; i < a.size(); ++i) tmp[i] = a[i] + 0.5 * dt * k2[i];
        k3 = rhs(tmp);
        for (std::size_t i = 0; i < a.size(); ++i) tmp[i] = a[i] + dt * k3[i];
        k4 = rhs(tmp);
        for (std::size_t i = 0; i < a.size(); ++i)
            a[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);

        const double mx = max_entry(a);
        for (double v : a)
            if (v < -1e-12 * std::max(mx, 1e-300))
                throw std::runtime_error("master equation: negativity detected; reduce dt");

        if ((record_stride > 0 && (s + 1) % record_stride == 0) || s + 1 == steps) {
            tr.times.push_back((s + 1) * dt);
            tr.states.push_back(a);
        }
    }
    return tr;
}

double MasterEquation::l2_dissipation(const State& a) const {
    double acc = 0.0;
    for (std::size_t row = 0; row < a.size(); ++row)
        for (std::size_t j = offset_[row]; j < offset_[row + 1]; ++j) {
            const double d = a[static_cast<std::size_t>(src_[j])] - a[row];
            acc += weight_[j] * d * d;
        }
    return 0.5 * acc;
}

double MasterEquation::sum(const State& a) {
    double s = 0.0;
    for (double v : a) s += v;
    return s;
}

double MasterEquation::sum_sq(const State& a) {
    double s = 0.0;
    for (double v : a) s += v * v;
    return s;
}

double MasterEquation::max_entry(const State& a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, v);
    return m;
}

ComparisonReport compare_mc(const EnsembleStats& stats, std::size_t time_index,
                            const MasterEquation& eq, const MasterEquation::State& a,
                            double threshold_frac) {
    if (time_index >= stats.at.size())
        throw std::invalid_argument("compare_mc: no ensemble statistics at requested time");
    if (stats.members < 2) throw std::invalid_argument("compare_mc: need at least 2 members");
    const ModeStats& ms = stats.at[time_index];
    const Grid& g = stats.grid;
    if (2 * (eq.bound() + 1) > g.n)
        throw std::invalid_argument("compare_mc: state lattice exceeds the solver grid");

    const double thr = threshold_frac * MasterEquation::max_entry(a);
    ComparisonReport rep;
    for (int n1 = -eq.bound(); n1 <= eq.bound(); ++n1) {
        for (int n2 = 0; n2 <= eq.bound(); ++n2) {
            if (n2 == 0 && n1 <= 0) continue;  // representatives only
            const double oracle = a[eq.index_of(n1, n2)];
            if (oracle <= thr) continue;
            const int i = g.index_of(n1);
            const std::size_t idx = static_cast<std::size_t>(i) * (g.n / 2 + 1) + n2;
            const double se = std::sqrt(std::max(ms.var_sq[idx], 1e-300) / stats.members);
            const double z = (ms.mean_sq[idx] - oracle) / se;
            ++rep.considered;
            if (std::abs(z) <= 3.0) ++rep.within;
            if (std::abs(z) > std::abs(rep.worst_z)) {
                rep.worst_z = z;
                rep.worst_n1 = n1;
                rep.worst_n2 = n2;
            }
        }
    }
    return rep;
}

} // namespace svort
