#include "svort/noise_model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace svort {

std::string RegularityClass::describe() const {
    if (!known) return "unknown";
    std::ostringstream os;
    os << "{";
    if (l2loc) os << "L2loc";
    if (c0loc) os << ", C0loc";
    if (holder > 0.0) os << ", Holder(" << holder << ")";
    os << "}";
    return os.str();
}

NoiseModel::NoiseModel(Grid grid, SpectralDensity density, double cutoff, int max_mode)
    : grid_(grid), density_(density), cutoff_(cutoff), max_mode_(max_mode) {
    density_.validate();
    if (grid_.n < 8) throw std::invalid_argument("noise model needs N >= 8");
    nmax_ = grid_.n / 2 - 1;
    if (max_mode_ > 0 && max_mode_ < nmax_) nmax_ = max_mode_;

    collapsed_.assign(static_cast<std::size_t>(2 * nmax_ + 1), 0.0);
    for_each_mode([this](int n1, int /*n2*/, double /*k1*/, double /*k2*/, double q) {
        sum_q_ += q;
        ++mode_count_;
        collapsed_[static_cast<std::size_t>(n1 + nmax_)] += q;
    });
}

template <typename Fn>
void NoiseModel::for_each_mode(Fn&& fn) const {
    const double dk = grid_.dk();
    const double inv_cut = cutoff_ > 0.0 ? 1.0 / cutoff_ : 0.0;
    const double c_norm = dk * dk;
    for (int n1 = -nmax_; n1 <= nmax_; ++n1) {
        for (int n2 = -nmax_; n2 <= nmax_; ++n2) {
            if (n1 == 0 && n2 == 0) continue;
            const double k1 = n1 * dk;
            const double k2 = n2 * dk;
            const double kk = k1 * k1 + k2 * k2;
            double q = c_norm * density_(std::sqrt(kk));
            if (inv_cut > 0.0) q *= std::exp(-kk * inv_cut);
            fn(n1, n2, k1, k2, q);
        }
    }
}

bool NoiseModel::in_lattice(int n1, int n2) const {
    if (n1 == 0 && n2 == 0) return false;
    return std::abs(n1) <= nmax_ && std::abs(n2) <= nmax_;
}

double NoiseModel::q_at(int n1, int n2) const {
    if (!in_lattice(n1, n2)) return 0.0;
    const double dk = grid_.dk();
    const double k1 = n1 * dk, k2 = n2 * dk;
    const double kk = k1 * k1 + k2 * k2;
    double q = dk * dk * density_(std::sqrt(kk));
    if (cutoff_ > 0.0) q *= std::exp(-kk / cutoff_);
    return q;
}

const std::vector<NoiseMode>& NoiseModel::modes() const {
    if (modes_cache_.empty() && mode_count_ > 0) {
        modes_cache_.reserve(mode_count_);
        for_each_mode([this](int n1, int n2, double k1, double k2, double q) {
            modes_cache_.push_back({n1, n2, k1, k2, q});
        });
    }
    return modes_cache_;
}

const std::vector<NoiseMode>& NoiseModel::half_modes() const {
    if (half_cache_.empty() && mode_count_ > 0) {
        half_cache_.reserve(mode_count_ / 2);
        for_each_mode([this](int n1, int n2, double k1, double k2, double q) {
            if (n2 > 0 || (n2 == 0 && n1 > 0)) half_cache_.push_back({n1, n2, k1, k2, q});
        });
    }
    return half_cache_;
}

Mat2 NoiseModel::covariance(double z1, double z2) const {
    Mat2 m;
    for_each_mode([&](int, int, double k1, double k2, double q) {
        const double kk = k1 * k1 + k2 * k2;
        const double c = q * std::cos(k1 * z1 + k2 * z2) / kk;
        // q P_k cos: P11 = 1 - k1^2/|k|^2 = k2^2/|k|^2, etc.
        m.a11 += c * k2 * k2;
        m.a12 -= c * k1 * k2;
        m.a22 += c * k1 * k1;
    });
    return m;
}

std::vector<double> NoiseModel::structure_function(const std::vector<double>& r) const {
    const double dk = grid_.dk();
    std::vector<double> out(r.size(), 0.0);
    for (std::size_t j = 0; j < r.size(); ++j) {
        double s = 0.0;
        for (int n1 = -nmax_; n1 <= nmax_; ++n1)
            s += collapsed_[static_cast<std::size_t>(n1 + nmax_)] * (1.0 - std::cos(n1 * dk * r[j]));
        out[j] = 2.0 * s;
    }
    return out;
}

double NoiseModel::structure_function(double r) const {
    return structure_function(std::vector<double>{r})[0];
}

double NoiseModel::kappa_identity_residual(double k1, double k2) const {
    const double kk = k1 * k1 + k2 * k2;
    double s = 0.0;
    for_each_mode([&](int, int, double e1, double e2, double q) {
        const double ee = e1 * e1 + e2 * e2;
        const double dot = e1 * k1 + e2 * k2;
        s += q * (kk - dot * dot / ee);  // |P_eta k|^2
    });
    return s - 2.0 * kappa() * kk;
}

RegularityClass NoiseModel::classify_regularity() const {
    RegularityClass rc;
    rc.l2loc = true;
    switch (density_.family) {
    case DensityFamily::LogEuler:
        rc.c0loc = density_.gamma > 0.75;
        break;
    case DensityFamily::FlandoliTorus:
        // g = |k|^{-2} log^{-2}(e+|k|) is the logarithmic family at gamma = 1
        rc.c0loc = true;
        break;
    case DensityFamily::HypoNS:
        rc.c0loc = true;
        rc.holder = 0.5 * density_.beta;
        break;
    case DensityFamily::Kraichnan:
        rc.c0loc = true;
        rc.holder = density_.alpha;
        break;
    case DensityFamily::CustomTable:
        rc = RegularityClass{};
        rc.known = false;
        break;
    }
    return rc;
}

} // namespace svort
