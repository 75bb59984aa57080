#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace svort {

enum class DensityFamily { LogEuler, HypoNS, Kraichnan, FlandoliTorus, CustomTable };

// Radial spectral density g(|k|) of the transport noise. All presets decay
// fast enough that sum_k q(k) |k|^0 converges on the lattice; the regularity
// of the induced vector field differs per family (see classify_regularity).
struct SpectralDensity {
    DensityFamily family = DensityFamily::LogEuler;
    double gamma = 1.0;  // LogEuler: requires gamma > 1/2
    double beta = 1.0;   // HypoNS: requires beta in (0, 2)
    double alpha = 0.5;  // Kraichnan: requires alpha in (0, 1)
    // CustomTable: sorted radii with values; linear interpolation, zero outside
    std::vector<double> table_r;
    std::vector<double> table_g;

    void validate() const {
        switch (family) {
        case DensityFamily::LogEuler:
            if (!(gamma > 0.5)) throw std::invalid_argument("log-Euler density needs gamma > 1/2");
            break;
        case DensityFamily::HypoNS:
            if (!(beta > 0.0 && beta < 2.0)) throw std::invalid_argument("hypodissipative density needs beta in (0,2)");
            break;
        case DensityFamily::Kraichnan:
            if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("Kraichnan density needs alpha in (0,1)");
            break;
        case DensityFamily::FlandoliTorus:
            break;
        case DensityFamily::CustomTable:
            if (table_r.size() != table_g.size() || table_r.size() < 2)
                throw std::invalid_argument("custom density table needs >= 2 (r, g) pairs");
            for (std::size_t i = 1; i < table_r.size(); ++i)
                if (!(table_r[i] > table_r[i - 1]))
                    throw std::invalid_argument("custom density radii must be strictly increasing");
            for (double v : table_g)
                if (!(v >= 0.0)) throw std::invalid_argument("custom density values must be >= 0");
            break;
        }
    }

    double operator()(double r) const {
        switch (family) {
        case DensityFamily::LogEuler: {
            const double lg = std::log(std::exp(1.0) + r);
            return 1.0 / ((1.0 + r * r) * std::pow(lg, 2.0 * gamma));
        }
        case DensityFamily::HypoNS:
            return std::pow(1.0 + r * r, -1.0 - 0.5 * beta);
        case DensityFamily::Kraichnan:
            return std::pow(1.0 + r, -2.0 - 2.0 * alpha);
        case DensityFamily::FlandoliTorus: {
            if (r == 0.0) return 0.0;
            const double lg = std::log(std::exp(1.0) + r);
            return 1.0 / (r * r * lg * lg);
        }
        case DensityFamily::CustomTable: {
            if (r < table_r.front() || r > table_r.back()) return 0.0;
            auto it = std::lower_bound(table_r.begin(), table_r.end(), r);
            if (it == table_r.begin()) return table_g.front();
            const std::size_t hi = static_cast<std::size_t>(it - table_r.begin());
            const std::size_t lo = hi - 1;
            const double t = (r - table_r[lo]) / (table_r[hi] - table_r[lo]);
            return table_g[lo] + t * (table_g[hi] - table_g[lo]);
        }
        }
        return 0.0;
    }

    std::string family_name() const {
        switch (family) {
        case DensityFamily::LogEuler: return "logEuler";
        case DensityFamily::HypoNS: return "hypoNS";
        case DensityFamily::Kraichnan: return "kraichnan";
        case DensityFamily::FlandoliTorus: return "flandoliTorus";
        case DensityFamily::CustomTable: return "customTable";
        }
        return "?";
    }

    static SpectralDensity log_euler(double gamma) {
        SpectralDensity d;
        d.family = DensityFamily::LogEuler;
        d.gamma = gamma;
        d.validate();
        return d;
    }
    static SpectralDensity hypo_ns(double beta) {
        SpectralDensity d;
        d.family = DensityFamily::HypoNS;
        d.beta = beta;
        d.validate();
        return d;
    }
    static SpectralDensity kraichnan(double alpha) {
        SpectralDensity d;
        d.family = DensityFamily::Kraichnan;
        d.alpha = alpha;
        d.validate();
        return d;
    }
    static SpectralDensity flandoli_torus() {
        SpectralDensity d;
        d.family = DensityFamily::FlandoliTorus;
        return d;
    }
    static SpectralDensity custom(std::vector<double> r, std::vector<double> g) {
        SpectralDensity d;
        d.family = DensityFamily::CustomTable;
        d.table_r = std::move(r);
        d.table_g = std::move(g);
        d.validate();
        return d;
    }
};

} // namespace svort
