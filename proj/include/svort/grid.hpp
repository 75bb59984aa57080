#pragma once

#include <cmath>
#include <stdexcept>

namespace svort {

inline constexpr double kPi = 3.14159265358979323846;

// Square periodic grid [0, L)^2 with N points per side.  Integer modes n
// map to physical wavenumbers k = n * (2*pi/L); for L = 2*pi they coincide.
struct Grid {
    int n = 0;
    double length = 2.0 * kPi;

    Grid() = default;
    Grid(int n_, double length_) : n(n_), length(length_) {
        if (n < 4 || n % 2 != 0) throw std::invalid_argument("grid: N must be even and >= 4");
        if (!(length > 0.0)) throw std::invalid_argument("grid: L must be positive");
    }

    double spacing() const { return length / n; }
    double dk() const { return 2.0 * kPi / length; }
    long size() const { return static_cast<long>(n) * n; }

    // FFT storage index -> signed integer mode in [-N/2, N/2-1]
    int mode_of(int i) const { return i <= n / 2 ? i : i - n; }
    int index_of(int mode) const { return mode >= 0 ? mode : mode + n; }

    double coord(int i) const { return spacing() * i; }

    bool operator==(const Grid&) const = default;
};

} // namespace svort
