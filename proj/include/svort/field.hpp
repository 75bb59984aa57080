#pragma once

#include <complex>
#include <vector>

#include "svort/grid.hpp"

namespace svort {

using cplx = std::complex<double>;

// Real scalar field sampled on the grid, row-major [i*N + j] with
// x = (i*h, j*h).
struct ScalarField {
    Grid grid;
    std::vector<double> values;

    ScalarField() = default;
    explicit ScalarField(const Grid& g) : grid(g), values(g.size(), 0.0) {}

    double& at(int i, int j) { return values[static_cast<size_t>(i) * grid.n + j]; }
    double at(int i, int j) const { return values[static_cast<size_t>(i) * grid.n + j]; }
};

// Synthesis coefficients c_k of a real field: f(x) = sum_k c_k e^{i k.x}.
// Half-spectrum storage (r2c layout): index [i * (N/2+1) + j2] holds the
// coefficient of mode (mode_of(i), j2), j2 in [0, N/2]; modes with negative
// second component are implied by conjugate symmetry.
struct SpectralField {
    Grid grid;
    std::vector<cplx> coeff;

    SpectralField() = default;
    explicit SpectralField(const Grid& g)
        : grid(g), coeff(static_cast<size_t>(g.n) * (g.n / 2 + 1), cplx{0.0, 0.0}) {}

    int cols() const { return grid.n / 2 + 1; }
    cplx& at(int i, int j2) { return coeff[static_cast<size_t>(i) * cols() + j2]; }
    cplx at(int i, int j2) const { return coeff[static_cast<size_t>(i) * cols() + j2]; }

    // coefficient of an arbitrary integer mode (wraps the conjugate half)
    cplx mode(int n1, int n2) const {
        if (n2 >= 0) return at(grid.index_of(n1), n2);
        return std::conj(at(grid.index_of(-n1), -n2));
    }
    void set_mode(int n1, int n2, cplx v) {
        if (n2 >= 0) {
            at(grid.index_of(n1), n2) = v;
            // the j2 = 0 and j2 = N/2 columns carry their own mirrors
            if (n2 == 0 && n1 != 0) at(grid.index_of(-n1), 0) = std::conj(v);
        } else {
            at(grid.index_of(-n1), -n2) = std::conj(v);
            if (n2 == -grid.n / 2) at(grid.index_of(n1), grid.n / 2) = v;
        }
    }
};

// Divergence-free vector field (e.g. one sampled noise increment); component
// fields share the grid.
struct VectorField {
    ScalarField x1, x2;

    VectorField() = default;
    explicit VectorField(const Grid& g) : x1(g), x2(g) {}
    VectorField(ScalarField a, ScalarField b) : x1(std::move(a)), x2(std::move(b)) {}
    const Grid& grid() const { return x1.grid; }
};

struct SpectralVectorField {
    SpectralField x1, x2;

    SpectralVectorField() = default;
    explicit SpectralVectorField(const Grid& g) : x1(g), x2(g) {}
    SpectralVectorField(SpectralField a, SpectralField b) : x1(std::move(a)), x2(std::move(b)) {}
    const Grid& grid() const { return x1.grid; }
};

} // namespace svort
