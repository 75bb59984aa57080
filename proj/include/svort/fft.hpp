#pragma once

#include <memory>

#include "svort/field.hpp"

namespace svort {

// FFTW wrapper for one grid size.  forward() produces synthesis coefficients
// (DFT / N^2); backward() evaluates sum_k c_k e^{i k.x} on the grid.  The
// instance owns aligned scratch buffers, so a backward transform never
// clobbers caller data (FFTW's c2r destroys its input).  Not thread-safe;
// use one Fft per thread.
class Fft {
  public:
    explicit Fft(const Grid& g);
    ~Fft();
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;

    const Grid& grid() const { return grid_; }

    SpectralField forward(const ScalarField& f);
    ScalarField backward(const SpectralField& c);
    void forward_into(const ScalarField& f, SpectralField& out);
    void backward_into(const SpectralField& c, ScalarField& out);

  private:
    struct Impl;
    Grid grid_;
    std::unique_ptr<Impl> impl_;
};

} // namespace svort
