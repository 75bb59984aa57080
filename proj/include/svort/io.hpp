#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "svort/field.hpp"

namespace svort {

// ============================================================
// Checksums
// ============================================================

std::uint64_t fnv1a(const void* data, std::size_t size);
std::uint64_t fnv1a_file(const std::string& path);  // throws if unreadable

// ============================================================
// Field snapshots
// ============================================================
// Little-endian binary, 32-byte header:
//   bytes  0..7   magic "SVORTFLD"
//   bytes  8..11  format version (u32, currently 1)
//   bytes 12..15  side length n (u32)
//   bytes 16..23  domain length L (f64)
//   bytes 24..31  time stamp (f64)
// followed by n*n row-major f64 samples. Master-equation lattices reuse the
// scheme with n = lattice side and L = the underlying domain length.

struct RawSnapshot {
    int n = 0;
    double length = 0;
    double time = 0;
    std::vector<double> values;
};

void write_snapshot(const std::string& path, int n, double length, double time,
                    const std::vector<double>& values);
void write_snapshot(const std::string& path, const ScalarField& field, double time);
RawSnapshot read_snapshot(const std::string& path);

// ============================================================
// CSV emission (full round-trip precision)
// ============================================================

class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::vector<std::string>& columns);

    void row(const std::vector<double>& values);  // must match the column count

  private:
    std::ofstream out_;
    std::size_t columns_ = 0;
};

// %.17g rendering used for every floating-point output.
std::string format_double(double v);

}  // namespace svort
