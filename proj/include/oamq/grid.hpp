#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace oamq {

using cplx = std::complex<double>;

// Uniform square grid over [-L, L]^2 in units of the beam waist. Samples sit
// at cell centers; cell (i, j) covers x in [-L + i h, -L + (i + 1) h].
struct GridSpec {
  double half_width = 6.0;
  int n = 1024;

  double cell() const { return 2.0 * half_width / n; }
  double cell_area() const { return cell() * cell(); }
  double coord(int i) const { return -half_width + (i + 0.5) * cell(); }
  std::size_t size() const { return static_cast<std::size_t>(n) * n; }

  bool operator==(const GridSpec&) const = default;
};

// Throws InputError unless L > 0 and n is a power of two >= 64.
void validate(const GridSpec& grid);

// Complex samples, row-major with y as the slow index: samples[j * n + i].
struct Field {
  GridSpec grid;
  std::vector<cplx> samples;
  std::vector<std::string> diagnostics;

  Field() = default;
  explicit Field(const GridSpec& g) : grid(g), samples(g.size()) {}

  cplx& at(int i, int j) { return samples[static_cast<std::size_t>(j) * grid.n + i]; }
  const cplx& at(int i, int j) const {
    return samples[static_cast<std::size_t>(j) * grid.n + i];
  }
};

}  // namespace oamq
