#pragma once

#include <string>
#include <vector>

#include "oamq/grid.hpp"

namespace oamq {

enum class ApertureKind { None, Knife, Iris };

// Hard-edged transmittance. Knife passes x < x0 (the edge is vertical and
// blocks x > x0); Iris passes r < r0. Lengths in units of w0.
struct Aperture {
  ApertureKind kind = ApertureKind::None;
  double x0 = 0.0;
  double r0 = 0.0;

  static Aperture none() { return {}; }
  static Aperture knife(double x0) { return {ApertureKind::Knife, x0, 0.0}; }
  static Aperture iris(double r0);

  // Position along the sweep axis: x0 for Knife, r0 for Iris, +inf for None.
  double position() const;
  std::string describe() const;
};

// Axis-aligned rectangle in w0 units.
struct Cell {
  double x_lo, x_hi, y_lo, y_hi;
};

// Pointwise theta(x0 - x) or theta(r0 - r).
double transmittance(const Aperture& ap, double x, double y);

// Transmitted part of a cell: its area fraction and its centroid. Both are
// exact (the iris rim is integrated analytically).
struct CellClip {
  double fraction;
  double cx, cy;
};
CellClip clip_cell(const Aperture& ap, const Cell& cell);

double cell_fraction(const Aperture& ap, const Cell& cell);

// Per-cell fractions over the grid, same layout as Field::samples.
std::vector<double> cell_fractions(const Aperture& ap, const GridSpec& grid);

// A' = A * sqrt(fraction): cell energy scales by the transmitted area. Not
// renormalized.
Field apply_aperture(const Field& f, const Aperture& ap);

}  // namespace oamq
