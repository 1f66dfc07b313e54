#include "oamq/apertures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "oamq/errors.hpp"

namespace oamq {

Aperture Aperture::iris(double r0) {
  if (!(r0 >= 0.0)) throw InputError("iris radius r0 must be >= 0");
  return {ApertureKind::Iris, 0.0, r0};
}

double Aperture::position() const {
  switch (kind) {
    case ApertureKind::Knife: return x0;
    case ApertureKind::Iris: return r0;
    case ApertureKind::None: break;
  }
  return std::numeric_limits<double>::infinity();
}

std::string Aperture::describe() const {
  std::ostringstream os;
  switch (kind) {
    case ApertureKind::None: os << "none"; break;
    case ApertureKind::Knife: os << "knife(x0=" << x0 << ")"; break;
    case ApertureKind::Iris: os << "iris(r0=" << r0 << ")"; break;
  }
  return os.str();
}

double transmittance(const Aperture& ap, double x, double y) {
  switch (ap.kind) {
    case ApertureKind::None: return 1.0;
    case ApertureKind::Knife: return x < ap.x0 ? 1.0 : 0.0;
    case ApertureKind::Iris: return x * x + y * y < ap.r0 * ap.r0 ? 1.0 : 0.0;
  }
  return 1.0;
}

namespace {

// Integrals of s(t) = sqrt(R^2 - t^2) for |t| <= R.
struct Chord {
  double R;
  double s(double t) const { return std::sqrt(std::max(0.0, R * R - t * t)); }
  // Int s dt
  double g(double t) const {
    return 0.5 * (t * s(t) + R * R * std::asin(std::clamp(t / R, -1.0, 1.0)));
  }
  // Int t s dt
  double h(double t) const {
    const double v = s(t);
    return -v * v * v / 3.0;
  }
  // Int s^2 dt
  double q(double a, double b) const { return R * R * (b - a) - (b * b * b - a * a * a) / 3.0; }
};

CellClip iris_clip(double r0, const Cell& c) {
  const CellClip full{1.0, 0.5 * (c.x_lo + c.x_hi), 0.5 * (c.y_lo + c.y_hi)};
  const CellClip empty{0.0, full.cx, full.cy};
  // Nearest and farthest points of the cell from the origin.
  const double nx = std::clamp(0.0, c.x_lo, c.x_hi);
  const double ny = std::clamp(0.0, c.y_lo, c.y_hi);
  const double fx = std::max(std::abs(c.x_lo), std::abs(c.x_hi));
  const double fy = std::max(std::abs(c.y_lo), std::abs(c.y_hi));
  const double r2 = r0 * r0;
  if (fx * fx + fy * fy <= r2) return full;
  if (nx * nx + ny * ny >= r2) return empty;

  // Columns t in [a, b]: the transmitted chord is [max(y_lo, -s), min(y_hi, s)].
  const Chord ch{r0};
  const double a0 = std::max(c.x_lo, -r0);
  const double b0 = std::min(c.x_hi, r0);
  std::vector<double> cuts{a0, b0};
  for (double y : {c.y_lo, c.y_hi}) {
    if (std::abs(y) < r0) {
      const double t = std::sqrt(r2 - y * y);
      for (double tt : {-t, t}) {
        if (tt > a0 && tt < b0) cuts.push_back(tt);
      }
    }
  }
  std::sort(cuts.begin(), cuts.end());

  double area = 0.0, mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i], b = cuts[i + 1];
    if (b <= a) continue;
    const double m = 0.5 * (a + b);
    const double sm = ch.s(m);
    const bool top_const = c.y_hi <= sm;
    const bool bottom_const = c.y_lo >= -sm;
    const double top_m = top_const ? c.y_hi : sm;
    const double bottom_m = bottom_const ? c.y_lo : -sm;
    if (top_m <= bottom_m) continue;
    if (top_const) {
      area += c.y_hi * (b - a);
      mx += c.y_hi * (b * b - a * a) / 2.0;
      my += c.y_hi * c.y_hi * (b - a) / 2.0;
    } else {
      area += ch.g(b) - ch.g(a);
      mx += ch.h(b) - ch.h(a);
      my += ch.q(a, b) / 2.0;
    }
    if (bottom_const) {
      area -= c.y_lo * (b - a);
      mx -= c.y_lo * (b * b - a * a) / 2.0;
      my -= c.y_lo * c.y_lo * (b - a) / 2.0;
    } else {
      area += ch.g(b) - ch.g(a);
      mx += ch.h(b) - ch.h(a);
      my -= ch.q(a, b) / 2.0;
    }
  }
  const double cell_area = (c.x_hi - c.x_lo) * (c.y_hi - c.y_lo);
  if (!(area > 0.0)) return empty;
  return {std::clamp(area / cell_area, 0.0, 1.0), mx / area, my / area};
}

}  // namespace

CellClip clip_cell(const Aperture& ap, const Cell& cell) {
  const double cy = 0.5 * (cell.y_lo + cell.y_hi);
  switch (ap.kind) {
    case ApertureKind::None: break;
    case ApertureKind::Knife: {
      const double f = std::clamp((ap.x0 - cell.x_lo) / (cell.x_hi - cell.x_lo), 0.0, 1.0);
      const double right = std::clamp(ap.x0, cell.x_lo, cell.x_hi);
      return {f, f > 0.0 ? 0.5 * (cell.x_lo + right) : 0.5 * (cell.x_lo + cell.x_hi), cy};
    }
    case ApertureKind::Iris: return iris_clip(ap.r0, cell);
  }
  return {1.0, 0.5 * (cell.x_lo + cell.x_hi), cy};
}

double cell_fraction(const Aperture& ap, const Cell& cell) { return clip_cell(ap, cell).fraction; }

std::vector<double> cell_fractions(const Aperture& ap, const GridSpec& grid) {
  validate(grid);
  const double h = grid.cell();
  const auto edge = [&](int i) { return -grid.half_width + i * h; };
  std::vector<double> out(grid.size());
  if (ap.kind == ApertureKind::Knife) {
    std::vector<double> column(grid.n);
    for (int i = 0; i < grid.n; ++i) {
      column[i] = cell_fraction(ap, {edge(i), edge(i + 1), 0.0, h});
    }
    for (int j = 0; j < grid.n; ++j) {
      std::copy(column.begin(), column.end(), out.begin() + static_cast<std::ptrdiff_t>(j) * grid.n);
    }
    return out;
  }
  for (int j = 0; j < grid.n; ++j) {
    for (int i = 0; i < grid.n; ++i) {
      out[static_cast<std::size_t>(j) * grid.n + i] =
          cell_fraction(ap, {edge(i), edge(i + 1), edge(j), edge(j + 1)});
    }
  }
  return out;
}

Field apply_aperture(const Field& f, const Aperture& ap) {
  if (ap.kind == ApertureKind::None) return f;
  const auto frac = cell_fractions(ap, f.grid);
  Field out = f;
  for (std::size_t c = 0; c < out.samples.size(); ++c) {
    out.samples[c] *= std::sqrt(frac[c]);
  }
  return out;
}

}  // namespace oamq
