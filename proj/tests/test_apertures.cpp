#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oamq/apertures.hpp"
#include "oamq/errors.hpp"
#include "oamq/lgmodes.hpp"
#include "oamq/quadrature.hpp"

using namespace oamq;

namespace {

// Brute-force transmitted area and centroid by an m x m sub-grid.
CellClip subsample(const Aperture& ap, const Cell& c, int m) {
  double a = 0, mx = 0, my = 0;
  const double hx = (c.x_hi - c.x_lo) / m, hy = (c.y_hi - c.y_lo) / m;
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i) {
      const double x = c.x_lo + (i + 0.5) * hx, y = c.y_lo + (j + 0.5) * hy;
      if (transmittance(ap, x, y) > 0) a += 1, mx += x, my += y;
    }
  if (a == 0) return {0.0, 0.0, 0.0};
  return {a / (m * m), mx / a, my / a};
}

}  // namespace

TEST_CASE("cell fractions") {
  CHECK(cell_fraction(Aperture::knife(0.0), {-0.2, -0.1, 0.0, 0.1}) == 1.0);
  CHECK(cell_fraction(Aperture::knife(0.0), {-0.05, 0.05, 0.0, 0.1}) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(cell_fraction(Aperture::knife(0.0), {0.1, 0.2, 0.0, 0.1}) == 0.0);
  CHECK(cell_fraction(Aperture::iris(1.0), {0.1, 0.2, 0.1, 0.2}) == 1.0);
  CHECK(cell_fraction(Aperture::iris(1.0), {1.1, 1.2, 0.1, 0.2}) == 0.0);
  CHECK(cell_fraction(Aperture::none(), {1.1, 1.2, 0.1, 0.2}) == 1.0);
  CHECK_THROWS_AS(Aperture::iris(-0.1), InputError);
}

TEST_CASE("iris rim cells against brute-force subsampling") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 300; ++t) {
    const double r0 = 0.05 + std::abs(u(rng)) * 2.0;
    const double h = 0.02 + 0.1 * std::abs(u(rng));
    // cell placed near the rim
    const double ang = 3.2 * u(rng);
    const double cx = r0 * std::cos(ang) + 0.5 * h * u(rng), cy = r0 * std::sin(ang) + 0.5 * h * u(rng);
    const Cell c{cx - h / 2, cx + h / 2, cy - h / 2, cy + h / 2};
    const auto ap = Aperture::iris(r0);
    const auto exact = clip_cell(ap, c);
    const auto brute = subsample(ap, c, 1500);
    CHECK(std::abs(exact.fraction - brute.fraction) < 2e-3);
    if (brute.fraction > 0.05) {
      CHECK(std::abs(exact.cx - brute.cx) < 2e-3 * h);
      CHECK(std::abs(exact.cy - brute.cy) < 2e-3 * h);
    }
  }
  // a cell that contains a small iris entirely
  const auto tiny = clip_cell(Aperture::iris(0.01), {-0.05, 0.05, -0.05, 0.05});
  CHECK(tiny.fraction == doctest::Approx(std::numbers::pi * 1e-4 / 1e-2).epsilon(1e-12));
  CHECK(std::abs(tiny.cx) < 1e-15);
}

TEST_CASE("knife clip centroid") {
  const auto c = clip_cell(Aperture::knife(0.03), {0.0, 0.1, 0.0, 0.1});
  CHECK(c.fraction == doctest::Approx(0.3));
  CHECK(c.cx == doctest::Approx(0.015));
  CHECK(c.cy == doctest::Approx(0.05));
}

TEST_CASE("apply_aperture") {
  const GridSpec grid{};
  const auto l = render_field(canonical_state("l"), grid);
  CHECK(apply_aperture(l, Aperture::none()).samples == l.samples);
  CHECK(std::abs(norm2(apply_aperture(l, Aperture::knife(6.0))) - 1.0) < 1e-6);
  CHECK(std::abs(norm2(apply_aperture(l, Aperture::knife(100.0))) - 1.0) < 1e-6);
  CHECK(std::abs(norm2(apply_aperture(l, Aperture::knife(0.0))) - 0.5) < 1e-4);
  CHECK(norm2(apply_aperture(l, Aperture::knife(-6.0))) == 0.0);
}

TEST_CASE("monotonicity") {
  const GridSpec grid{6.0, 256};
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  const auto f = render_field(canonical_state("d"), grid);
  for (int t = 0; t < 40; ++t) {
    double a = u(rng), b = u(rng);
    if (a > b) std::swap(a, b);
    CHECK(norm2(apply_aperture(f, Aperture::knife(b))) >= norm2(apply_aperture(f, Aperture::knife(a))));
    const double ra = std::abs(a), rb = std::abs(b);
    CHECK(norm2(apply_aperture(f, Aperture::iris(std::max(ra, rb)))) >=
          norm2(apply_aperture(f, Aperture::iris(std::min(ra, rb)))));
  }
}

TEST_CASE("centered knife halves azimuthally symmetric intensities") {
  for (int n : {256, 1024}) {
    const GridSpec grid{6.0, n};
    for (LGMode m : {LGMode{2, 0, 1.0}, LGMode{-3, 1, 1.0}, LGMode{0, 2, 1.0}, LGMode{5, 0, 1.3}}) {
      const auto f = render_mode(m, grid);
      CHECK(std::abs(norm2(apply_aperture(f, Aperture::knife(0.0))) / norm2(f) - 0.5) < 1e-6);
    }
  }
  // coarse grid
  const GridSpec odd{6.0, 128};
  const auto f = render_field(canonical_state("l"), odd);
  CHECK(std::abs(norm2(apply_aperture(f, Aperture::knife(0.0))) - 0.5) < 1e-6);
}

TEST_CASE("idempotence") {
  const GridSpec grid{6.0, 256};
  const auto f = render_field(canonical_state("h"), grid);
  for (auto ap : {Aperture::knife(0.33), Aperture::iris(1.21)}) {
    const auto once = apply_aperture(f, ap), twice = apply_aperture(once, ap);
    const auto frac = cell_fractions(ap, grid);
    double edge_mass = 0;
    for (std::size_t s = 0; s < frac.size(); ++s) {
      if (frac[s] == 0.0 || frac[s] == 1.0)
        CHECK(once.samples[s] == twice.samples[s]);
      else
        edge_mass += std::norm(f.samples[s]) * grid.cell_area();
    }
    const double gap = norm2(once) - norm2(twice);
    MESSAGE(ap.describe() << ": energy discrepancy " << gap << ", edge-cell mass " << edge_mass);
    CHECK(gap >= 0.0);
    CHECK(gap <= edge_mass);
  }
}
