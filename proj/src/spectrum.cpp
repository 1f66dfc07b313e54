#include <cmath>
#include <vector>

#include "oamq/errors.hpp"
#include "oamq/quadrature.hpp"

namespace oamq {

namespace {

int index_of(const SpectrumTable& t, int ell, int p) {
  return (ell - t.ell_min) * (t.p_max + 1) + p;
}

}  // namespace

double SpectrumTable::at(int ell, int p) const {
  if (ell < ell_min || ell > ell_max || p < 0 || p > p_max) {
    throw InputError("spectrum index out of range");
  }
  return prob[index_of(*this, ell, p)];
}

double SpectrumTable::total() const {
  double s = 0.0;
  for (double v : prob) s += v;
  return s;
}

double SpectrumTable::ell_total(int ell) const {
  double s = 0.0;
  for (int p = 0; p <= p_max; ++p) s += at(ell, p);
  return s;
}

SpectrumTable oam_spectrum(const Field& f, int ell_min, int ell_max, int p_max) {
  if (ell_min > ell_max || p_max < 0) throw InputError("empty spectrum range");
  validate(f.grid);
  const int m_max = std::max(std::abs(ell_min), std::abs(ell_max));
  const int n_ell = ell_max - ell_min + 1;
  const int n_p = p_max + 1;

  // coef[m][p] = N_{p,m} 2^{m/2}
  std::vector<double> coef((m_max + 1) * n_p);
  for (int m = 0; m <= m_max; ++m) {
    for (int p = 0; p < n_p; ++p) coef[m * n_p + p] = lg_normalization(p, m) * std::pow(2.0, 0.5 * m);
  }
  std::vector<bool> wanted(m_max + 1, false);
  for (int ell = ell_min; ell <= ell_max; ++ell) wanted[std::abs(ell)] = true;

  std::vector<cplx> amp(static_cast<std::size_t>(n_ell) * n_p);
  std::vector<double> lag(n_p);
  const double h2 = f.grid.cell_area();
  const GridSpec& grid = f.grid;

  for (int j = 0; j < grid.n; ++j) {
    const double y = grid.coord(j);
    for (int i = 0; i < grid.n; ++i) {
      const cplx value = f.at(i, j);
      if (std::norm(value) * h2 < 1e-40) continue;
      const double x = grid.coord(i);
      const double r2 = x * x + y * y;
      const cplx weighted = value * std::exp(-r2);
      const cplx z(x, y);
      cplx zpow(1.0, 0.0);  // z^m
      for (int m = 0; m <= m_max; ++m) {
        if (m > 0) zpow *= z;
        if (!wanted[m]) continue;
        laguerre_sequence(m, 2.0 * r2, lag);
        // conj(LG_{p,+m}) carries conj(z)^m, conj(LG_{p,-m}) carries z^m.
        const cplx plus_factor = std::conj(zpow) * weighted;
        const cplx minus_factor = zpow * weighted;
        const double* c = &coef[m * n_p];
        if (m >= ell_min && m <= ell_max) {
          cplx* a = &amp[static_cast<std::size_t>(m - ell_min) * n_p];
          for (int p = 0; p < n_p; ++p) a[p] += (c[p] * lag[p]) * plus_factor;
        }
        if (m > 0 && -m >= ell_min && -m <= ell_max) {
          cplx* a = &amp[static_cast<std::size_t>(-m - ell_min) * n_p];
          for (int p = 0; p < n_p; ++p) a[p] += (c[p] * lag[p]) * minus_factor;
        }
      }
    }
  }

  SpectrumTable t{ell_min, ell_max, p_max, std::vector<double>(amp.size())};
  for (std::size_t e = 0; e < amp.size(); ++e) t.prob[e] = std::norm(amp[e] * h2);
  return t;
}

SpectrumTable clipped_spectrum(const OamQubit& q, const Aperture& ap, const GridSpec& grid,
                               int ell_min, int ell_max, int p_max) {
  Field weighted = render_field(q, grid);
  if (ap.kind != ApertureKind::None) {
    const auto frac = cell_fractions(ap, grid);
    for (std::size_t c = 0; c < weighted.samples.size(); ++c) weighted.samples[c] *= frac[c];
  }
  return oam_spectrum(weighted, ell_min, ell_max, p_max);
}

std::vector<double> azimuthal_spectrum(const Field& f, int ell_min, int ell_max) {
  validate(f.grid);
  if (ell_min > ell_max) throw InputError("azimuthal_spectrum: empty l range");
  const int n = f.grid.n;
  const double h = f.grid.cell();
  const int nl = ell_max - ell_min + 1;
  const int rings = static_cast<int>(std::ceil(f.grid.half_width * std::sqrt(2.0) / h)) + 1;
  std::vector<cplx> sums(static_cast<std::size_t>(rings) * nl);
  std::vector<int> count(rings);
  for (int j = 0; j < n; ++j) {
    const double y = f.grid.coord(j);
    for (int i = 0; i < n; ++i) {
      const double x = f.grid.coord(i);
      const double r = std::hypot(x, y);
      const int b = static_cast<int>(r / h);
      ++count[b];
      const cplx v = f.at(i, j);
      if (v == cplx{}) continue;
      // exp(-i l phi) stepped from l = ell_min
      const cplx u{x / r, -y / r};
      cplx w = std::pow(u, ell_min);
      cplx* row = &sums[static_cast<std::size_t>(b) * nl];
      for (int l = 0; l < nl; ++l, w *= u) row[l] += v * w;
    }
  }
  std::vector<double> out(nl);
  for (int b = 0; b < rings; ++b) {
    if (count[b] == 0) continue;
    for (int l = 0; l < nl; ++l) out[l] += std::norm(sums[static_cast<std::size_t>(b) * nl + l]) / count[b];
  }
  for (auto& v : out) v *= f.grid.cell_area();
  return out;
}

}  // namespace oamq
