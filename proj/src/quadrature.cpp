#include "oamq/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "oamq/errors.hpp"

namespace oamq {

cplx inner_product(const Field& a, const Field& b) {
  if (!(a.grid == b.grid) || a.samples.size() != b.samples.size()) {
    throw InputError("inner_product: fields live on different grids");
  }
  cplx sum{};
  for (std::size_t c = 0; c < a.samples.size(); ++c) sum += std::conj(a.samples[c]) * b.samples[c];
  return sum * a.grid.cell_area();
}

double norm2(const Field& f) {
  double sum = 0.0;
  for (const auto& s : f.samples) sum += std::norm(s);
  return sum * f.grid.cell_area();
}

ClipReport make_report(double T, cplx kappa_psi, cplx kappa_perp) {
  ClipReport r;
  r.T = T;
  r.kappa_psi = kappa_psi;
  r.kappa_perp = kappa_perp;
  r.P_psi = std::norm(kappa_psi);
  r.P_perp = std::norm(kappa_perp);
  r.P_o2 = r.P_psi + r.P_perp;
  if (r.P_o2 >= 1e-12) r.F = r.P_psi / r.P_o2;
  return r;
}

ClipReport clip_report(const OamQubit& q, const Aperture& ap, const GridSpec& grid) {
  const Field a = render_field(q, grid);
  const Field a_perp = render_field(orthogonal_state(q), grid);
  const Field a_clipped = apply_aperture(a, ap);
  const Field perp_clipped = apply_aperture(a_perp, ap);
  const double T = norm2(a_clipped);
  return make_report(T, inner_product(a_clipped, a_clipped), inner_product(perp_clipped, a_clipped));
}

Eigen::Matrix2cd aperture_response(const Aperture& ap, int k, const GridSpec& grid) {
  validate(grid);
  if (k < 1) throw InputError("winding number k must be >= 1");
  const int n = grid.n;
  const double h = grid.cell();
  const auto edge = [&](int i) { return -grid.half_width + i * h; };

  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) {
    const double x = grid.coord(i);
    g[i] = std::exp(-x * x);
  }
  const double norm = lg_normalization(0, k, 1.0) * std::pow(2.0, 0.5 * k);
  const auto basis = [&](double x, double y) {
    const cplx z(x, y);
    cplx zk = z;
    for (int m = 1; m < k; ++m) zk *= z;
    return norm * std::exp(-(x * x + y * y)) * zk;
  };

  // Interior cells use the cell center; clipped cells are sampled at the
  // centroid of their transmitted part.
  double diag = 0.0;
  cplx off{};  // sum f conj(e_+)^2 = <e_+, B e_->
  for (int j = 0; j < n; ++j) {
    const double y = grid.coord(j);
    double row_diag = 0.0;
    cplx row_off{};
    for (int i = 0; i < n; ++i) {
      const CellClip clip = ap.kind == ApertureKind::None
                                ? CellClip{1.0, grid.coord(i), y}
                                : clip_cell(ap, {edge(i), edge(i + 1), edge(j), edge(j + 1)});
      const double frac = clip.fraction;
      if (frac == 0.0) continue;
      cplx e;
      if (frac == 1.0) {
        const cplx z(grid.coord(i), y);
        cplx zk = z;
        for (int m = 1; m < k; ++m) zk *= z;
        e = norm * g[i] * g[j] * zk;
      } else {
        e = basis(clip.cx, clip.cy);
      }
      const cplx ec = std::conj(e);
      row_diag += frac * std::norm(e);
      row_off += frac * ec * ec;
    }
    diag += row_diag;
    off += row_off;
  }
  const double area = grid.cell_area();
  Eigen::Matrix2cd m;
  m(0, 0) = diag * area;
  m(1, 1) = diag * area;
  m(0, 1) = off * area;
  m(1, 0) = std::conj(off) * area;
  return m;
}

ClipReport report_from_response(const OamQubit& q, const Eigen::Matrix2cd& response) {
  const Eigen::Vector2cd c(q.alpha, q.beta);
  const OamQubit perp = orthogonal_state(q);
  const Eigen::Vector2cd cp(perp.alpha, perp.beta);
  const Eigen::Vector2cd kc = response * c;
  const cplx kappa_psi = c.dot(kc);  // Eigen's dot conjugates the left operand
  const cplx kappa_perp = cp.dot(kc);
  return make_report(kappa_psi.real(), kappa_psi, kappa_perp);
}

namespace {

double rel_change(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-2});
}

double report_delta(const ClipReport& a, const ClipReport& b) {
  if (a.F.has_value() != b.F.has_value()) return std::numeric_limits<double>::infinity();
  double d = std::max({rel_change(a.T, b.T),
                       rel_change(a.kappa_psi.real(), b.kappa_psi.real()),
                       rel_change(a.kappa_psi.imag(), b.kappa_psi.imag()),
                       rel_change(a.kappa_perp.real(), b.kappa_perp.real()),
                       rel_change(a.kappa_perp.imag(), b.kappa_perp.imag()),
                       rel_change(a.P_psi, b.P_psi), rel_change(a.P_perp, b.P_perp),
                       rel_change(a.P_o2, b.P_o2)});
  if (a.F) d = std::max(d, rel_change(*a.F, *b.F));
  return d;
}

std::vector<ClipReport> reports_at(const std::vector<OamQubit>& states, const Aperture& ap,
                                   const GridSpec& grid) {
  std::vector<ClipReport> out;
  out.reserve(states.size());
  // One response per distinct winding number.
  std::vector<std::pair<int, Eigen::Matrix2cd>> cache;
  for (const auto& q : states) {
    auto it = std::find_if(cache.begin(), cache.end(), [&](const auto& e) { return e.first == q.k; });
    if (it == cache.end()) {
      cache.emplace_back(q.k, aperture_response(ap, q.k, grid));
      it = std::prev(cache.end());
    }
    out.push_back(report_from_response(q, it->second));
  }
  return out;
}

}  // namespace

ConvergedSet converge_states(const std::vector<OamQubit>& states, const Aperture& ap,
                             const GridSpec& grid, double rel_tol, int max_n) {
  validate(grid);
  if (grid.n > max_n) throw InputError("converge: starting grid exceeds the n cap");
  ConvergedSet out;
  GridSpec coarse = grid;
  if (grid.n == max_n) coarse.n = grid.n / 2;
  validate(coarse);
  auto previous = reports_at(states, ap, coarse);
  GridSpec fine = coarse;
  while (fine.n < max_n) {
    fine.n *= 2;
    auto current = reports_at(states, ap, fine);
    double delta = 0.0;
    for (std::size_t s = 0; s < states.size(); ++s) {
      delta = std::max(delta, report_delta(previous[s], current[s]));
    }
    out.deltas.push_back(delta);
    previous = std::move(current);
    if (delta < rel_tol) {
      out.converged = true;
      break;
    }
  }
  out.reports = std::move(previous);
  out.grid = fine;
  return out;
}

ConvergedResponse converge_response(const Aperture& ap, int k, const GridSpec& grid,
                                    double rel_tol, int max_n) {
  validate(grid);
  if (grid.n > max_n) throw InputError("converge: starting grid exceeds the n cap");
  ConvergedResponse out;
  GridSpec fine = grid;
  if (grid.n == max_n) fine.n = grid.n / 2;
  validate(fine);
  Eigen::Matrix2cd previous = aperture_response(ap, k, fine);
  while (fine.n < max_n) {
    fine.n *= 2;
    const Eigen::Matrix2cd current = aperture_response(ap, k, fine);
    double delta = 0.0;
    for (int e = 0; e < 4; ++e) {
      delta = std::max({delta, rel_change(previous(e).real(), current(e).real()),
                        rel_change(previous(e).imag(), current(e).imag())});
    }
    out.deltas.push_back(delta);
    previous = current;
    if (delta < rel_tol) {
      out.converged = true;
      break;
    }
  }
  out.m = previous;
  out.grid = fine;
  return out;
}

ConvergedReport converge(const OamQubit& q, const Aperture& ap, const GridSpec& grid,
                         double rel_tol, int max_n) {
  auto set = converge_states({q}, ap, grid, rel_tol, max_n);
  return {set.reports.front(), set.grid, set.converged, std::move(set.deltas)};
}

}  // namespace oamq
