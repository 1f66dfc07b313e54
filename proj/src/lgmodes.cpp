#include "oamq/lgmodes.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "oamq/errors.hpp"

namespace oamq {

void validate(const LGMode& mode) {
  if (mode.p < 0) throw InputError("LG radial index p must be >= 0");
  if (!(mode.w0 > 0.0)) throw InputError("LG waist w0 must be positive");
}

double laguerre(int p, double alpha, double x) {
  if (p < 0) throw InputError("Laguerre degree must be >= 0");
  double prev = 1.0;
  if (p == 0) return prev;
  double cur = 1.0 + alpha - x;
  for (int j = 1; j < p; ++j) {
    const double next = ((2.0 * j + 1.0 + alpha - x) * cur - (j + alpha) * prev) / (j + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

void laguerre_sequence(double alpha, double x, std::span<double> out) {
  if (out.empty()) return;
  out[0] = 1.0;
  if (out.size() == 1) return;
  out[1] = 1.0 + alpha - x;
  for (std::size_t j = 1; j + 1 < out.size(); ++j) {
    const double jd = static_cast<double>(j);
    out[j + 1] = ((2.0 * jd + 1.0 + alpha - x) * out[j] - (jd + alpha) * out[j - 1]) / (jd + 1.0);
  }
}

double lg_normalization(int p, int abs_ell, double w0) {
  const double log_n = 0.5 * (std::log(2.0) + std::lgamma(p + 1.0) - std::log(std::numbers::pi) -
                              std::lgamma(p + abs_ell + 1.0));
  return std::exp(log_n) / w0;
}

cplx lg_amplitude(const LGMode& mode, double x, double y) {
  const int m = std::abs(mode.ell);
  const double xs = x / mode.w0;
  const double ys = y / mode.w0;
  const double r2 = xs * xs + ys * ys;
  // (sqrt2 r)^m e^{i l phi} = (sqrt2 (x +- i y))^m, no atan2 needed.
  const cplx z(xs, mode.ell >= 0 ? ys : -ys);
  cplx zm(1.0, 0.0);
  for (int j = 0; j < m; ++j) zm *= z;
  const double radial = std::pow(2.0, 0.5 * m) * laguerre(mode.p, m, 2.0 * r2) * std::exp(-r2);
  return lg_normalization(mode.p, m, mode.w0) * radial * zm;
}

OamQubit make_qubit(int k, cplx alpha, cplx beta) {
  if (k < 1) throw InputError("winding number k must be >= 1");
  const double n2 = std::norm(alpha) + std::norm(beta);
  if (std::abs(n2 - 1.0) > 1e-12) {
    std::ostringstream os;
    os << "qubit not normalized: |alpha|^2 + |beta|^2 = " << n2;
    throw InputError(os.str());
  }
  return {k, alpha, beta};
}

OamQubit canonical_state(std::string_view label, int k) {
  using namespace std::complex_literals;
  const double s = 1.0 / std::numbers::sqrt2;
  if (k < 1) throw InputError("winding number k must be >= 1");
  if (label == "l") return {k, 1.0, 0.0};
  if (label == "r") return {k, 0.0, 1.0};
  if (label == "h") return {k, s, s};
  if (label == "v") return {k, -1i * s, 1i * s};
  // Global phases (1 -+ i)/2 kept as written in the basis definitions.
  if (label == "d") return {k, (1.0 - 1i) * 0.5, (1.0 - 1i) * 1i * 0.5};
  if (label == "a") return {k, (1.0 + 1i) * 0.5, (1.0 + 1i) * -1i * 0.5};
  throw InputError("unknown state label '" + std::string(label) + "' (expected l, r, h, v, d, a)");
}

OamQubit orthogonal_state(const OamQubit& q) {
  return {q.k, -std::conj(q.beta), std::conj(q.alpha)};
}

cplx overlap(const OamQubit& a, const OamQubit& b) {
  if (a.k != b.k) throw InputError("overlap between different o_k subspaces");
  return std::conj(a.alpha) * b.alpha + std::conj(a.beta) * b.beta;
}

namespace {

std::vector<double> gaussian_row(const GridSpec& grid, double w0 = 1.0) {
  std::vector<double> g(grid.n);
  for (int i = 0; i < grid.n; ++i) {
    const double x = grid.coord(i) / w0;
    g[i] = std::exp(-x * x);
  }
  return g;
}

void check_captured_norm(Field& f) {
  double sum = 0.0;
  for (const auto& s : f.samples) sum += std::norm(s);
  const double n2 = sum * f.grid.cell_area();
  if (n2 < 0.999) {
    std::ostringstream os;
    os << "grid captures only " << n2 << " of the mode norm; increase half-width";
    f.diagnostics.push_back(os.str());
  }
}

}  // namespace

Field render_field(const OamQubit& q, const GridSpec& grid) {
  validate(grid);
  if (q.k < 1) throw InputError("winding number k must be >= 1");
  Field f(grid);
  const auto g = gaussian_row(grid);
  const double norm = lg_normalization(0, q.k, 1.0) * std::pow(2.0, 0.5 * q.k);
  for (int j = 0; j < grid.n; ++j) {
    const double y = grid.coord(j);
    for (int i = 0; i < grid.n; ++i) {
      const cplx z(grid.coord(i), y);
      cplx zk = z;
      for (int m = 1; m < q.k; ++m) zk *= z;
      const cplx plus = norm * g[i] * g[j] * zk;
      // A_{0,-k} = conj(A_{0,+k}) at the waist.
      f.at(i, j) = q.alpha * plus + q.beta * std::conj(plus);
    }
  }
  check_captured_norm(f);
  return f;
}

Field render_mode(const LGMode& mode, const GridSpec& grid) {
  validate(mode);
  validate(grid);
  Field f(grid);
  for (int j = 0; j < grid.n; ++j) {
    for (int i = 0; i < grid.n; ++i) {
      f.at(i, j) = lg_amplitude(mode, grid.coord(i), grid.coord(j));
    }
  }
  check_captured_norm(f);
  return f;
}

}  // namespace oamq
