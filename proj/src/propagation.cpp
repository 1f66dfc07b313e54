#include "oamq/propagation.hpp"

#include <fftw3.h>

#include <Eigen/Core>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <sstream>

#include "oamq/errors.hpp"

namespace oamq {

namespace {

struct PlanPair {
  fftw_plan forward;
  fftw_plan backward;
};

// FFTW planning is not thread-safe; execution with the new-array interface is.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  PlanPair get(int size) {
    {
      std::shared_lock lock(mutex_);
      if (auto it = plans_.find(size); it != plans_.end()) return it->second;
    }
    std::unique_lock lock(mutex_);
    if (auto it = plans_.find(size); it != plans_.end()) return it->second;
    std::vector<cplx> scratch(static_cast<std::size_t>(size) * size);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    PlanPair p{fftw_plan_dft_2d(size, size, buf, buf, FFTW_FORWARD, flags),
               fftw_plan_dft_2d(size, size, buf, buf, FFTW_BACKWARD, flags)};
    plans_.emplace(size, p);
    return p;
  }

  ~PlanCache() {
    for (auto& [size, p] : plans_) {
      fftw_destroy_plan(p.forward);
      fftw_destroy_plan(p.backward);
    }
  }

 private:
  std::shared_mutex mutex_;
  std::map<int, PlanPair> plans_;
};

constexpr int kPadding = 2;

// Spatial frequency (cycles per w0) of FFT bin m on an N-point axis.
double frequency(int m, int size, double h) {
  const int s = m < size / 2 ? m : m - size;
  return s / (size * h);
}

std::vector<cplx> padded_spectrum(const Field& f) {
  const int n = f.grid.n;
  const int size = kPadding * n;
  const int offset = (size - n) / 2;
  std::vector<cplx> buf(static_cast<std::size_t>(size) * size);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      buf[static_cast<std::size_t>(j + offset) * size + (i + offset)] = f.at(i, j);
    }
  }
  auto plans = PlanCache::instance().get(size);
  auto* data = reinterpret_cast<fftw_complex*>(buf.data());
  fftw_execute_dft(plans.forward, data, data);
  return buf;
}

// Half-width of the square holding every sample with intensity above
// 1e-12 of the peak.
double support_extent(const Field& f) {
  double peak = 0.0;
  for (const auto& s : f.samples) peak = std::max(peak, std::norm(s));
  double extent = 0.0;
  const GridSpec& g = f.grid;
  for (int j = 0; j < g.n; ++j) {
    for (int i = 0; i < g.n; ++i) {
      if (std::norm(f.at(i, j)) > 1e-12 * peak) {
        extent = std::max({extent, std::abs(g.coord(i)), std::abs(g.coord(j))});
      }
    }
  }
  return extent + 0.5 * g.cell();
}

// Content within the support wraps once its walk-off exceeds the distance to
// the padded window edge.
double wrap_fraction_of(const std::vector<cplx>& spectrum, const Field& f,
                        const PropagationParams& params) {
  const GridSpec& grid = f.grid;
  const int size = kPadding * grid.n;
  const double h = grid.cell();
  const double lambda = params.wavelength;
  const double margin = (kPadding * grid.half_width - support_extent(f)) * params.waist;
  double total = 0.0;
  double wrapped = 0.0;
  for (int b = 0; b < size; ++b) {
    const double vy = frequency(b, size, h) / params.waist;
    for (int a = 0; a < size; ++a) {
      const double vx = frequency(a, size, h) / params.waist;
      const double e = std::norm(spectrum[static_cast<std::size_t>(b) * size + a]);
      total += e;
      const double s2 = lambda * lambda * (vx * vx + vy * vy);
      if (s2 >= 1.0) continue;  // evanescent, removed anyway
      const double scale = params.distance * lambda / std::sqrt(1.0 - s2);
      if (std::abs(scale * vx) > margin || std::abs(scale * vy) > margin) wrapped += e;
    }
  }
  return total > 0.0 ? wrapped / total : 0.0;
}

}  // namespace

void validate(const PropagationParams& params) {
  if (!(params.wavelength > 0.0)) throw InputError("wavelength must be positive");
  if (!(params.waist > 0.0)) throw InputError("physical waist must be positive");
  if (!(params.distance >= 0.0)) throw InputError("propagation distance must be >= 0");
}

bool paraxial(const PropagationParams& params) { return params.waist >= 50.0 * params.wavelength; }

double rayleigh_range(const PropagationParams& params) {
  return std::numbers::pi * params.waist * params.waist / params.wavelength;
}

double wrap_energy_fraction(const Field& f, const PropagationParams& params) {
  validate(params);
  validate(f.grid);
  return wrap_fraction_of(padded_spectrum(f), f, params);
}

Field propagate(const Field& f, const PropagationParams& params) {
  validate(params);
  validate(f.grid);
  if (params.distance == 0.0) return f;

  auto spectrum = padded_spectrum(f);
  if (const double wrap = wrap_fraction_of(spectrum, f, params); wrap > kMaxWrapFraction) {
    std::ostringstream os;
    os << "propagation over " << params.distance << " m would alias: " << wrap
       << " of the spectral energy walks past the padding margin; increase the grid half-width"
          " or sample more finely";
    throw AliasingError(os.str());
  }

  const int n = f.grid.n;
  const int size = kPadding * n;
  const double h = f.grid.cell();
  const double lambda = params.wavelength;
  const double inv_lambda = 1.0 / lambda;
  const double d = params.distance;
  for (int b = 0; b < size; ++b) {
    const double vy = frequency(b, size, h) / params.waist;
    for (int a = 0; a < size; ++a) {
      const double vx = frequency(a, size, h) / params.waist;
      const double v2 = vx * vx + vy * vy;
      auto& s = spectrum[static_cast<std::size_t>(b) * size + a];
      double phase;
      if (params.fresnel) {
        phase = -std::numbers::pi * lambda * d * v2;
      } else {
        if (v2 >= inv_lambda * inv_lambda) {
          s = 0.0;
          continue;
        }
        // k_z - k, arranged to avoid cancellation.
        phase = -2.0 * std::numbers::pi * d * v2 / (std::sqrt(inv_lambda * inv_lambda - v2) + inv_lambda);
      }
      s *= std::polar(1.0, phase);
    }
  }

  auto plans = PlanCache::instance().get(size);
  auto* data = reinterpret_cast<fftw_complex*>(spectrum.data());
  fftw_execute_dft(plans.backward, data, data);

  Field out(f.grid);
  const int offset = (size - n) / 2;
  const double scale = 1.0 / (static_cast<double>(size) * size);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      out.at(i, j) = spectrum[static_cast<std::size_t>(j + offset) * size + (i + offset)] * scale;
    }
  }
  return out;
}

Field qplate(const Field& f, int two_q) {
  if (two_q == 0) return f;
  Field out = f;
  const GridSpec& g = f.grid;
  for (int j = 0; j < g.n; ++j) {
    const double y = g.coord(j);
    for (int i = 0; i < g.n; ++i) {
      out.at(i, j) *= std::polar(1.0, two_q * std::atan2(y, g.coord(i)));
    }
  }
  return out;
}

Field far_field(const Field& f) {
  validate(f.grid);
  using Matrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const int n = f.grid.n;
  Matrix kernel(n, n);
  for (int a = 0; a < n; ++a) {
    const double u = f.grid.coord(a);
    for (int i = 0; i < n; ++i) kernel(a, i) = std::polar(1.0, -2.0 * u * f.grid.coord(i));
  }
  // Row index is y, column index is x; the kernel is symmetric.
  Eigen::Map<const Matrix> in(f.samples.data(), n, n);
  Field out(f.grid);
  Eigen::Map<Matrix> result(out.samples.data(), n, n);
  const Matrix tmp = in * kernel;
  result.noalias() = kernel * tmp;
  result *= cplx(0.0, -f.grid.cell_area() / std::numbers::pi);
  return out;
}

}  // namespace oamq
