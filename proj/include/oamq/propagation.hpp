#pragma once

#include "oamq/grid.hpp"

namespace oamq {

// Physical scale for the dimensionless w0 grid. SI units.
struct PropagationParams {
  double wavelength = 795e-9;
  double waist = 1e-3;
  double distance = 0.0;
  bool fresnel = false;  // paraxial transfer function instead of the exact one
};

void validate(const PropagationParams& params);
// False when w0 < 50 lambda.
bool paraxial(const PropagationParams& params);
double rayleigh_range(const PropagationParams& params);

// Fraction of spectral energy whose geometric walk-off over `distance`
// exceeds the gap between the field's support and the padded window edge.
double wrap_energy_fraction(const Field& f, const PropagationParams& params);

inline constexpr double kMaxWrapFraction = 1e-3;

// Angular-spectrum propagation with 2x zero padding; evanescent components
// are dropped and the common phase exp(i k d) is omitted. Throws
// AliasingError when wrap_energy_fraction exceeds kMaxWrapFraction.
Field propagate(const Field& f, const PropagationParams& params);

// Scalar q-plate: multiplies by exp(i two_q phi).
Field qplate(const Field& f, int two_q);

// Back focal plane of a lens with f = zR, so a Gaussian waist maps onto
// itself: U(u) = 1/(i pi) Int A(x) exp(-2i x.u) dx. Unitary; sampled on the
// input grid.
Field far_field(const Field& f);

}  // namespace oamq
