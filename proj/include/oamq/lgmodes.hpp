#pragma once

#include <span>
#include <string_view>

#include "oamq/grid.hpp"

namespace oamq {

// Laguerre-Gaussian mode at its waist plane. Lengths are in the same units
// as w0; the rest of the library uses w0 = 1.
struct LGMode {
  int ell = 0;
  int p = 0;
  double w0 = 1.0;
};

void validate(const LGMode& mode);

// Generalized Laguerre polynomial L_p^alpha(x) by three-term recurrence.
double laguerre(int p, double alpha, double x);

// Fills out[0..p_max] with L_0^alpha(x) .. L_{p_max}^alpha(x).
void laguerre_sequence(double alpha, double x, std::span<double> out);

// N_{p,l} such that the waist-plane mode has unit L2 norm.
double lg_normalization(int p, int abs_ell, double w0 = 1.0);

// N (sqrt2 r/w0)^|l| L_p^|l|(2r^2/w0^2) exp(-r^2/w0^2) exp(i l phi)
cplx lg_amplitude(const LGMode& mode, double x, double y);

// alpha |+k> + beta |-k> in the o_k subspace (p = 0).
struct OamQubit {
  int k = 2;
  cplx alpha{1.0, 0.0};
  cplx beta{0.0, 0.0};
};

// Validating constructor: k >= 1 and |alpha|^2 + |beta|^2 = 1 within 1e-12.
OamQubit make_qubit(int k, cplx alpha, cplx beta);

// One of l, r, h, v, d, a. Unknown labels throw InputError.
OamQubit canonical_state(std::string_view label, int k = 2);

inline constexpr std::string_view kCanonicalLabels[] = {"l", "r", "h", "v", "d", "a"};

// (alpha, beta) -> (-conj(beta), conj(alpha))
OamQubit orthogonal_state(const OamQubit& q);

// Coefficient inner product <a|b>; requires equal k.
cplx overlap(const OamQubit& a, const OamQubit& b);

// Samples alpha A_{0,+k} + beta A_{0,-k} at cell centers. Adds a diagnostic
// when the grid captures less than 0.999 of the norm.
Field render_field(const OamQubit& q, const GridSpec& grid);

Field render_mode(const LGMode& mode, const GridSpec& grid);

}  // namespace oamq
