#pragma once

#include <Eigen/Core>
#include <optional>
#include <vector>

#include "oamq/apertures.hpp"
#include "oamq/grid.hpp"
#include "oamq/lgmodes.hpp"

namespace oamq {

// Midpoint rule: sum conj(a) b h^2. Throws InputError on grid mismatch.
cplx inner_product(const Field& a, const Field& b);
double norm2(const Field& f);

struct ClipReport {
  double T = 0.0;
  cplx kappa_psi{};
  cplx kappa_perp{};
  double P_psi = 0.0;
  double P_perp = 0.0;
  double P_o2 = 0.0;
  std::optional<double> F;  // empty when P_psi + P_perp < 1e-12
};

// Builds P_psi, P_perp, P_o2 and F from T and the two projections.
ClipReport make_report(double T, cplx kappa_psi, cplx kappa_perp);

// Field route: render A and A_perp, clip both, then
//   T = <A', A'>, kappa_psi = <B A, A'>, kappa_perp = <B A_perp, A'>.
// B is a projector, so <B X, B A> is the discrete form of <X, B A> that
// weights edge cells by their exact area fraction.
ClipReport clip_report(const OamQubit& q, const Aperture& ap, const GridSpec& grid);

// K_ij = <e_i, B e_j> over the basis {|+k>, |-k>}, accumulated cell by cell
// without storing fields. Hermitian, 0 <= K <= 1.
Eigen::Matrix2cd aperture_response(const Aperture& ap, int k, const GridSpec& grid);

// Report for any o_k qubit from its aperture response:
//   T = c^H K c, kappa_psi = c^H K c, kappa_perp = c_perp^H K c.
ClipReport report_from_response(const OamQubit& q, const Eigen::Matrix2cd& response);

struct ConvergedReport {
  ClipReport report;
  GridSpec grid;               // finest grid evaluated
  bool converged = false;
  std::vector<double> deltas;  // max relative change per doubling
};

inline constexpr int kMaxGridN = 4096;

// Doubles n until every report scalar changes by less than rel_tol
// (|a - b| / max(|a|, |b|, 1e-2)) or n reaches max_n.
ConvergedReport converge(const OamQubit& q, const Aperture& ap, const GridSpec& grid,
                         double rel_tol = 1e-4, int max_n = kMaxGridN);

// Same as converge() for every state of one aperture, sharing the responses.
struct ConvergedSet {
  std::vector<ClipReport> reports;
  GridSpec grid;
  bool converged = false;
  std::vector<double> deltas;
};
ConvergedSet converge_states(const std::vector<OamQubit>& states, const Aperture& ap,
                             const GridSpec& grid, double rel_tol = 1e-4,
                             int max_n = kMaxGridN);

struct ConvergedResponse {
  Eigen::Matrix2cd m;
  GridSpec grid;
  bool converged = false;
  std::vector<double> deltas;
};

// converge() applied to the entries of aperture_response().
ConvergedResponse converge_response(const Aperture& ap, int k, const GridSpec& grid,
                                    double rel_tol = 1e-4, int max_n = kMaxGridN);

// Probability table |<LG_{p,l'}, f>|^2 for l' in [ell_min, ell_max], p in [0, p_max].
struct SpectrumTable {
  int ell_min = 0;
  int ell_max = 0;
  int p_max = 0;
  std::vector<double> prob;  // (l' - ell_min) * (p_max + 1) + p

  double at(int ell, int p) const;
  double total() const;
  // Sum over p for one l'.
  double ell_total(int ell) const;
};

SpectrumTable oam_spectrum(const Field& f, int ell_min, int ell_max, int p_max);

// Spectrum of an aperture-clipped qubit with amplitudes <B LG, B A>, the
// exact-area-weight counterpart of oam_spectrum(apply_aperture(render(q))).
SpectrumTable clipped_spectrum(const OamQubit& q, const Aperture& ap, const GridSpec& grid,
                               int ell_min, int ell_max, int p_max);

// Weight of exp(i l phi) for l in [ell_min, ell_max], summed over radius.
// Cells are binned into rings of width h and each ring is Fourier analysed
// in the cell angles, so qplate(f, s) shifts the result by exactly s.
std::vector<double> azimuthal_spectrum(const Field& f, int ell_min, int ell_max);

}  // namespace oamq
