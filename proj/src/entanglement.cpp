#include "oamq/entanglement.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "oamq/errors.hpp"
#include "oamq/quadrature.hpp"

namespace oamq {

double ChannelMatrix::max_singular_value() const {
  Eigen::JacobiSVD<Eigen::Matrix2cd> svd(m);
  return svd.singularValues()(0);
}

ChannelMatrix channel_from_aperture(const Aperture& ap, int k, const GridSpec& grid) {
  return {aperture_response(ap, k, grid)};
}

Eigen::Vector4cd hybrid_singlet_vector() {
  Eigen::Vector4cd psi = Eigen::Vector4cd::Zero();
  psi(0) = 1.0 / std::numbers::sqrt2;   // |H, +k>
  psi(3) = -1.0 / std::numbers::sqrt2;  // |V, -k>
  return psi;
}

HybridState hybrid_singlet(int k) {
  if (k < 1) throw InputError("winding number k must be >= 1");
  const Eigen::Vector4cd psi = hybrid_singlet_vector();
  return {psi * psi.adjoint(), k, true};
}

ChannelOutput apply_one_sided(const HybridState& s, const ChannelMatrix& ch) {
  Eigen::Matrix4cd op = Eigen::Matrix4cd::Zero();
  op.block<2, 2>(0, 0) = ch.m;
  op.block<2, 2>(2, 2) = ch.m;
  ChannelOutput out;
  out.state.rho = op * s.rho * op.adjoint();
  out.state.k = s.k;
  out.state.normalized = false;
  out.P_o2 = out.state.rho.trace().real();
  return out;
}

std::optional<double> hybrid_fidelity(const HybridState& rho_prime, const HybridState& target) {
  const double trace = rho_prime.rho.trace().real();
  if (!(trace > 1e-15)) return std::nullopt;
  // For a pure target, <psi|rho'|psi> = Tr(rho_target rho').
  return (target.rho * rho_prime.rho).trace().real() / trace;
}

double rescale_fidelity(double f_theory, double f_max_measured) {
  if (!(f_theory > 0.0 && f_theory <= 1.0) || !(f_max_measured > 0.0 && f_max_measured <= 1.0)) {
    throw InputError("rescale_fidelity: arguments must lie in (0, 1]");
  }
  return f_theory * f_max_measured;
}

Eigen::Matrix2cd reduced_polarization(const HybridState& s) {
  Eigen::Matrix2cd r;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) r(a, b) = s.rho(2 * a, 2 * b) + s.rho(2 * a + 1, 2 * b + 1);
  }
  return r;
}

double entropy_bits(const Eigen::Matrix2cd& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> eig(rho);
  double s = 0.0;
  for (int i = 0; i < 2; ++i) {
    const double lam = eig.eigenvalues()(i);
    if (lam > 1e-15) s -= lam * std::log2(lam);
  }
  return s;
}

double purity(const HybridState& s) { return (s.rho * s.rho).trace().real(); }

}  // namespace oamq
