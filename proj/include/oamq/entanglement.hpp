#pragma once

#include <Eigen/Core>
#include <optional>

#include "oamq/apertures.hpp"
#include "oamq/grid.hpp"

namespace oamq {

// Aperture followed by p = 0 post-selection on {|+k>, |-k>}:
// m(i, j) = <basis_i | B | basis_j>.
struct ChannelMatrix {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();

  double max_singular_value() const;
};

ChannelMatrix channel_from_aperture(const Aperture& ap, int k, const GridSpec& grid);

// Density operator on polarization (x) o_k. Index = 2 * pol + oam with
// pol in {H, V} and oam in {+k, -k}.
struct HybridState {
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  int k = 2;
  bool normalized = true;
};

// (|H>|+k> - |V>|-k>) / sqrt2
HybridState hybrid_singlet(int k = 2);
Eigen::Vector4cd hybrid_singlet_vector();

struct ChannelOutput {
  HybridState state;  // unnormalized
  double P_o2 = 0.0;  // Tr rho'
};

// rho' = (I (x) M) rho (I (x) M)^H
ChannelOutput apply_one_sided(const HybridState& s, const ChannelMatrix& ch);

// <psi|rho'|psi> / Tr rho' for a pure target; empty when Tr rho' vanishes.
std::optional<double> hybrid_fidelity(const HybridState& rho_prime, const HybridState& target);

// Dashed-curve model: F_theory * F_max_measured. Both must lie in (0, 1].
double rescale_fidelity(double f_theory, double f_max_measured);

Eigen::Matrix2cd reduced_polarization(const HybridState& s);
// Von Neumann entropy in bits.
double entropy_bits(const Eigen::Matrix2cd& rho);
double purity(const HybridState& s);

}  // namespace oamq
