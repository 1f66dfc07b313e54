#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "oamq/apertures.hpp"
#include "oamq/cli/config.hpp"
#include "oamq/lgmodes.hpp"
#include "oamq/quadrature.hpp"

namespace oamq::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitNonConvergence = 2;

struct SweepRow {
  double position = 0.0;
  std::string state;
  ClipReport report;
  bool converged = true;
  int n = 0;
};

struct MeanRow {
  double position = 0.0;
  double T = 0.0;
  double P_psi = 0.0;
  double P_perp = 0.0;
  double P_o2 = 0.0;
  std::optional<double> F;  // mean over states with defined F
  bool converged = true;
};

struct SweepResult {
  ApertureKind kind = ApertureKind::Knife;
  std::vector<SweepRow> rows;  // by position, then state label
  std::vector<MeanRow> mean;   // by position
  bool all_converged = true;
};

SweepResult sweep(const RunConfig& c, ApertureKind kind);
std::string sweep_csv(const SweepResult& r, const RunConfig& c);
std::string mean_csv(const SweepResult& r, const RunConfig& c);

// Knife edge x0 in [-L, L] with T(x0) = target for state q, by bisection.
// Throws InputError when the target lies outside [T(-L), T(L)].
double knife_position_for_transmittance(const OamQubit& q, double target, const GridSpec& grid);

struct SpectrumPanel {
  double target = 0.0;
  double x0 = 0.0;
  double T = 0.0;
  SpectrumTable table;
};
std::vector<SpectrumPanel> spectrum_panels(const RunConfig& c, int ell_min, int ell_max);

struct EntangledRow {
  double x0 = 0.0;
  double P_o2 = 0.0;
  std::optional<double> F_theory;
  std::optional<double> F_rescaled;
  bool converged = true;
};
std::vector<EntangledRow> entangled_sweep(const RunConfig& c);

struct PropagationStages {
  Field unperturbed, clipped, propagated, converted;
  double x0 = 0.0;
};
PropagationStages propagation_stages(const RunConfig& c);

// Subcommand drivers: write files under c.out, log to `log`, return exit code.
int cmd_sweep(const RunConfig& c, ApertureKind kind, std::ostream& log);
int cmd_spectrum(const RunConfig& c, std::ostream& log);
int cmd_propagate(const RunConfig& c, std::ostream& log);
int cmd_entangled(const RunConfig& c, std::ostream& log);
int cmd_selftest(const RunConfig& c, std::ostream& log);

// Full CLI: argument parsing, dispatch and exit-code mapping.
int main(int argc, const char* const* argv);

}  // namespace oamq::cli
