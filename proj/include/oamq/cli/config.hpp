#pragma once

#include <optional>
#include <string>
#include <vector>

#include "oamq/grid.hpp"
#include "oamq/propagation.hpp"

namespace oamq::cli {

// Every field maps to a `--key value` flag and to a `key = value` line in the
// INI-style config file. Unset range fields take per-command defaults.
struct RunConfig {
  std::string command;

  std::vector<std::string> states{"l", "r", "h", "v", "d", "a"};
  int k = 2;

  std::optional<double> start;
  std::optional<double> stop;
  std::optional<double> step;

  double half_width = 6.0;
  int n = 1024;
  int max_n = 4096;
  bool converge = true;
  double rel_tol = 1e-4;

  double wavelength = 795e-9;
  double waist = 1e-3;
  double distance = 0.30;
  bool fresnel = false;
  std::string state = "l";      // propagate / spectrum input state
  double transmittance = 0.5;   // propagate knife setting

  int ell_min = -2;
  int ell_max = 12;
  int p_max = 0;
  std::vector<double> targets{1.0, 0.5, 0.28, 0.05};

  std::string out = "out";
  bool svg = true;
  std::optional<double> f_max;
  int threads = 0;  // 0: hardware concurrency

  GridSpec grid() const { return {half_width, n}; }
  PropagationParams propagation() const { return {wavelength, waist, distance, fresnel}; }
  int worker_count() const;
};

struct SweepRange {
  double start, stop, step;
};

// Knife: [-2.5, 2.5] step 0.05. Iris: [0.1, 3] step 0.05.
SweepRange knife_range(const RunConfig& c);
SweepRange iris_range(const RunConfig& c);

// start + i*step up to stop, snapped to 1e-9 so that e.g. 0 comes out exactly.
std::vector<double> sweep_positions(const SweepRange& r);

// Throws InputError on empty ranges, non-positive steps, bad labels, etc.
void validate(const RunConfig& c);

// Sorted key = value lines of every setting; hashed into CSV headers.
std::string canonical_text(const RunConfig& c);
std::string config_hash(const RunConfig& c);

}  // namespace oamq::cli
