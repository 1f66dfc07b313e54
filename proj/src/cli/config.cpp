#include "oamq/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <sstream>
#include <thread>
#include <type_traits>

#include "oamq/cli/output.hpp"
#include "oamq/errors.hpp"
#include "oamq/lgmodes.hpp"

namespace oamq::cli {

int RunConfig::worker_count() const {
  if (threads > 0) return threads;
  return std::max(1u, std::thread::hardware_concurrency());
}

SweepRange knife_range(const RunConfig& c) {
  return {c.start.value_or(-2.5), c.stop.value_or(2.5), c.step.value_or(0.05)};
}

SweepRange iris_range(const RunConfig& c) {
  return {c.start.value_or(0.1), c.stop.value_or(3.0), c.step.value_or(0.05)};
}

std::vector<double> sweep_positions(const SweepRange& r) {
  if (!(r.step > 0.0)) throw InputError("sweep step must be positive");
  if (!(r.stop >= r.start)) throw InputError("sweep range is empty (stop < start)");
  const auto count = static_cast<long>(std::floor((r.stop - r.start) / r.step + 1e-9)) + 1;
  std::vector<double> out;
  out.reserve(count);
  for (long i = 0; i < count; ++i) {
    double v = std::round((r.start + i * r.step) * 1e9) / 1e9;
    if (v == 0.0) v = 0.0;
    out.push_back(v);
  }
  return out;
}

void validate(const RunConfig& c) {
  if (c.states.empty()) throw InputError("no states selected");
  for (const auto& s : c.states) canonical_state(s, c.k);
  canonical_state(c.state, c.k);
  validate(c.grid());
  if (c.max_n < c.n) throw InputError("max_n must be >= n");
  if (c.max_n > 4096) throw InputError("max_n is capped at 4096");
  if (!(c.rel_tol > 0.0)) throw InputError("rel_tol must be positive");
  validate(c.propagation());
  if (c.ell_min > c.ell_max) throw InputError("ell_min must be <= ell_max");
  if (c.p_max < 0) throw InputError("p_max must be >= 0");
  if (c.targets.empty()) throw InputError("no target transmittances");
  for (double t : c.targets) {
    if (!(t >= 0.0 && t <= 1.0)) throw InputError("target transmittance outside [0, 1]");
  }
  if (!(c.transmittance >= 0.0 && c.transmittance <= 1.0)) {
    throw InputError("transmittance outside [0, 1]");
  }
  if (c.f_max && !(*c.f_max > 0.0 && *c.f_max <= 1.0)) throw InputError("f_max must lie in (0, 1]");
  if (c.threads < 0) throw InputError("threads must be >= 0");
  if (c.out.empty()) throw InputError("output directory is empty");
  if (c.step && !(*c.step > 0.0)) throw InputError("sweep step must be positive");
  if (c.start && c.stop && *c.stop < *c.start) throw InputError("sweep range is empty (stop < start)");
}

namespace {

template <class T>
std::string join(const std::vector<T>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    if constexpr (std::is_floating_point_v<T>) {
      os << format_number(v[i]);
    } else {
      os << v[i];
    }
  }
  return os.str();
}

std::string opt(const std::optional<double>& v) { return v ? format_number(*v) : "default"; }

}  // namespace

std::string canonical_text(const RunConfig& c) {
  // threads and out are excluded: they never change the numbers.
  std::map<std::string, std::string> kv{
      {"command", c.command},
      {"states", join(c.states)},
      {"k", std::to_string(c.k)},
      {"start", opt(c.start)},
      {"stop", opt(c.stop)},
      {"step", opt(c.step)},
      {"half_width", format_number(c.half_width)},
      {"n", std::to_string(c.n)},
      {"max_n", std::to_string(c.max_n)},
      {"converge", c.converge ? "true" : "false"},
      {"rel_tol", format_number(c.rel_tol)},
      {"wavelength", format_number(c.wavelength)},
      {"waist", format_number(c.waist)},
      {"distance", format_number(c.distance)},
      {"fresnel", c.fresnel ? "true" : "false"},
      {"state", c.state},
      {"transmittance", format_number(c.transmittance)},
      {"ell_min", std::to_string(c.ell_min)},
      {"ell_max", std::to_string(c.ell_max)},
      {"p_max", std::to_string(c.p_max)},
      {"targets", join(c.targets)},
      {"f_max", opt(c.f_max)},
  };
  std::string text;
  for (const auto& [key, value] : kv) text += key + " = " + value + "\n";
  return text;
}

std::string config_hash(const RunConfig& c) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char ch : canonical_text(c)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace oamq::cli
