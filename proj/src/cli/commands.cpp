#include "oamq/cli/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>

#include "oamq/cli/output.hpp"
#include "oamq/cli/parallel.hpp"
#include "oamq/entanglement.hpp"
#include "oamq/errors.hpp"
#include "oamq/propagation.hpp"

namespace oamq::cli {

namespace {

const char* command_name(ApertureKind kind) {
  return kind == ApertureKind::Iris ? "sweep-iris" : "sweep-knife";
}

std::vector<std::string> sorted_labels(const std::vector<std::string>& labels) {
  std::vector<std::string> out = labels;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Aperture make_aperture(ApertureKind kind, double position) {
  return kind == ApertureKind::Iris ? Aperture::iris(position) : Aperture::knife(position);
}

std::string header_line(const RunConfig& c, const std::string& command, std::size_t converged,
                        std::size_t total) {
  std::ostringstream os;
  os << "# oamq " << command << " config_hash=" << config_hash(c) << " half_width="
     << format_number(c.half_width) << " n=" << c.n << " max_n=" << c.max_n << " grid_converged="
     << (converged == total ? "all" : "partial") << " (" << converged << "/" << total << ")\n";
  return os.str();
}

std::string prepare_out(const RunConfig& c) {
  std::error_code ec;
  std::filesystem::create_directories(c.out, ec);
  if (ec || !std::filesystem::is_directory(c.out)) {
    throw InputError("output directory '" + c.out + "' is not writable");
  }
  return c.out;
}

std::string path_in(const RunConfig& c, const std::string& name) {
  return (std::filesystem::path(c.out) / name).string();
}

double value_or_nan(const std::optional<double>& v) {
  return v.value_or(std::numeric_limits<double>::quiet_NaN());
}

}  // namespace

SweepResult sweep(const RunConfig& c, ApertureKind kind) {
  validate(c);
  const auto positions =
      sweep_positions(kind == ApertureKind::Iris ? iris_range(c) : knife_range(c));
  if (kind == ApertureKind::Iris && positions.front() < 0.0) {
    throw InputError("iris sweep radii must be >= 0");
  }
  const auto labels = sorted_labels(c.states);
  std::vector<OamQubit> states;
  for (const auto& l : labels) states.push_back(canonical_state(l, c.k));

  struct Point {
    std::vector<ClipReport> reports;
    bool converged = true;
    int n = 0;
  };
  const auto points = parallel_map<Point>(positions.size(), c.worker_count(), [&](std::size_t i) {
    const Aperture ap = make_aperture(kind, positions[i]);
    Point pt;
    if (c.converge) {
      auto set = converge_states(states, ap, c.grid(), c.rel_tol, c.max_n);
      pt.reports = std::move(set.reports);
      pt.converged = set.converged;
      pt.n = set.grid.n;
    } else {
      const auto m = aperture_response(ap, c.k, c.grid());
      for (const auto& q : states) pt.reports.push_back(report_from_response(q, m));
      pt.n = c.n;
    }
    return pt;
  });

  SweepResult r;
  r.kind = kind;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    MeanRow m;
    m.position = positions[i];
    m.converged = points[i].converged;
    double f_sum = 0.0;
    int f_count = 0;
    for (std::size_t s = 0; s < states.size(); ++s) {
      const auto& rep = points[i].reports[s];
      r.rows.push_back({positions[i], labels[s], rep, points[i].converged, points[i].n});
      m.T += rep.T;
      m.P_psi += rep.P_psi;
      m.P_perp += rep.P_perp;
      m.P_o2 += rep.P_o2;
      if (rep.F) {
        f_sum += *rep.F;
        ++f_count;
      }
    }
    const double ns = static_cast<double>(states.size());
    m.T /= ns;
    m.P_psi /= ns;
    m.P_perp /= ns;
    m.P_o2 /= ns;
    if (f_count > 0) m.F = f_sum / f_count;
    r.all_converged = r.all_converged && m.converged;
    r.mean.push_back(m);
  }
  return r;
}

std::string sweep_csv(const SweepResult& r, const RunConfig& c) {
  const auto converged = static_cast<std::size_t>(
      std::count_if(r.mean.begin(), r.mean.end(), [](const MeanRow& m) { return m.converged; }));
  std::ostringstream os;
  os << header_line(c, command_name(r.kind), converged, r.mean.size());
  os << "position,state,T,P_psi,P_perp,P_o2,F,converged\n";
  for (const auto& row : r.rows) {
    os << format_number(row.position) << ',' << row.state << ',' << format_number(row.report.T) << ','
       << format_number(row.report.P_psi) << ',' << format_number(row.report.P_perp) << ','
       << format_number(row.report.P_o2) << ',' << format_optional(row.report.F) << ','
       << (row.converged ? 1 : 0) << '\n';
  }
  return os.str();
}

std::string mean_csv(const SweepResult& r, const RunConfig& c) {
  const auto converged = static_cast<std::size_t>(
      std::count_if(r.mean.begin(), r.mean.end(), [](const MeanRow& m) { return m.converged; }));
  std::ostringstream os;
  os << header_line(c, std::string(command_name(r.kind)) + " mean", converged, r.mean.size());
  os << "position,T,P_psi,P_perp,P_o2,F,converged\n";
  for (const auto& m : r.mean) {
    os << format_number(m.position) << ',' << format_number(m.T) << ',' << format_number(m.P_psi) << ','
       << format_number(m.P_perp) << ',' << format_number(m.P_o2) << ',' << format_optional(m.F) << ','
       << (m.converged ? 1 : 0) << '\n';
  }
  return os.str();
}

double knife_position_for_transmittance(const OamQubit& q, double target, const GridSpec& grid) {
  auto T = [&](double x0) {
    return report_from_response(q, aperture_response(Aperture::knife(x0), q.k, grid)).T;
  };
  double lo = -grid.half_width, hi = grid.half_width;
  const double t_lo = T(lo), t_hi = T(hi);
  if (std::abs(target - t_hi) <= 1e-12) return hi;
  if (std::abs(target - t_lo) <= 1e-12) return lo;
  if (target < t_lo || target > t_hi) {
    std::ostringstream os;
    os << "target transmittance " << target << " is unattainable: knife T spans [" << t_lo << ", "
       << t_hi << "]";
    throw InputError(os.str());
  }
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double t = T(mid);
    if (std::abs(t - target) <= 1e-8) return mid;
    (t < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<SpectrumPanel> spectrum_panels(const RunConfig& c, int ell_min, int ell_max) {
  validate(c);
  const OamQubit q = canonical_state(c.state, c.k);
  return parallel_map<SpectrumPanel>(c.targets.size(), c.worker_count(), [&](std::size_t i) {
    SpectrumPanel p;
    p.target = c.targets[i];
    p.x0 = knife_position_for_transmittance(q, p.target, c.grid());
    const Aperture ap = Aperture::knife(p.x0);
    p.T = report_from_response(q, aperture_response(ap, c.k, c.grid())).T;
    p.table = clipped_spectrum(q, ap, c.grid(), ell_min, ell_max, c.p_max);
    return p;
  });
}

std::vector<EntangledRow> entangled_sweep(const RunConfig& c) {
  validate(c);
  const auto positions = sweep_positions(knife_range(c));
  const HybridState target = hybrid_singlet(c.k);
  return parallel_map<EntangledRow>(positions.size(), c.worker_count(), [&](std::size_t i) {
    const Aperture ap = Aperture::knife(positions[i]);
    EntangledRow row;
    row.x0 = positions[i];
    ChannelMatrix ch;
    if (c.converge) {
      auto conv = converge_response(ap, c.k, c.grid(), c.rel_tol, c.max_n);
      ch.m = conv.m;
      row.converged = conv.converged;
    } else {
      ch = channel_from_aperture(ap, c.k, c.grid());
    }
    const auto out = apply_one_sided(target, ch);
    row.P_o2 = out.P_o2;
    row.F_theory = hybrid_fidelity(out.state, target);
    if (c.f_max && row.F_theory && *row.F_theory > 0.0) {
      row.F_rescaled = rescale_fidelity(*row.F_theory, *c.f_max);
    }
    return row;
  });
}

PropagationStages propagation_stages(const RunConfig& c) {
  validate(c);
  const OamQubit q = canonical_state(c.state, c.k);
  PropagationStages s;
  s.x0 = knife_position_for_transmittance(q, c.transmittance, c.grid());
  s.unperturbed = render_field(q, c.grid());
  s.clipped = apply_aperture(s.unperturbed, Aperture::knife(s.x0));
  s.propagated = propagate(s.clipped, c.propagation());
  s.converted = far_field(qplate(s.propagated, -c.k));
  return s;
}

int cmd_sweep(const RunConfig& c, ApertureKind kind, std::ostream& log) {
  prepare_out(c);
  const SweepResult r = sweep(c, kind);
  const std::string base = kind == ApertureKind::Iris ? "iris_sweep" : "knife_sweep";
  write_text_file(path_in(c, base + ".csv"), sweep_csv(r, c));
  write_text_file(path_in(c, base + "_mean.csv"), mean_csv(r, c));
  log << "wrote " << path_in(c, base + ".csv") << " (" << r.rows.size() << " rows)\n";

  if (c.svg) {
    const std::string axis = kind == ApertureKind::Iris ? "r0 / w0" : "x0 / w0";
    std::map<std::string, Series> by_state;
    Series mean_p{"mean", {}, {}}, mean_f{"mean", {}, {}}, f_vs_t{"mean", {}, {}};
    for (const auto& row : r.rows) {
      auto& s = by_state[row.state];
      s.name = row.state;
      s.x.push_back(row.position);
      s.y.push_back(row.report.P_o2);
    }
    for (const auto& m : r.mean) {
      mean_p.x.push_back(m.position);
      mean_p.y.push_back(m.P_o2);
      mean_f.x.push_back(m.position);
      mean_f.y.push_back(value_or_nan(m.F));
      f_vs_t.x.push_back(m.T);
      f_vs_t.y.push_back(value_or_nan(m.F));
    }
    std::vector<Series> p_series;
    for (auto& [label, s] : by_state) p_series.push_back(s);
    p_series.push_back(mean_p);
    write_text_file(path_in(c, base + "_P_o2.svg"),
                    svg_line_plot({"Information preservation probability", axis, "P_o2", 0.0, 1.0}, p_series));
    write_text_file(path_in(c, base + "_fidelity.svg"),
                    svg_line_plot({"Mean fidelity", axis, "F", std::nullopt, 1.0}, {mean_f}));
    write_text_file(path_in(c, base + "_F_vs_T.svg"),
                    svg_line_plot({"Fidelity versus transmittance", "T", "F", std::nullopt, 1.0}, {f_vs_t}));
  }
  if (!r.all_converged) {
    log << "warning: some sweep points did not converge by n=" << c.max_n << " (see converged column)\n";
    return kExitNonConvergence;
  }
  return kExitOk;
}

int cmd_spectrum(const RunConfig& c, std::ostream& log) {
  prepare_out(c);
  // Mirror of the configured range about l' = k, merged with it.
  const int ext_min = std::min(c.ell_min, 2 * c.k - c.ell_max);
  const int ext_max = std::max(c.ell_max, 2 * c.k - c.ell_min);
  const auto panels = spectrum_panels(c, ext_min, ext_max);

  auto table_csv = [&](int lo, int hi, const std::string& tag) {
    std::ostringstream os;
    os << header_line(c, "spectrum " + tag, panels.size(), panels.size());
    os << "target_T,x0,T,ell,p,probability\n";
    for (const auto& p : panels) {
      for (int ell = lo; ell <= hi; ++ell) {
        for (int rp = 0; rp <= c.p_max; ++rp) {
          os << format_number(p.target) << ',' << format_number(p.x0) << ',' << format_number(p.T) << ','
             << ell << ',' << rp << ',' << format_number(p.table.at(ell, rp)) << '\n';
        }
      }
    }
    return os.str();
  };
  write_text_file(path_in(c, "spectrum.csv"), table_csv(c.ell_min, c.ell_max, "range"));
  write_text_file(path_in(c, "spectrum_extended.csv"), table_csv(ext_min, ext_max, "extended"));
  for (const auto& p : panels) {
    log << "T target " << format_number(p.target) << ": x0 = " << format_number(p.x0)
        << ", T = " << format_number(p.T) << "\n";
  }
  if (c.svg) {
    for (std::size_t i = 0; i < panels.size(); ++i) {
      std::vector<int> cats;
      std::vector<double> vals;
      for (int ell = c.ell_min; ell <= c.ell_max; ++ell) {
        cats.push_back(ell);
        vals.push_back(panels[i].table.at(ell, 0));
      }
      const std::string title = "p = 0 OAM spectrum, T = " + format_number(panels[i].T);
      write_text_file(path_in(c, "spectrum_" + std::to_string(i) + ".svg"),
                      svg_bar_chart({title, "l'", "probability", 0.0, std::nullopt}, cats, vals));
    }
  }
  return kExitOk;
}

int cmd_propagate(const RunConfig& c, std::ostream& log) {
  prepare_out(c);
  if (!paraxial(c.propagation())) log << "warning: w0 < 50 lambda, paraxial picture is questionable\n";
  const auto s = propagation_stages(c);
  const std::pair<const char*, const Field*> stages[] = {{"stage_a_unperturbed", &s.unperturbed},
                                                         {"stage_b_clipped", &s.clipped},
                                                         {"stage_c_propagated", &s.propagated},
                                                         {"stage_d_qplate", &s.converted}};
  double scale = 0.0;
  std::vector<std::vector<double>> intensities;
  for (const auto& [name, f] : stages) {
    std::vector<double> in(f->samples.size());
    for (std::size_t i = 0; i < in.size(); ++i) in[i] = std::norm(f->samples[i]);
    scale = std::max(scale, *std::max_element(in.begin(), in.end()));
    intensities.push_back(std::move(in));
  }
  std::ostringstream csv;
  csv << header_line(c, "propagate", 1, 1);
  csv << "stage,energy,on_axis_intensity,max_intensity\n";
  const int n = c.n;
  for (std::size_t k = 0; k < 4; ++k) {
    const auto& in = intensities[k];
    write_pgm16(path_in(c, std::string(stages[k].first) + ".pgm"), n, n, in, scale);
    // Four cells surround the axis.
    const std::size_t a = static_cast<std::size_t>(n / 2) * n + n / 2;
    const double axis = 0.25 * (in[a] + in[a - 1] + in[a - n] + in[a - n - 1]);
    csv << stages[k].first << ',' << format_number(norm2(*stages[k].second)) << ',' << format_number(axis)
        << ',' << format_number(*std::max_element(in.begin(), in.end())) << '\n';
  }
  write_text_file(path_in(c, "propagate.csv"), csv.str());
  log << "knife x0 = " << format_number(s.x0) << ", T = " << format_number(norm2(s.clipped))
      << "; images share one gray scale (max intensity " << format_number(scale) << ")\n";
  return kExitOk;
}

int cmd_entangled(const RunConfig& c, std::ostream& log) {
  prepare_out(c);
  const auto rows = entangled_sweep(c);
  const auto converged = static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const EntangledRow& r) { return r.converged; }));
  std::ostringstream os;
  os << header_line(c, "entangled", converged, rows.size());
  os << "x0,P_o2,F_theory" << (c.f_max ? ",F_rescaled" : "") << ",converged\n";
  Series p{"theory", {}, {}}, f{"theory", {}, {}}, fr{"rescaled", {}, {}};
  for (const auto& r : rows) {
    os << format_number(r.x0) << ',' << format_number(r.P_o2) << ',' << format_optional(r.F_theory);
    if (c.f_max) os << ',' << format_optional(r.F_rescaled);
    os << ',' << (r.converged ? 1 : 0) << '\n';
    p.x.push_back(r.x0);
    p.y.push_back(r.P_o2);
    f.x.push_back(r.x0);
    f.y.push_back(value_or_nan(r.F_theory));
    fr.x.push_back(r.x0);
    fr.y.push_back(value_or_nan(r.F_rescaled));
  }
  write_text_file(path_in(c, "entangled.csv"), os.str());
  log << "wrote " << path_in(c, "entangled.csv") << " (" << rows.size() << " rows)\n";
  if (c.svg) {
    write_text_file(path_in(c, "entangled_P_o2.svg"),
                    svg_line_plot({"Hybrid pair P_o2", "x0 / w0", "P_o2", 0.0, 1.0}, {p}));
    std::vector<Series> fs{f};
    if (c.f_max) fs.push_back(fr);
    write_text_file(path_in(c, "entangled_fidelity.svg"),
                    svg_line_plot({"Hybrid pair fidelity", "x0 / w0", "F", std::nullopt, 1.0}, fs));
  }
  return converged == rows.size() ? kExitOk : kExitNonConvergence;
}

int cmd_selftest(const RunConfig& config, std::ostream& log) {
  RunConfig c = config;
  c.n = std::min(c.n, 256);
  c.max_n = std::max(c.max_n, c.n);
  c.svg = false;
  c.start.reset();
  c.stop.reset();
  c.step.reset();
  c.states = {"l", "r", "h", "v", "d", "a"};
  c.state = "l";
  c.p_max = 0;
  prepare_out(c);

  int failures = 0;
  auto check = [&](const std::string& name, bool ok) {
    log << (ok ? "[PASS] " : "[FAIL] ") << name << '\n';
    if (!ok) ++failures;
  };

  const SweepResult knife = sweep(c, ApertureKind::Knife);
  write_text_file(path_in(c, "selftest_knife.csv"), sweep_csv(knife, c));
  write_text_file(path_in(c, "selftest_knife_mean.csv"), mean_csv(knife, c));
  bool centre = false, resilient = true, pairs = true;
  std::map<std::pair<double, std::string>, double> p_o2;
  for (const auto& row : knife.rows) {
    p_o2[{row.position, row.state}] = row.report.P_o2;
    if (row.position == 0.0 && row.state == "l") {
      centre = std::abs(row.report.T - 0.5) <= 1e-4 && std::abs(row.report.P_o2 - 0.25) <= 1e-3 &&
               row.report.F && std::abs(*row.report.F - 1.0) <= 1e-3;
    }
  }
  for (const auto& m : knife.mean) {
    if (m.T >= 0.05) resilient = resilient && m.F && *m.F >= 0.90;
    pairs = pairs && std::abs(p_o2[{m.position, "l"}] - p_o2[{m.position, "r"}]) <= 1e-6 &&
            std::abs(p_o2[{m.position, "d"}] - p_o2[{m.position, "a"}]) <= 1e-6;
  }
  check("knife x0=0 on |l>: T=0.5, P_o2=0.25, F=1", centre);
  check("knife: mean F >= 0.90 wherever T >= 0.05", resilient);
  check("knife: P_o2(l)=P_o2(r), P_o2(d)=P_o2(a)", pairs);

  const SweepResult iris = sweep(c, ApertureKind::Iris);
  write_text_file(path_in(c, "selftest_iris.csv"), sweep_csv(iris, c));
  bool unit = true;
  for (const auto& row : iris.rows) unit = unit && row.report.F && std::abs(*row.report.F - 1.0) <= 1e-5;
  check("iris: F = 1 for every state and radius", unit);

  const auto ent = entangled_sweep(c);
  std::ostringstream ecsv;
  ecsv << header_line(c, "selftest entangled", ent.size(), ent.size()) << "x0,P_o2,F_theory\n";
  bool ent_ok = false;
  for (const auto& r : ent) {
    ecsv << format_number(r.x0) << ',' << format_number(r.P_o2) << ',' << format_optional(r.F_theory) << '\n';
    if (r.x0 == 0.0) {
      ent_ok = std::abs(r.P_o2 - 0.25) <= 1e-3 && r.F_theory && std::abs(*r.F_theory - 1.0) <= 1e-4;
    }
  }
  write_text_file(path_in(c, "selftest_entangled.csv"), ecsv.str());
  check("hybrid pair, knife x0=0: P_o2=0.25, F=1", ent_ok);

  const auto panels = spectrum_panels(c, c.ell_min, c.ell_max);
  std::ostringstream scsv;
  scsv << header_line(c, "selftest spectrum", panels.size(), panels.size()) << "target_T,x0,T,ell,probability\n";
  bool targets_ok = true;
  for (const auto& p : panels) {
    targets_ok = targets_ok && std::abs(p.T - p.target) <= 1e-3;
    for (int ell = c.ell_min; ell <= c.ell_max; ++ell) {
      scsv << format_number(p.target) << ',' << format_number(p.x0) << ',' << format_number(p.T) << ',' << ell
           << ',' << format_number(p.table.at(ell, 0)) << '\n';
    }
  }
  write_text_file(path_in(c, "selftest_spectrum.csv"), scsv.str());
  check("spectrum: bisection reaches every target T within 1e-3", targets_ok);

  log << (failures == 0 ? "selftest passed\n" : "selftest FAILED\n");
  return failures == 0 ? kExitOk : kExitNonConvergence;
}

int main(int argc, const char* const* argv) {
  RunConfig c;
  CLI::App app{"Hard-aperture resilience of OAM qubits and hybrid entanglement", "oamq"};
  app.set_config("--config", "", "INI-style file of key = value lines (same names as the flags)");
  app.require_subcommand(1);

  app.add_option("--states", c.states, "state labels among l,r,h,v,d,a")->delimiter(',');
  app.add_option("--k", c.k, "OAM winding number of the o_k subspace");
  app.add_option_function<double>("--start", [&](double v) { c.start = v; }, "sweep start (w0 units)");
  app.add_option_function<double>("--stop", [&](double v) { c.stop = v; }, "sweep stop (w0 units)");
  app.add_option_function<double>("--step", [&](double v) { c.step = v; }, "sweep step (w0 units)");
  app.add_option("--half_width", c.half_width, "grid half-width L in w0 units");
  app.add_option("--n", c.n, "samples per axis (power of two)");
  app.add_option("--max_n", c.max_n, "grid refinement cap");
  app.add_option("--converge", c.converge, "refine the grid until report scalars settle");
  app.add_option("--rel_tol", c.rel_tol, "relative tolerance for grid refinement");
  app.add_option("--wavelength", c.wavelength, "wavelength in metres");
  app.add_option("--waist", c.waist, "physical beam waist in metres");
  app.add_option("--distance", c.distance, "propagation distance in metres");
  app.add_option("--fresnel", c.fresnel, "use the paraxial transfer function");
  app.add_option("--state", c.state, "input state for propagate and spectrum");
  app.add_option("--transmittance", c.transmittance, "knife transmittance for propagate");
  app.add_option("--ell_min", c.ell_min, "lowest l' in the spectrum");
  app.add_option("--ell_max", c.ell_max, "highest l' in the spectrum");
  app.add_option("--p_max", c.p_max, "highest radial index in the spectrum");
  app.add_option("--targets", c.targets, "spectrum target transmittances")->delimiter(',');
  app.add_option("--out", c.out, "output directory");
  app.add_option("--svg", c.svg, "write SVG plots");
  app.add_option_function<double>("--f_max", [&](double v) { c.f_max = v; },
                                  "maximum measured fidelity for the rescaled curve");
  app.add_option("--threads", c.threads, "worker threads (0: hardware concurrency)");

  for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
           {"sweep-knife", "T, P_o2 and F over knife-edge positions"},
           {"sweep-iris", "T, P_o2 and F over iris radii"},
           {"spectrum", "p = 0 OAM spectrum at target transmittances"},
           {"propagate", "intensity maps of the clip / propagate / q-plate chain"},
           {"entangled", "hybrid polarization-OAM pair under a knife edge"},
           {"selftest", "quick end-to-end consistency checks"}}) {
    app.add_subcommand(name, help)->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }
  c.command = app.get_subcommands().front()->get_name();

  try {
    validate(c);
    if (c.command == "sweep-knife") return cmd_sweep(c, ApertureKind::Knife, std::cout);
    if (c.command == "sweep-iris") return cmd_sweep(c, ApertureKind::Iris, std::cout);
    if (c.command == "spectrum") return cmd_spectrum(c, std::cout);
    if (c.command == "propagate") return cmd_propagate(c, std::cout);
    if (c.command == "entangled") return cmd_entangled(c, std::cout);
    if (c.command == "selftest") return cmd_selftest(c, std::cout);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNonConvergence;
  }
  return kExitInput;
}

}  // namespace oamq::cli
