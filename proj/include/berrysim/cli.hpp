#pragma once

// Command-line front end. parse_cli turns argv into a RunConfig in internal units;
// run executes it and returns the process exit status (0 ok, 1 runtime or
// validation error, 2 usage error).

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "berrysim/bzmap.hpp"
#include "berrysim/haldane.hpp"
#include "berrysim/io.hpp"
#include "berrysim/runner.hpp"

namespace berrysim::cli {

class UsageError : public Error {
 public:
  using Error::Error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

inline constexpr const char* kOutEnv = "BERRYSIM_OUT";

struct Formats {
  bool csv = true;
  bool json = true;
  bool svg = true;
};

struct RunConfig {
  std::string subcommand;
  std::string preset;
  std::string help;  // non-empty when --help was requested; nothing else runs

  // Sweep fields double as the single-point parameters for ramp / chern.
  SweepSpec spec;
  int qubits = 1;
  double phi = 0.0;  // ramp plane azimuth, rad

  int n_theta = 51;
  int n_phi = 50;
  TexturePrep prep = TexturePrep::exact_ground;

  HaldaneParams lattice;
  bool lattice_from_qubit = false;
  int lattice_n = 48;
  int bands_points = 121;

  std::vector<double> tf_list{kFigS6Times.begin(), kFigS6Times.end()};

  std::filesystem::path out = ".";
  Formats formats;
  int workers = 0;
};

namespace detail {

inline SweepAxis parse_axis_spec(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() != 4) throw UsageError("axis must look like PARAM:MIN:MAX:COUNT, got '" + text + "'");
  try {
    return mhz_axis(parse_sweep_param(parts[0]), std::stod(parts[1]), std::stod(parts[2]), std::stoi(parts[3]));
  } catch (const ArgumentError& e) {
    throw UsageError(e.what());
  } catch (const std::logic_error&) {
    throw UsageError("bad number in axis '" + text + "'");
  }
}

// Pulls every --config FILE out of args and splices the file's key = value pairs in
// directly after the subcommand token, ahead of the real flags so those win.
inline std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::vector<std::string> files;
  for (std::size_t i = 0; i < args.size();) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config needs a file name");
      files.push_back(args[i + 1]);
      args.erase(args.begin() + i, args.begin() + i + 2);
    } else if (args[i].rfind("--config=", 0) == 0) {
      files.push_back(args[i].substr(9));
      args.erase(args.begin() + i);
    } else {
      ++i;
    }
  }
  if (files.empty()) return args;
  std::vector<std::string> injected;
  for (const std::string& f : files) {
    for (auto& [key, value] : io::parse_config(io::read_file(f))) {
      injected.push_back("--" + key);
      if (!value.empty()) injected.push_back(value);
    }
  }
  auto sub = std::find_if(args.begin(), args.end(), [](const std::string& a) { return !a.empty() && a[0] != '-'; });
  const auto pos = sub == args.end() ? args.begin() : sub + 1;
  args.insert(pos, injected.begin(), injected.end());
  return args;
}

}  // namespace detail

inline const char* kUnitsNote =
    "Units: field strengths and couplings are H/2pi and g/2pi in MHz; times in ns.\n"
    "Values given in a --config file (key = value, # comments) use the same keys\n"
    "as the flags; flags on the command line override the file.\n"
    "Output goes to --out, or $BERRYSIM_OUT, or the current directory.";

inline RunConfig parse_cli(const std::vector<std::string>& argv) {
  RunConfig cfg;
  if (const char* env = std::getenv(kOutEnv); env && *env) cfg.out = env;

  CLI::App app{"Berry curvature and Chern numbers of driven one- and two-qubit systems", "berrysim"};
  app.footer(kUnitsNote);
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  // Raw values in MHz, converted once after parsing.
  double hr = 10.0, h0 = 0.0, g = 0.0, hx = 10.0, hz = 10.0;
  std::string kind = "sphere", axis1 = "h0:0:20:21", axis2 = "hr:1:20:20", tf_policy = "fixed", initial = "ground",
              prep = "exact_ground";
  std::vector<std::string> methods{"dynamical", "spectral", "monopole_count"};
  std::vector<std::string> formats{"csv", "json", "svg"};
  std::string out;
  double t2 = 0.2, t3 = 0.0, stagger = 0.0;
  std::string config_file;  // consumed by expand_config; registered for --help

  auto field_opts = [&](CLI::App* s) {
    s->add_option("--hr", hr, "sphere radius H_r/2pi in MHz")->capture_default_str();
    s->add_option("--h0", h0, "sphere offset H_0/2pi in MHz")->capture_default_str();
    s->add_option("--g", g, "qubit coupling g/2pi in MHz (nonzero selects two qubits)")->capture_default_str();
  };
  auto ramp_opts = [&](CLI::App* s) {
    field_opts(s);
    s->add_option("--hx", hx, "ellipse semi-axis H_X/2pi in MHz (with --kind ellipse)")->capture_default_str();
    s->add_option("--hz", hz, "ellipse semi-axis H_Z/2pi in MHz (with --kind ellipse)")->capture_default_str();
    s->add_option("--tf", cfg.spec.t_f, "ramp duration T_f in ns")->capture_default_str();
    s->add_option("--shots", cfg.spec.shots, "binomial shots per <sigma> sample, 0 for exact")->capture_default_str();
    s->add_option("--n-record", cfg.spec.n_record, "samples along the ramp")->capture_default_str();
    s->add_option("--substeps", cfg.spec.substeps, "minimum integrator steps between samples")->capture_default_str();
    s->add_option("--max-dt", cfg.spec.max_dt, "largest integrator step in ns")->capture_default_str();
    s->add_option("--initial", initial, "starting state: ground (of H at t=0) or all_up")
        ->check(CLI::IsMember({"ground", "all_up"}))
        ->capture_default_str();
  };
  auto run_opts = [&](CLI::App* s) {
    s->add_option("--out", out, "output directory (default $BERRYSIM_OUT or .)");
    s->add_option("--format", formats, "comma-separated subset of csv,json,svg")
        ->delimiter(',')
        ->check(CLI::IsMember({"csv", "json", "svg"}))
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    s->add_option("--seed", cfg.spec.seed, "seed for shot noise")->capture_default_str();
    s->add_option("--workers", cfg.workers, "worker threads, 0 = all cores")->capture_default_str();
    s->add_option("--config", config_file, "key = value file applied before the flags");
  };

  CLI::App* ramp = app.add_subcommand("ramp", "simulate one ramp and write its trajectory");
  ramp_opts(ramp);
  run_opts(ramp);
  ramp->add_option("--kind", kind, "sphere, two_qubit or ellipse")
      ->check(CLI::IsMember({"sphere", "two_qubit", "ellipse"}));
  ramp->add_option("--phi", cfg.phi, "azimuth of the ramp plane in rad")->capture_default_str();

  CLI::App* chern = app.add_subcommand("chern", "Chern number at one parameter point by every method");
  ramp_opts(chern);
  run_opts(chern);
  chern->add_option("--kind", kind, "sphere, two_qubit or ellipse")
      ->check(CLI::IsMember({"sphere", "two_qubit", "ellipse"}));

  CLI::App* pd = app.add_subcommand("phase-diagram", "two-parameter sweep");
  ramp_opts(pd);
  run_opts(pd);
  pd->add_option("--name", cfg.spec.name, "base name of the output files")->capture_default_str();
  pd->add_option("--kind", kind, "sphere, two_qubit or ellipse")
      ->check(CLI::IsMember({"sphere", "two_qubit", "ellipse"}))
      ->capture_default_str();
  pd->add_option("--axis1", axis1, "PARAM:MIN:MAX:COUNT with PARAM in h0,hr,g,hx,hz and bounds in MHz")
      ->capture_default_str();
  pd->add_option("--axis2", axis2, "second axis, same form as --axis1")->capture_default_str();
  pd->add_option("--tf-policy", tf_policy, "fixed or target_adiabaticity")
      ->check(CLI::IsMember({"fixed", "target_adiabaticity"}))
      ->capture_default_str();
  pd->add_option("--target-adiabaticity", cfg.spec.target_adiabaticity, "A = T_f H_r/2pi per cell")
      ->capture_default_str();
  pd->add_option("--methods", methods, "comma-separated: dynamical,spectral,monopole_count,lattice")
      ->delimiter(',')
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);

  CLI::App* mono = app.add_subcommand("monopoles", "degeneracy loci of the two-qubit sphere");
  field_opts(mono);
  mono->add_option("--config", config_file, "key = value file applied before the flags");

  CLI::App* tex = app.add_subcommand("texture", "ground-state spin texture on the Brillouin zone");
  field_opts(tex);
  run_opts(tex);
  tex->add_option("--n-theta", cfg.n_theta, "polar grid nodes, poles included")->capture_default_str();
  tex->add_option("--n-phi", cfg.n_phi, "azimuthal grid nodes")->capture_default_str();
  tex->add_option("--prep", prep, "exact_ground or adiabatic_sim")
      ->check(CLI::IsMember({"exact_ground", "adiabatic_sim"}))
      ->capture_default_str();

  CLI::App* hal = app.add_subcommand("haldane", "four-band lattice model: bands and lattice Chern numbers");
  run_opts(hal);
  hal->add_option("--t1", cfg.lattice.t1, "nearest-neighbour hopping (energy unit)")->capture_default_str();
  hal->add_option("--t2", t2, "next-nearest-neighbour hopping, phase pi/2")->capture_default_str();
  hal->add_option("--t3", t3, "interlayer B-B hopping")->capture_default_str();
  hal->add_option("--stagger", stagger, "Zeeman-like offset h_z")->capture_default_str();
  CLI::Option* hal_hr = hal->add_option("--hr", hr, "derive t1..h_z from H_r/2pi in MHz");
  CLI::Option* hal_h0 = hal->add_option("--h0", h0, "with --hr: H_0/2pi in MHz");
  CLI::Option* hal_g = hal->add_option("--g", g, "with --hr: g/2pi in MHz");
  hal->add_option("--lattice-n", cfg.lattice_n, "k grid is N x N")->capture_default_str();
  hal->add_option("--points", cfg.bands_points, "samples on the K'-Gamma-K cut")->capture_default_str();

  CLI::App* adia = app.add_subcommand("adiabaticity", "ellipse sweeps across ramp durations");
  run_opts(adia);
  adia->add_option("--tf-list", cfg.tf_list, "comma-separated T_f values in ns")
      ->delimiter(',')
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)
      ->capture_default_str();
  adia->add_option("--shots", cfg.spec.shots, "binomial shots per <sigma> sample, 0 for exact")->capture_default_str();
  adia->add_option("--initial", initial, "starting state: ground or all_up")
      ->check(CLI::IsMember({"ground", "all_up"}))
      ->capture_default_str();

  CLI::App* pre = app.add_subcommand("preset", "reproduce a named figure");
  run_opts(pre);
  pre->add_option("name", cfg.preset, "preset name")->required()->check(CLI::IsMember(preset_names()));

  std::vector<std::string> args = detail::expand_config(std::vector<std::string>(argv.begin() + (argv.empty() ? 0 : 1), argv.end()));
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    CLI::App* target = &app;
    for (CLI::App* s : app.get_subcommands()) target = s;
    cfg.help = target->help();
    return cfg;
  } catch (const CLI::CallForAllHelp&) {
    cfg.help = app.help("", CLI::AppFormatMode::All);
    return cfg;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  cfg.subcommand = app.get_subcommands().front()->get_name();
  if (!out.empty()) cfg.out = out;
  cfg.formats = {false, false, false};
  for (const std::string& f : formats) {
    if (f == "csv") cfg.formats.csv = true;
    if (f == "json") cfg.formats.json = true;
    if (f == "svg") cfg.formats.svg = true;
  }

  SweepSpec& s = cfg.spec;
  s.h_r = units::mhz_to_rad_per_ns(hr);
  s.h_0 = units::mhz_to_rad_per_ns(h0);
  s.g = units::mhz_to_rad_per_ns(g);
  s.h_x = units::mhz_to_rad_per_ns(hx);
  s.h_z = units::mhz_to_rad_per_ns(hz);
  s.initial = parse_initial_state(initial);
  s.tf_policy = parse_tf_policy(tf_policy);
  s.kind = parse_sweep_kind(kind);
  if (s.kind == SweepKind::sphere && g != 0.0 && cfg.subcommand != "phase-diagram") s.kind = SweepKind::two_qubit;
  cfg.qubits = s.kind == SweepKind::two_qubit ? 2 : 1;
  cfg.prep = prep == "adiabatic_sim" ? TexturePrep::adiabatic_sim : TexturePrep::exact_ground;

  if (cfg.subcommand == "phase-diagram") {
    if (cfg.spec.name == "custom") cfg.spec.name = "phase_diagram";
    s.axis1 = detail::parse_axis_spec(axis1);
    s.axis2 = detail::parse_axis_spec(axis2);
    s.methods.clear();
    try {
      for (const std::string& m : methods) s.methods.push_back(parse_chern_method(m));
    } catch (const ArgumentError& e) {
      throw UsageError(e.what());
    }
  }

  cfg.lattice.t2 = t2;
  cfg.lattice.t3 = t3;
  cfg.lattice.h_z = stagger;
  cfg.lattice_from_qubit = hal_hr->count() + hal_h0->count() + hal_g->count() > 0;
  return cfg;
}

// ---------------------------------------------------------------- execution

namespace detail {

inline std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

inline std::string describe(const ChernEstimate& e) {
  std::string s = std::isnan(e.value) ? "nan" : fixed(e.value, 6);
  for (ChernFlag f : kAllChernFlags)
    if (e.has(f)) s += " [" + to_string(f) + "]";
  return s;
}

inline void write_diagram(const RunConfig& cfg, const PhaseDiagram& pd, std::ostream& out) {
  const std::filesystem::path base = cfg.out / pd.spec.name;
  auto emit = [&](const std::string& ext, const std::string& text) {
    const std::filesystem::path p = base.string() + ext;
    io::write_file(p, text);
    out << "wrote " << p.string() << "\n";
  };
  if (cfg.formats.csv) emit(".csv", io::phase_diagram_csv(pd));
  if (cfg.formats.json) emit(".json", io::phase_diagram_json(pd));
  if (cfg.formats.svg) emit(".svg", io::phase_diagram_svg(pd, ChernMethod::dynamical));
}

// Plots every numeric column after the first against it; a leading "panel" column
// splits the rows into stacked plots. Tables keyed by a text label are not plotted.
inline std::optional<std::string> table_svg(const Table& t) {
  if (t.columns.size() < 2 || t.rows.empty() || t.columns[0] == "label") return std::nullopt;
  const int group = t.columns[0] == "panel" ? 0 : -1;
  const int x = group + 1;
  std::vector<int> ys;
  for (int c = x + 1; c < static_cast<int>(t.columns.size()); ++c)
    if (t.columns[c] != "kx" && t.columns[c] != "ky") ys.push_back(c);
  return io::line_plot_svg(t, x, ys, group);
}

inline void write_table(const RunConfig& cfg, const Table& t, std::ostream& out) {
  const std::filesystem::path base = cfg.out / t.name;
  if (cfg.formats.csv) {
    io::write_file(base.string() + ".csv", io::table_csv(t));
    out << "wrote " << base.string() << ".csv\n";
  }
  if (cfg.formats.svg)
    if (auto svg = table_svg(t)) {
      io::write_file(base.string() + ".svg", *svg);
      out << "wrote " << base.string() << ".svg\n";
    }
}

inline void write_json(const RunConfig& cfg, const std::string& name, const io::json& j, std::ostream& out) {
  if (!cfg.formats.json) return;
  const std::filesystem::path p = cfg.out / (name + ".json");
  io::write_file(p, j.dump(2) + "\n");
  out << "wrote " << p.string() << "\n";
}

inline io::json provenance(const RunConfig& cfg) {
  return io::json{{"code_version", kCodeVersion}, {"seed", cfg.spec.seed}, {"preset", cfg.preset}};
}

struct RampResult {
  TrajectoryRecord traj;
  ChernEstimate chern;
  std::vector<std::string> flags;
};

inline RampResult simulate_ramp(const RunConfig& cfg) {
  const SweepSpec& s = cfg.spec;
  ControlSchedule sched = s.kind == SweepKind::ellipse     ? elliptic_ramp(s.h_x, s.h_z, s.t_f, cfg.phi)
                          : s.kind == SweepKind::two_qubit ? two_qubit_ramp(s.h_r, s.h_0, s.g, s.t_f, cfg.phi)
                                                           : meridian_ramp(s.h_r, s.h_0, s.t_f, cfg.phi);
  PhaseCell scratch;
  const StateVector psi0 = initial_state(s, sched, scratch);
  if (s.n_record < 2) throw ValidationError("n_record must be at least 2");
  if (!(s.max_dt > 0.0)) throw ValidationError("max_dt must be positive");
  PropagateOptions opt;
  opt.n_record = s.n_record;
  opt.substeps = std::max(s.substeps, static_cast<int>(std::ceil(s.t_f / (s.n_record - 1) / s.max_dt)));
  RampResult r{propagate(sched, psi0, opt), {}, scratch.flags};
  if (s.shots > 0) {
    std::mt19937_64 rng = cell_stream(s.seed, 0);
    for (auto& [name, series] : r.traj.observables)
      for (double& v : series) v = sample_observable(v, s.shots, rng);
  }
  r.chern = chern_dynamical(r.traj);
  return r;
}

inline int cmd_ramp(const RunConfig& cfg, std::ostream& out) {
  const RampResult r = simulate_ramp(cfg);
  out << "dynamical " << describe(r.chern) << "\n";
  out << "adiabaticity " << fmt(r.chern.adiabaticity.value_or(0.0)) << "\n";
  out << "norm_drift " << fmt(r.traj.norm_drift, 3) << "\n";
  for (const std::string& f : r.flags) out << "note " << f << "\n";
  if (cfg.formats.csv) {
    io::write_file(cfg.out / "ramp.csv", io::trajectory_csv(r.traj));
    out << "wrote " << (cfg.out / "ramp.csv").string() << "\n";
  }
  if (cfg.formats.svg) {
    Table t{"ramp", {"t_ns"}, {}};
    for (const auto& [name, series] : r.traj.observables) t.columns.push_back(name);
    for (std::size_t j = 0; j < r.traj.sample_times.size(); ++j) {
      std::vector<std::string> row{io::g6(r.traj.sample_times[j])};
      for (const auto& [name, series] : r.traj.observables) row.push_back(io::g6(series[j]));
      t.rows.push_back(std::move(row));
    }
    io::write_file(cfg.out / "ramp.svg", *table_svg(t));
    out << "wrote " << (cfg.out / "ramp.svg").string() << "\n";
  }
  write_json(cfg, "ramp",
             io::json{{"kind", to_string(cfg.spec.kind)},
                      {"hr_mhz", io::mhz(cfg.spec.h_r)},
                      {"h0_mhz", io::mhz(cfg.spec.h_0)},
                      {"g_mhz", io::mhz(cfg.spec.g)},
                      {"hx_mhz", io::mhz(cfg.spec.h_x)},
                      {"hz_mhz", io::mhz(cfg.spec.h_z)},
                      {"tf_ns", cfg.spec.t_f},
                      {"shots", cfg.spec.shots},
                      {"initial_state", to_string(cfg.spec.initial)},
                      {"chern", io::to_json(r.chern)},
                      {"norm_drift", r.traj.norm_drift},
                      {"provenance", provenance(cfg)}},
             out);
  return kExitOk;
}

inline int cmd_chern(const RunConfig& cfg, std::ostream& out) {
  const RampResult r = simulate_ramp(cfg);
  out << "dynamical " << describe(r.chern) << " (A = " << fmt(r.chern.adiabaticity.value_or(0.0)) << ")\n";
  const SweepSpec& s = cfg.spec;
  if (s.kind == SweepKind::ellipse) {
    out << "monopole " << *ellipse_monopole_count(s.h_x, s.h_z).rounded << "\n";
    return kExitOk;
  }
  const SphereParams sp{cfg.qubits, s.h_r, s.h_0, cfg.qubits == 2 ? s.g : 0.0};
  out << "spectral " << describe(chern_spectral(sp)) << "\n";
  const ChernEstimate m = monopole_count(sp);
  out << "monopole " << *m.rounded << (m.has(ChernFlag::near_boundary) ? " [near_boundary]" : "") << "\n";
  if (cfg.qubits == 2) {
    try {
      out << "lattice " << *lattice_chern(from_qubit_params(s.h_r, s.g, s.h_0)).rounded << "\n";
    } catch (const GaplessError&) {
      out << "lattice gapless\n";
    }
  } else {
    try {
      const TextureChern tc = texture_chern(texture_grid(s.h_r, s.h_0, 51, 50, TexturePrep::exact_ground),
                                            TextureMethod::solid_angle);
      out << "texture " << describe(tc.sector) << "\n";
    } catch (const ResolutionError&) {
      out << "texture unresolved\n";
    }
  }
  for (const std::string& f : r.flags) out << "note " << f << "\n";
  return kExitOk;
}

inline int cmd_phase_diagram(const RunConfig& cfg, std::ostream& out) {
  const PhaseDiagram pd = sweep(cfg.spec, cfg.workers);
  const PlateauScore sc = plateau_score(pd);
  out << "cells " << pd.cells.size() << "\n";
  if (sc.checked) out << "plateau_agreement " << fmt(sc.fraction()) << " over " << sc.checked << " cells\n";
  write_diagram(cfg, pd, out);
  return kExitOk;
}

inline int cmd_monopoles(const RunConfig& cfg, std::ostream& out) {
  const SweepSpec& s = cfg.spec;
  const MonopoleSet m = degeneracy_loci(s.h_0, s.g);
  for (double z : m.positions) out << "H_z/2pi = " << fmt(io::mhz(z)) << " MHz\n";
  const ChernEstimate c = monopole_count(s.h_0, s.g, s.h_r);
  out << "enclosed by H_r/2pi = " << fmt(io::mhz(s.h_r)) << " MHz: " << *c.rounded
      << (c.has(ChernFlag::near_boundary) ? " [near_boundary]" : "") << "\n";
  return kExitOk;
}

inline int cmd_texture(const RunConfig& cfg, std::ostream& out) {
  const SweepSpec& s = cfg.spec;
  const TextureGrid g = texture_grid(s.h_r, s.h_0, cfg.n_theta, cfg.n_phi, cfg.prep);
  const TextureChern solid = texture_chern(g, TextureMethod::solid_angle);
  out << "texture_solid_angle " << describe(solid.sector) << "\n";
  if (cfg.n_theta % 2 == 1) {
    const TextureChern planar = texture_chern(g, TextureMethod::planar_eq_s5);
    out << "texture_planar " << describe(planar.sector) << " (full zone " << fmt(planar.full_zone) << ")\n";
  }
  out << "dirac_phase " << to_string(dirac_phase(dirac_from_sphere(s.h_r, s.h_0))) << "\n";
  if (g.excluded()) out << "excluded_nodes " << g.excluded() << "\n";
  if (cfg.formats.csv) {
    io::write_file(cfg.out / "texture.csv", io::texture_csv(g));
    out << "wrote " << (cfg.out / "texture.csv").string() << "\n";
  }
  if (cfg.formats.svg) {
    io::write_file(cfg.out / "texture.svg", io::texture_svg(g));
    out << "wrote " << (cfg.out / "texture.svg").string() << "\n";
  }
  write_json(cfg, "texture",
             io::json{{"hr_mhz", io::mhz(s.h_r)},
                      {"h0_mhz", io::mhz(s.h_0)},
                      {"n_theta", cfg.n_theta},
                      {"n_phi", cfg.n_phi},
                      {"prep", cfg.prep == TexturePrep::exact_ground ? "exact_ground" : "adiabatic_sim"},
                      {"chern_solid_angle", io::to_json(solid.sector)},
                      {"provenance", provenance(cfg)}},
             out);
  return kExitOk;
}

inline int cmd_haldane(const RunConfig& cfg, std::ostream& out) {
  const SweepSpec& s = cfg.spec;
  const HaldaneParams p = cfg.lattice_from_qubit ? from_qubit_params(s.h_r, s.g, s.h_0) : cfg.lattice;
  p.validate();
  out << "t1 " << fmt(p.t1) << " t2 " << fmt(p.t2) << " t3 " << fmt(p.t3) << " h_z " << fmt(p.h_z) << "\n";
  io::json cherns = io::json::array();
  for (int band = 0; band < 4; ++band) {
    try {
      const int c = *lattice_chern(p, band, cfg.lattice_n).rounded;
      out << "band " << band << " chern " << c << "\n";
      cherns.push_back(c);
    } catch (const GaplessError&) {
      out << "band " << band << " gapless\n";
      cherns.push_back(nullptr);
    }
  }
  const std::vector<Vec2> path = corner_cut(cfg.bands_points);
  const auto bands = band_dispersion(p, path);
  Table t{"bands", {"kx", "e0", "e1", "e2", "e3"}, {}};
  for (std::size_t i = 0; i < path.size(); ++i)
    t.rows.push_back({fmt(path[i].x), fmt(bands[i][0]), fmt(bands[i][1]), fmt(bands[i][2]), fmt(bands[i][3])});
  write_table(cfg, t, out);
  write_json(cfg, "haldane",
             io::json{{"t1", p.t1},
                      {"t2", p.t2},
                      {"t3", p.t3},
                      {"h_z", p.h_z},
                      {"lattice_n", cfg.lattice_n},
                      {"band_chern", cherns},
                      {"provenance", provenance(cfg)}},
             out);
  return kExitOk;
}

inline int cmd_adiabaticity(const RunConfig& cfg, std::ostream& out) {
  Table t{"adiabaticity", {"t_f_ns", "mean_abs_error", "cells_a_gt_1p5", "fraction_within_0p15"}, {}};
  for (double tf : cfg.tf_list) {
    SweepSpec spec = preset_figS6(tf);
    spec.shots = cfg.spec.shots;
    spec.seed = cfg.spec.seed;
    spec.initial = cfg.spec.initial;
    const PhaseDiagram pd = sweep(spec, cfg.workers);
    const FigS6Stats st = figS6_stats(pd);
    out << "T_f " << fmt(tf) << " ns: mean |Ch-1| " << fmt(st.mean_error) << ", within 0.15 for "
        << fmt(st.reliable_fraction_good) << " of " << st.reliable_cells << " cells with A > 1.5\n";
    t.rows.push_back({fmt(tf), fmt(st.mean_error), std::to_string(st.reliable_cells), fmt(st.reliable_fraction_good)});
    write_diagram(cfg, pd, out);
  }
  write_table(cfg, t, out);
  return kExitOk;
}

inline int cmd_preset(const RunConfig& cfg, std::ostream& out) {
  const PresetResult r = run_preset(cfg.preset, cfg.workers, cfg.spec.seed);
  for (const auto& [k, v] : r.summary) out << k << " " << v << "\n";
  out << "oracle_check " << (r.ok ? "pass" : "FAIL") << "\n";
  for (const PhaseDiagram& pd : r.diagrams) write_diagram(cfg, pd, out);
  for (const Table& t : r.tables) write_table(cfg, t, out);
  if (!r.summary.empty()) {
    io::json summary = io::json::object();
    for (const auto& [k, v] : r.summary) summary[k] = v;
    write_json(cfg, r.name + "_summary",
               io::json{{"preset", r.name}, {"ok", r.ok}, {"summary", summary}, {"provenance", provenance(cfg)}}, out);
  }
  return kExitOk;
}

}  // namespace detail

inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!cfg.help.empty()) {
    out << cfg.help;
    return kExitOk;
  }
  try {
    if (cfg.subcommand == "ramp") return detail::cmd_ramp(cfg, out);
    if (cfg.subcommand == "chern") return detail::cmd_chern(cfg, out);
    if (cfg.subcommand == "phase-diagram") return detail::cmd_phase_diagram(cfg, out);
    if (cfg.subcommand == "monopoles") return detail::cmd_monopoles(cfg, out);
    if (cfg.subcommand == "texture") return detail::cmd_texture(cfg, out);
    if (cfg.subcommand == "haldane") return detail::cmd_haldane(cfg, out);
    if (cfg.subcommand == "adiabaticity") return detail::cmd_adiabaticity(cfg, out);
    if (cfg.subcommand == "preset") return detail::cmd_preset(cfg, out);
    err << "error: unknown subcommand '" << cfg.subcommand << "'\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

// Full pipeline for main(): parse, run, map every failure to an exit status.
inline int main(const std::vector<std::string>& argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  RunConfig cfg;
  try {
    cfg = parse_cli(argv);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\nRun with --help for usage.\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return run(cfg, out, err);
}

}  // namespace berrysim::cli
