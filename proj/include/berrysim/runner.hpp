#pragma once

// Parameter sweeps over grids of ramps, optional projective-measurement shot noise,
// and the preset registry that binds figure reproductions to sweep specifications.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "berrysim/berry.hpp"
#include "berrysim/bzmap.hpp"
#include "berrysim/controls.hpp"
#include "berrysim/errors.hpp"
#include "berrysim/haldane.hpp"
#include "berrysim/propagator.hpp"
#include "berrysim/units.hpp"

namespace berrysim {

inline constexpr const char* kCodeVersion = "berrysim 0.1.0";

// ---------------------------------------------------------------- shot noise

// Mean of n projective +-1 outcomes with P(+1) = (1 + p_true)/2.
template <class Rng>
double sample_observable(double p_true, int n, Rng& rng) {
  if (!(p_true >= -1.0 && p_true <= 1.0)) throw ArgumentError("expectation value must lie in [-1, 1]");
  if (n < 1) throw ArgumentError("shot count must be at least 1");
  std::binomial_distribution<int> dist(n, 0.5 * (1.0 + p_true));
  const int k = dist(rng);
  return static_cast<double>(2 * k - n) / n;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent stream for one grid cell, a pure function of (seed, cell index).
inline std::mt19937_64 cell_stream(std::uint64_t seed, std::uint64_t cell) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(cell + 0x632be59bd9b4e019ULL)));
}

// ---------------------------------------------------------------- sweep spec

enum class SweepKind { sphere, two_qubit, ellipse };
enum class SweepParam { h0, hr, g, hx, hz };
enum class TfPolicy { fixed, target_adiabaticity };
enum class InitialState { ground, all_up };

inline std::string to_string(SweepKind k) {
  switch (k) {
    case SweepKind::sphere: return "sphere";
    case SweepKind::two_qubit: return "two_qubit";
    case SweepKind::ellipse: return "ellipse";
  }
  return "unknown";
}
inline std::string to_string(SweepParam p) {
  switch (p) {
    case SweepParam::h0: return "h0";
    case SweepParam::hr: return "hr";
    case SweepParam::g: return "g";
    case SweepParam::hx: return "hx";
    case SweepParam::hz: return "hz";
  }
  return "unknown";
}
inline std::string to_string(TfPolicy p) { return p == TfPolicy::fixed ? "fixed" : "target_adiabaticity"; }
inline std::string to_string(InitialState s) { return s == InitialState::ground ? "ground" : "all_up"; }

template <class E, std::size_t N>
E parse_enum(const std::string& s, const std::array<E, N>& all, const char* what) {
  for (E e : all)
    if (to_string(e) == s) return e;
  throw ArgumentError(std::string("unknown ") + what + " '" + s + "'");
}
inline SweepKind parse_sweep_kind(const std::string& s) {
  return parse_enum(s, std::array{SweepKind::sphere, SweepKind::two_qubit, SweepKind::ellipse}, "sweep kind");
}
inline SweepParam parse_sweep_param(const std::string& s) {
  return parse_enum(s, std::array{SweepParam::h0, SweepParam::hr, SweepParam::g, SweepParam::hx, SweepParam::hz},
                    "sweep axis");
}
inline TfPolicy parse_tf_policy(const std::string& s) {
  return parse_enum(s, std::array{TfPolicy::fixed, TfPolicy::target_adiabaticity}, "T_f policy");
}
inline InitialState parse_initial_state(const std::string& s) {
  return parse_enum(s, std::array{InitialState::ground, InitialState::all_up}, "initial state");
}

// Axis values are angular frequencies (rad/ns), evenly spaced and inclusive.
struct SweepAxis {
  SweepParam param = SweepParam::h0;
  double min = 0.0;
  double max = 0.0;
  int count = 2;

  std::vector<double> values() const {
    std::vector<double> v(count);
    for (int i = 0; i < count; ++i) v[i] = count == 1 ? min : min + (max - min) * i / (count - 1);
    return v;
  }
};

struct SweepSpec {
  std::string name = "custom";
  SweepKind kind = SweepKind::sphere;
  SweepAxis axis1{SweepParam::h0, 0.0, 1.0, 2};
  SweepAxis axis2{SweepParam::hr, 0.1, 1.0, 2};
  // Fixed values for parameters not on an axis.
  double h_r = units::mhz_to_rad_per_ns(10.0);
  double h_0 = 0.0;
  double g = 0.0;
  double h_x = units::mhz_to_rad_per_ns(10.0);
  double h_z = units::mhz_to_rad_per_ns(10.0);
  TfPolicy tf_policy = TfPolicy::fixed;
  double t_f = 1000.0;
  double target_adiabaticity = 6.0;
  int shots = 0;  // 0 disables shot noise
  std::uint64_t seed = 0;
  std::vector<ChernMethod> methods{ChernMethod::dynamical, ChernMethod::spectral, ChernMethod::monopole_count};
  int n_record = 50;
  int substeps = 64;
  double max_dt = 0.25;  // ns; substeps grow so no step exceeds this
  InitialState initial = InitialState::ground;

  bool wants(ChernMethod m) const { return std::find(methods.begin(), methods.end(), m) != methods.end(); }

  void validate() const {
    for (const SweepAxis* a : {&axis1, &axis2}) {
      if (a->count < 2) throw ValidationError("axis counts must be at least 2");
      if (!std::isfinite(a->min) || !std::isfinite(a->max)) throw ValidationError("axis bounds must be finite");
    }
    if (axis1.param == axis2.param) throw ValidationError("the two sweep axes must differ");
    auto allowed = [&](SweepParam p) {
      switch (kind) {
        case SweepKind::sphere: return p == SweepParam::h0 || p == SweepParam::hr;
        case SweepKind::two_qubit: return p == SweepParam::h0 || p == SweepParam::hr || p == SweepParam::g;
        case SweepKind::ellipse: return p == SweepParam::hx || p == SweepParam::hz;
      }
      return false;
    };
    if (!allowed(axis1.param) || !allowed(axis2.param))
      throw ValidationError("axis parameter not available for a " + to_string(kind) + " sweep");
    if (tf_policy == TfPolicy::fixed && !(t_f > 0.0)) throw ValidationError("T_f must be positive");
    if (tf_policy == TfPolicy::target_adiabaticity && !(target_adiabaticity > 0.0))
      throw ValidationError("target adiabaticity must be positive");
    if (shots < 0) throw ValidationError("shot count must be non-negative");
    if (n_record < 2) throw ValidationError("n_record must be at least 2");
    if (substeps < 1) throw ValidationError("substeps must be at least 1");
    if (!(max_dt > 0.0)) throw ValidationError("max_dt must be positive");
    if (methods.empty()) throw ValidationError("no Chern methods requested");
  }
};

// ---------------------------------------------------------------- phase diagram

struct PhaseCell {
  double axis1 = 0.0;
  double axis2 = 0.0;
  double t_f = 0.0;
  std::optional<ChernEstimate> dynamical;
  std::optional<ChernEstimate> spectral;
  std::optional<ChernEstimate> monopole;
  std::optional<ChernEstimate> lattice;
  std::vector<std::string> flags;  // sorted, unique

  void flag(const std::string& f) {
    auto it = std::lower_bound(flags.begin(), flags.end(), f);
    if (it == flags.end() || *it != f) flags.insert(it, f);
  }
};

struct Provenance {
  std::string code_version = kCodeVersion;
  std::uint64_t seed = 0;
  std::string preset;
};

struct PhaseDiagram {
  SweepSpec spec;
  std::vector<double> axis1_values;
  std::vector<double> axis2_values;
  std::vector<PhaseCell> cells;  // axis1-major: index = i1 * n2 + i2
  Provenance provenance;

  const PhaseCell& cell(int i1, int i2) const { return cells.at(static_cast<std::size_t>(i1) * axis2_values.size() + i2); }
};

// ---------------------------------------------------------------- cell evaluation

struct CellParams {
  double h_r = 0.0, h_0 = 0.0, g = 0.0, h_x = 0.0, h_z = 0.0;

  void set(SweepParam p, double v) {
    switch (p) {
      case SweepParam::h0: h_0 = v; break;
      case SweepParam::hr: h_r = v; break;
      case SweepParam::g: g = v; break;
      case SweepParam::hx: h_x = v; break;
      case SweepParam::hz: h_z = v; break;
    }
  }
};

inline CellParams cell_params(const SweepSpec& spec, double v1, double v2) {
  CellParams c{spec.h_r, spec.h_0, spec.g, spec.h_x, spec.h_z};
  c.set(spec.axis1.param, v1);
  c.set(spec.axis2.param, v2);
  return c;
}

inline double cell_tf(const SweepSpec& spec, const CellParams& c) {
  if (spec.tf_policy == TfPolicy::fixed) return spec.t_f;
  const double scale = spec.kind == SweepKind::ellipse ? std::hypot(c.h_x, c.h_z) : c.h_r;
  return units::kTwoPi * spec.target_adiabaticity / scale;
}

inline ControlSchedule cell_schedule(const SweepSpec& spec, const CellParams& c, double t_f) {
  switch (spec.kind) {
    case SweepKind::sphere: return meridian_ramp(c.h_r, c.h_0, t_f);
    case SweepKind::two_qubit: return two_qubit_ramp(c.h_r, c.h_0, c.g, t_f);
    case SweepKind::ellipse: return elliptic_ramp(c.h_x, c.h_z, t_f);
  }
  throw ArgumentError("unknown sweep kind");
}

// Origin enclosed by the ellipse (H_X sin, 0, H_Z cos) swept about z.
inline ChernEstimate ellipse_monopole_count(double h_x, double h_z) {
  return ChernEstimate::of(h_x > 0.0 && h_z > 0.0 ? 1.0 : 0.0, ChernMethod::monopole_count);
}

inline void merge_flags(PhaseCell& cell, const ChernEstimate& e) {
  for (ChernFlag f : kAllChernFlags)
    if (e.has(f)) cell.flag(to_string(f));
}

// Starting state for a ramp plus any flag describing it.
inline StateVector initial_state(const SweepSpec& spec, const ControlSchedule& s, PhaseCell& cell) {
  const StateVector up = StateVector::all_up(s.n_qubits());
  if (spec.initial == InitialState::all_up) {
    if (!initial_state_is_ground(s)) cell.flag("initial_not_ground");
    return up;
  }
  try {
    StateVector g = ground_state(hamiltonian_at(s, 0.0));
    if (std::norm(g[0]) < 1.0 - 1e-9) cell.flag("initial_not_all_up");
    return g;
  } catch (const DegeneracyError&) {
    cell.flag("initial_degenerate");
    return up;
  }
}

inline PhaseCell evaluate_cell(const SweepSpec& spec, double v1, double v2, std::uint64_t index) {
  PhaseCell cell;
  cell.axis1 = v1;
  cell.axis2 = v2;
  const CellParams c = cell_params(spec, v1, v2);
  try {
    const double t_f = cell_tf(spec, c);
    cell.t_f = t_f;
    const ControlSchedule s = cell_schedule(spec, c, t_f);

    if (spec.wants(ChernMethod::dynamical)) {
      PropagateOptions opt;
      opt.n_record = spec.n_record;
      opt.record_xz = false;
      const double spacing = t_f / (spec.n_record - 1);
      opt.substeps = std::max(spec.substeps, static_cast<int>(std::ceil(spacing / spec.max_dt)));
      TrajectoryRecord traj = propagate(s, initial_state(spec, s, cell), opt);
      if (spec.shots > 0) {
        std::mt19937_64 rng = cell_stream(spec.seed, index);
        for (auto& [name, series] : traj.observables)
          for (double& v : series) v = sample_observable(v, spec.shots, rng);
      }
      cell.dynamical = chern_dynamical(traj);
    }
    if (spec.kind != SweepKind::ellipse) {
      const SphereParams sp{spec.kind == SweepKind::two_qubit ? 2 : 1, c.h_r, c.h_0,
                            spec.kind == SweepKind::two_qubit ? c.g : 0.0};
      if (spec.wants(ChernMethod::spectral)) cell.spectral = chern_spectral(sp);
      if (spec.wants(ChernMethod::monopole_count)) cell.monopole = monopole_count(sp);
      if (spec.wants(ChernMethod::lattice) && spec.kind == SweepKind::two_qubit) {
        try {
          cell.lattice = lattice_chern(from_qubit_params(c.h_r, c.g, c.h_0));
        } catch (const GaplessError&) {
          cell.flag("lattice_gapless");
        }
      }
    } else if (spec.wants(ChernMethod::monopole_count)) {
      cell.monopole = ellipse_monopole_count(c.h_x, c.h_z);
    }
  } catch (const Error& e) {
    cell.flag(std::string("failed: ") + e.what());
  }
  for (const auto* e : {&cell.dynamical, &cell.spectral, &cell.monopole, &cell.lattice})
    if (*e) merge_flags(cell, **e);
  return cell;
}

// Runs `task(i)` for i in [0, n) on `workers` threads (0 = hardware concurrency).
// Tasks write to disjoint, position-addressed slots, so the result is independent
// of scheduling.
inline void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& task) {
  unsigned w = workers > 0 ? static_cast<unsigned>(workers) : std::max(1u, std::thread::hardware_concurrency());
  w = static_cast<unsigned>(std::min<std::size_t>(w, std::max<std::size_t>(n, 1)));
  if (w <= 1) {
    for (std::size_t i = 0; i < n; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(w);
  for (unsigned t = 0; t < w; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) task(i);
    });
  for (auto& th : pool) th.join();
}

inline PhaseDiagram sweep(const SweepSpec& spec, int workers = 0) {
  spec.validate();
  PhaseDiagram pd;
  pd.spec = spec;
  pd.axis1_values = spec.axis1.values();
  pd.axis2_values = spec.axis2.values();
  pd.provenance.seed = spec.seed;
  pd.provenance.preset = spec.name;
  const std::size_t n2 = pd.axis2_values.size();
  pd.cells.resize(pd.axis1_values.size() * n2);
  parallel_for(pd.cells.size(), workers, [&](std::size_t i) {
    pd.cells[i] = evaluate_cell(spec, pd.axis1_values[i / n2], pd.axis2_values[i % n2], i);
  });
  return pd;
}

// ---------------------------------------------------------------- presets

inline SweepAxis mhz_axis(SweepParam p, double lo, double hi, int count) {
  return {p, units::mhz_to_rad_per_ns(lo), units::mhz_to_rad_per_ns(hi), count};
}

inline SweepSpec preset_fig3a() {
  SweepSpec s;
  s.name = "fig3a";
  s.kind = SweepKind::sphere;
  s.axis1 = mhz_axis(SweepParam::h0, 20.0 / 21.0, 20.0, 21);
  s.axis2 = mhz_axis(SweepParam::hr, 20.0 / 21.0, 20.0, 21);
  s.t_f = 1000.0;
  return s;
}

inline SweepSpec preset_fig4b(double g_mhz) {
  SweepSpec s;
  s.name = g_mhz == 0.0 ? "fig4b_g0" : "fig4b_g" + std::to_string(static_cast<int>(g_mhz));
  s.kind = SweepKind::two_qubit;
  s.axis1 = mhz_axis(SweepParam::h0, 0.0, 30.0, 21);
  s.axis2 = mhz_axis(SweepParam::hr, 1.0, 21.0, 21);
  s.g = units::mhz_to_rad_per_ns(g_mhz);
  s.t_f = 1000.0;
  return s;
}

inline SweepSpec preset_fig4c() {
  SweepSpec s;
  s.name = "fig4c";
  s.kind = SweepKind::two_qubit;
  s.axis1 = mhz_axis(SweepParam::h0, 0.0, 30.0, 21);
  s.axis2 = mhz_axis(SweepParam::g, 0.0, 20.0, 21);
  s.h_r = units::mhz_to_rad_per_ns(10.0);
  s.t_f = 1000.0;
  return s;
}

inline const std::array<double, 5> kFigS6Times{100.0, 200.0, 400.0, 600.0, 800.0};

inline SweepSpec preset_figS6(double t_f) {
  SweepSpec s;
  s.name = "figS6_tf" + std::to_string(static_cast<int>(t_f));
  s.kind = SweepKind::ellipse;
  s.axis1 = mhz_axis(SweepParam::hx, 1.0, 10.0, 10);
  s.axis2 = mhz_axis(SweepParam::hz, 1.0, 10.0, 10);
  s.methods = {ChernMethod::dynamical, ChernMethod::monopole_count};
  s.t_f = t_f;
  return s;
}

// Representative sphere configurations at H_r/2pi = 10 MHz: A-C at weak coupling with
// rising H_0, D-F at small H_0 with rising g.
struct MonopolePoint {
  std::string label;
  double h_0_mhz = 0.0;
  double g_mhz = 0.0;
};

inline const std::array<MonopolePoint, 6> kFig4aPoints{{{"A", 2.0, 1.0},
                                                        {"B", 8.0, 1.0},
                                                        {"C", 16.0, 1.0},
                                                        {"D", 1.0, 2.0},
                                                        {"E", 1.0, 6.0},
                                                        {"F", 1.0, 14.0}}};

inline constexpr double kFig4aRadiusMhz = 10.0;

// A named table of numbers for non-grid outputs (trajectories, scans, bands).
struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;  // pre-formatted cells
};

struct PresetResult {
  std::string name;
  std::vector<PhaseDiagram> diagrams;
  std::vector<Table> tables;
  std::vector<std::pair<std::string, std::string>> summary;
  bool ok = true;  // the oracle comparison for this preset passed
};

inline const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"fig2",  "fig3a", "fig3d",          "fig4b",
                                              "fig4c", "figS6", "fig4a_monopoles", "figS3_bands"};
  return names;
}

inline std::string fmt(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

// Fraction of cells far from a transition where the rounded dynamical value matches
// the monopole count. "Far" means every neighbour within one cell has the same count.
struct PlateauScore {
  int checked = 0;
  int matched = 0;
  std::set<int> plateaus;
  double fraction() const { return checked ? static_cast<double>(matched) / checked : 0.0; }
};

inline PlateauScore plateau_score(const PhaseDiagram& pd, double min_adiabaticity = 3.0) {
  PlateauScore s;
  const int n1 = static_cast<int>(pd.axis1_values.size()), n2 = static_cast<int>(pd.axis2_values.size());
  auto count = [&](int i, int j) -> std::optional<int> {
    const PhaseCell& c = pd.cell(i, j);
    if (!c.monopole || !c.monopole->rounded) return std::nullopt;
    return *c.monopole->rounded;
  };
  for (int i = 0; i < n1; ++i) {
    for (int j = 0; j < n2; ++j) {
      const PhaseCell& c = pd.cell(i, j);
      const auto m = count(i, j);
      if (!m || !c.dynamical || !c.dynamical->rounded) continue;
      if (c.dynamical->adiabaticity.value_or(0.0) < min_adiabaticity) continue;
      bool interior = true;
      for (int di = -1; di <= 1; ++di)
        for (int dj = -1; dj <= 1; ++dj) {
          const int a = i + di, b = j + dj;
          if (a < 0 || b < 0 || a >= n1 || b >= n2) continue;
          if (count(a, b) != m) interior = false;
        }
      if (!interior) continue;
      ++s.checked;
      s.plateaus.insert(*c.dynamical->rounded);
      if (*c.dynamical->rounded == *m) ++s.matched;
    }
  }
  return s;
}

inline PresetResult run_fig2() {
  PresetResult r{"fig2", {}, {}, {}, true};
  const double h_r = units::mhz_to_rad_per_ns(10.0);
  const ControlSchedule s = meridian_ramp(h_r, 0.0, 600.0);
  const TrajectoryRecord traj = propagate(s, StateVector::all_up(1));
  const ChernEstimate e = chern_dynamical(traj);
  Table t{"fig2_trajectory", {"t_ns", "sx_q1", "sy_q1", "sz_q1"}, {}};
  for (std::size_t j = 0; j < traj.sample_times.size(); ++j)
    t.rows.push_back({fmt(traj.sample_times[j]), fmt(traj.series("sx_q1")[j]), fmt(traj.series("sy_q1")[j]),
                      fmt(traj.series("sz_q1")[j])});
  r.tables.push_back(std::move(t));
  r.summary = {{"ch_dynamical", fmt(e.value)},
               {"adiabaticity", fmt(*e.adiabaticity)},
               {"norm_drift", fmt(traj.norm_drift, 3)},
               {"expected", "1 +- 0.05"}};
  r.ok = std::abs(e.value - 1.0) <= 0.05;
  return r;
}

inline SweepSpec seeded(SweepSpec s, std::uint64_t seed) {
  s.seed = seed;
  return s;
}

inline PresetResult run_fig3a(int workers, std::uint64_t seed = 0) {
  PresetResult r{"fig3a", {sweep(seeded(preset_fig3a(), seed), workers)}, {}, {}, true};
  const PlateauScore s = plateau_score(r.diagrams[0]);
  r.summary = {{"cells", std::to_string(r.diagrams[0].cells.size())},
               {"checked_cells", std::to_string(s.checked)},
               {"agreement", fmt(s.fraction())}};
  r.ok = s.fraction() >= 0.95;
  return r;
}

struct Fig3dRow {
  double ratio = 0.0;
  std::optional<double> texture_exact;
  std::optional<double> texture_adiabatic;
  std::optional<double> dynamical;
  double spectral = 0.0;
};

struct Fig3dOptions {
  int n_points = 21;
  int exact_theta = 51, exact_phi = 50;
  int adiabatic_theta = 25, adiabatic_phi = 24;
  double h_r_mhz = 20.0;
  double t_f = 8000.0;
  int n_record = 1601;
  double max_dt = 0.25;
};

inline std::vector<Fig3dRow> fig3d_scan(const Fig3dOptions& o = {}, int workers = 0) {
  std::vector<Fig3dRow> rows(o.n_points);
  const double h_r = units::mhz_to_rad_per_ns(o.h_r_mhz);
  parallel_for(rows.size(), workers, [&](std::size_t i) {
    Fig3dRow& row = rows[i];
    row.ratio = 2.0 * static_cast<double>(i) / (o.n_points - 1);
    const double h_0 = row.ratio * h_r;
    auto texture = [&](TexturePrep prep, int nt, int np) -> std::optional<double> {
      try {
        const TextureChern tc = texture_chern(texture_grid(h_r, h_0, nt, np, prep), TextureMethod::solid_angle);
        if (tc.sector.has(ChernFlag::degenerate_encounter)) return std::nullopt;
        return tc.sector.value;
      } catch (const ResolutionError&) {
        return std::nullopt;
      }
    };
    row.texture_exact = texture(TexturePrep::exact_ground, o.exact_theta, o.exact_phi);
    row.texture_adiabatic = texture(TexturePrep::adiabatic_sim, o.adiabatic_theta, o.adiabatic_phi);
    const ChernEstimate sp = chern_spectral(SphereParams{1, h_r, h_0, 0.0});
    row.spectral = sp.value;
    if (!sp.has(ChernFlag::degenerate_encounter)) {
      PropagateOptions popt;
      popt.record_xz = false;
      popt.n_record = o.n_record;
      popt.substeps = std::max(popt.substeps, static_cast<int>(std::ceil(o.t_f / (popt.n_record - 1) / o.max_dt)));
      row.dynamical = chern_dynamical(propagate(meridian_ramp(h_r, h_0, o.t_f), StateVector::all_up(1), popt)).value;
    }
  });
  return rows;
}

inline PresetResult run_fig3d(int workers) {
  PresetResult r{"fig3d", {}, {}, {}, true};
  const auto rows = fig3d_scan({}, workers);
  Table t{"fig3d", {"h0_over_hr", "ch_texture_exact", "ch_texture_adiabatic", "ch_dynamical", "ch_spectral"}, {}};
  double worst = 0.0;
  auto opt = [](const std::optional<double>& v) { return v ? fmt(*v) : std::string("nan"); };
  for (const auto& row : rows) {
    t.rows.push_back({fmt(row.ratio), opt(row.texture_exact), opt(row.texture_adiabatic), opt(row.dynamical),
                      fmt(row.spectral)});
    if (row.texture_adiabatic && row.dynamical) worst = std::max(worst, std::abs(*row.texture_adiabatic - *row.dynamical));
  }
  r.tables.push_back(std::move(t));
  r.summary = {{"max_abs_texture_minus_dynamical", fmt(worst)}};
  r.ok = worst <= 0.1;
  return r;
}

inline PresetResult run_fig4b(int workers, std::uint64_t seed = 0) {
  PresetResult r{"fig4b",
                 {sweep(seeded(preset_fig4b(0.0), seed), workers), sweep(seeded(preset_fig4b(4.0), seed), workers)},
                 {},
                 {},
                 true};
  for (const PhaseDiagram& pd : r.diagrams) {
    const PlateauScore s = plateau_score(pd);
    r.summary.push_back({pd.spec.name + "_agreement", fmt(s.fraction())});
    r.ok = r.ok && s.matched == s.checked;
  }
  return r;
}

inline PresetResult run_fig4c(int workers, std::uint64_t seed = 0) {
  PresetResult r{"fig4c", {sweep(seeded(preset_fig4c(), seed), workers)}, {}, {}, true};
  const PlateauScore s = plateau_score(r.diagrams[0]);
  std::string plateaus;
  for (int p : s.plateaus) plateaus += (plateaus.empty() ? "" : ";") + std::to_string(p);
  r.summary = {{"checked_cells", std::to_string(s.checked)},
               {"matched_cells", std::to_string(s.matched)},
               {"plateaus", plateaus}};
  r.ok = s.matched == s.checked && s.plateaus == std::set<int>{0, 1, 2};
  return r;
}

// Mean |Ch - 1| over all cells and the fraction of A > 1.5 cells within 0.15 of 1.
struct FigS6Stats {
  double t_f = 0.0;
  double mean_error = 0.0;
  int reliable_cells = 0;
  double reliable_fraction_good = 0.0;
};

inline FigS6Stats figS6_stats(const PhaseDiagram& pd) {
  FigS6Stats st;
  st.t_f = pd.spec.t_f;
  double sum = 0.0;
  int n = 0, good = 0;
  for (const PhaseCell& c : pd.cells) {
    if (!c.dynamical) continue;
    const double err = std::abs(c.dynamical->value - 1.0);
    sum += err;
    ++n;
    if (c.dynamical->adiabaticity.value_or(0.0) > kMinAdiabaticity) {
      ++st.reliable_cells;
      good += err < 0.15;
    }
  }
  st.mean_error = n ? sum / n : 0.0;
  st.reliable_fraction_good = st.reliable_cells ? static_cast<double>(good) / st.reliable_cells : 0.0;
  return st;
}

inline PresetResult run_figS6(int workers, std::uint64_t seed = 0) {
  PresetResult r{"figS6", {}, {}, {}, true};
  Table t{"figS6_summary", {"t_f_ns", "mean_abs_error", "cells_a_gt_1p5", "fraction_within_0p15"}, {}};
  double prev = std::numeric_limits<double>::infinity();
  for (double tf : kFigS6Times) {
    r.diagrams.push_back(sweep(seeded(preset_figS6(tf), seed), workers));
    const FigS6Stats st = figS6_stats(r.diagrams.back());
    t.rows.push_back({fmt(tf), fmt(st.mean_error), std::to_string(st.reliable_cells), fmt(st.reliable_fraction_good)});
    r.ok = r.ok && st.mean_error < prev;
    if (tf >= 400.0) r.ok = r.ok && st.reliable_fraction_good >= 0.9;
    prev = st.mean_error;
  }
  r.tables.push_back(std::move(t));
  return r;
}

inline PresetResult run_fig4a_monopoles() {
  PresetResult r{"fig4a_monopoles", {}, {}, {}, true};
  Table t{"fig4a_monopoles",
          {"label", "h0_mhz", "g_mhz", "hr_mhz", "hz_plus_mhz", "hz_minus_mhz", "enclosed", "ch_spectral", "ch_lattice"},
          {}};
  const double h_r = units::mhz_to_rad_per_ns(kFig4aRadiusMhz);
  for (const MonopolePoint& p : kFig4aPoints) {
    const double h_0 = units::mhz_to_rad_per_ns(p.h_0_mhz), g = units::mhz_to_rad_per_ns(p.g_mhz);
    const MonopoleSet m = degeneracy_loci(h_0, g);
    const int count = *monopole_count(h_0, g, h_r).rounded;
    const ChernEstimate sp = chern_spectral(SphereParams{2, h_r, h_0, g});
    const int lat = *lattice_chern(from_qubit_params(h_r, g, h_0)).rounded;
    t.rows.push_back({p.label, fmt(p.h_0_mhz), fmt(p.g_mhz), fmt(kFig4aRadiusMhz),
                      fmt(units::rad_per_ns_to_mhz(m.positions[0])), fmt(units::rad_per_ns_to_mhz(m.positions[1])),
                      std::to_string(count), fmt(sp.value), std::to_string(lat)});
    r.ok = r.ok && sp.rounded == count && lat == count;
  }
  r.tables.push_back(std::move(t));
  return r;
}

// Dispersions along the K' - Gamma - K cut for the four panels: t1 only, then adding
// t2, t3 and h_z in turn.
inline PresetResult run_figS3_bands() {
  PresetResult r{"figS3_bands", {}, {}, {}, true};
  struct Panel {
    std::string name;
    HaldaneParams p;
  };
  const std::vector<Panel> panels{{"b_t1", {1.0, 0.0, 0.0, 0.0}},
                                  {"c_t1_t2", {1.0, 0.2, 0.0, 0.0}},
                                  {"d_t1_t2_t3", {1.0, 0.2, -1.5, 0.0}},
                                  {"e_t1_t2_hz", {1.0, 0.2, 0.0, 0.6}}};
  const std::vector<Vec2> path = corner_cut(121);
  Table t{"figS3_bands", {"panel", "kx", "ky", "e0", "e1", "e2", "e3"}, {}};
  for (const Panel& panel : panels) {
    const auto bands = band_dispersion(panel.p, path);
    for (std::size_t i = 0; i < path.size(); ++i)
      t.rows.push_back({panel.name, fmt(path[i].x), fmt(path[i].y), fmt(bands[i][0]), fmt(bands[i][1]),
                        fmt(bands[i][2]), fmt(bands[i][3])});
    try {
      r.summary.push_back({panel.name + "_ground_band_chern", std::to_string(*lattice_chern(panel.p).rounded)});
    } catch (const GaplessError&) {
      r.summary.push_back({panel.name + "_ground_band_chern", "gapless"});
    }
  }
  r.tables.push_back(std::move(t));
  return r;
}

// Presets without shot noise ignore the seed apart from echoing it in provenance.
inline PresetResult run_preset(const std::string& name, int workers = 0, std::uint64_t seed = 0) {
  if (name == "fig2") return run_fig2();
  if (name == "fig3a") return run_fig3a(workers, seed);
  if (name == "fig3d") return run_fig3d(workers);
  if (name == "fig4b") return run_fig4b(workers, seed);
  if (name == "fig4c") return run_fig4c(workers, seed);
  if (name == "figS6") return run_figS6(workers, seed);
  if (name == "fig4a_monopoles") return run_fig4a_monopoles();
  if (name == "figS3_bands") return run_figS3_bands();
  throw ArgumentError("unknown preset '" + name + "'");
}

}  // namespace berrysim
