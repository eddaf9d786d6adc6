#pragma once

// Serialization: phase diagrams to CSV / JSON / SVG, generic tables, trajectories,
// textures and band plots, plus the key=value config file reader.
//
// User-facing files carry field strengths as H/2pi in MHz; the JSON form also keeps
// every Chern estimate exactly (17 significant digits, non-finite values as strings).

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <optional>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "berrysim/bzmap.hpp"
#include "berrysim/errors.hpp"
#include "berrysim/propagator.hpp"
#include "berrysim/runner.hpp"
#include "berrysim/units.hpp"

namespace berrysim::io {

using json = nlohmann::ordered_json;

inline std::string g6(double v) { return fmt(v, 6); }

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string csv_row(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) line += ',';
    line += csv_field(fields[i]);
  }
  return line + "\n";
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
  f << content;
  f.flush();
  if (!f) throw IoError("failed writing '" + path.string() + "'");
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------- CSV

inline const char* kPhaseDiagramHeader = "axis1,axis2,ch_dynamical,ch_spectral,ch_monopole,flags";

inline std::string phase_diagram_csv(const PhaseDiagram& pd) {
  auto value = [](const std::optional<ChernEstimate>& e) { return e ? g6(e->value) : std::string(); };
  std::string out = std::string(kPhaseDiagramHeader) + "\n";
  for (const PhaseCell& c : pd.cells) {
    std::string flags;
    for (const std::string& f : c.flags) flags += (flags.empty() ? "" : ";") + f;
    out += csv_row({g6(units::rad_per_ns_to_mhz(c.axis1)), g6(units::rad_per_ns_to_mhz(c.axis2)), value(c.dynamical),
                    value(c.spectral), value(c.monopole), flags});
  }
  return out;
}

inline std::string table_csv(const Table& t) {
  std::string out = csv_row(t.columns);
  for (const auto& row : t.rows) out += csv_row(row);
  return out;
}

inline std::string trajectory_csv(const TrajectoryRecord& traj) {
  std::vector<std::string> cols{"t_ns"};
  const int nq = traj.schedule.n_qubits();
  for (int q = 1; q <= nq; ++q) cols.push_back("sy_q" + std::to_string(q));
  for (const char* a : {"sx", "sz"})
    for (int q = 1; q <= nq; ++q)
      if (traj.has(std::string(a) + "_q" + std::to_string(q))) cols.push_back(std::string(a) + "_q" + std::to_string(q));
  std::string out = csv_row(cols);
  for (std::size_t j = 0; j < traj.sample_times.size(); ++j) {
    std::vector<std::string> row{g6(traj.sample_times[j])};
    for (std::size_t c = 1; c < cols.size(); ++c) row.push_back(g6(traj.series(cols[c])[j]));
    out += csv_row(row);
  }
  return out;
}

inline std::string texture_csv(const TextureGrid& g) {
  std::string out = csv_row({"k_x", "k_y", "bx", "by", "bz"});
  for (const TexturePoint& p : g.points)
    out += csv_row({g6(p.k.x), g6(p.k.y), g6(p.bloch.x), g6(p.bloch.y), g6(p.bloch.z)});
  return out;
}

// ---------------------------------------------------------------- JSON

inline json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

inline double read_number(const json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw ArgumentError("bad number '" + s + "'");
  }
  return j.get<double>();
}

inline json to_json(const ChernEstimate& e) {
  json flags = json::array();
  for (ChernFlag f : kAllChernFlags)
    if (e.has(f)) flags.push_back(to_string(f));
  return json{{"value", number(e.value)},
              {"rounded", e.rounded ? json(*e.rounded) : json(nullptr)},
              {"method", to_string(e.method)},
              {"adiabaticity", e.adiabaticity ? number(*e.adiabaticity) : json(nullptr)},
              {"flags", flags}};
}

inline ChernEstimate chern_from_json(const json& j) {
  ChernEstimate e;
  e.value = read_number(j.at("value"));
  if (!j.at("rounded").is_null()) e.rounded = j.at("rounded").get<int>();
  e.method = parse_chern_method(j.at("method").get<std::string>());
  if (!j.at("adiabaticity").is_null()) e.adiabaticity = read_number(j.at("adiabaticity"));
  for (const auto& f : j.at("flags")) e.set(parse_chern_flag(f.get<std::string>()));
  return e;
}

inline double mhz(double rad_per_ns) { return units::rad_per_ns_to_mhz(rad_per_ns); }
inline double rad(double mhz_value) { return units::mhz_to_rad_per_ns(mhz_value); }

inline json to_json(const SweepAxis& a) {
  return json{{"param", to_string(a.param)}, {"min_mhz", mhz(a.min)}, {"max_mhz", mhz(a.max)}, {"count", a.count}};
}

inline SweepAxis axis_from_json(const json& j) {
  return {parse_sweep_param(j.at("param").get<std::string>()), rad(j.at("min_mhz").get<double>()),
          rad(j.at("max_mhz").get<double>()), j.at("count").get<int>()};
}

inline json to_json(const SweepSpec& s) {
  json methods = json::array();
  for (ChernMethod m : s.methods) methods.push_back(to_string(m));
  return json{{"name", s.name},
              {"kind", to_string(s.kind)},
              {"axis1", to_json(s.axis1)},
              {"axis2", to_json(s.axis2)},
              {"hr_mhz", mhz(s.h_r)},
              {"h0_mhz", mhz(s.h_0)},
              {"g_mhz", mhz(s.g)},
              {"hx_mhz", mhz(s.h_x)},
              {"hz_mhz", mhz(s.h_z)},
              {"tf_policy", to_string(s.tf_policy)},
              {"tf_ns", s.t_f},
              {"target_adiabaticity", s.target_adiabaticity},
              {"shots", s.shots},
              {"seed", s.seed},
              {"methods", methods},
              {"n_record", s.n_record},
              {"substeps", s.substeps},
              {"max_dt_ns", s.max_dt},
              {"initial_state", to_string(s.initial)}};
}

inline SweepSpec spec_from_json(const json& j) {
  SweepSpec s;
  s.name = j.at("name").get<std::string>();
  s.kind = parse_sweep_kind(j.at("kind").get<std::string>());
  s.axis1 = axis_from_json(j.at("axis1"));
  s.axis2 = axis_from_json(j.at("axis2"));
  s.h_r = rad(j.at("hr_mhz").get<double>());
  s.h_0 = rad(j.at("h0_mhz").get<double>());
  s.g = rad(j.at("g_mhz").get<double>());
  s.h_x = rad(j.at("hx_mhz").get<double>());
  s.h_z = rad(j.at("hz_mhz").get<double>());
  s.tf_policy = parse_tf_policy(j.at("tf_policy").get<std::string>());
  s.t_f = j.at("tf_ns").get<double>();
  s.target_adiabaticity = j.at("target_adiabaticity").get<double>();
  s.shots = j.at("shots").get<int>();
  s.seed = j.at("seed").get<std::uint64_t>();
  s.methods.clear();
  for (const auto& m : j.at("methods")) s.methods.push_back(parse_chern_method(m.get<std::string>()));
  s.n_record = j.at("n_record").get<int>();
  s.substeps = j.at("substeps").get<int>();
  s.max_dt = j.at("max_dt_ns").get<double>();
  s.initial = parse_initial_state(j.at("initial_state").get<std::string>());
  return s;
}

inline json to_json(const PhaseDiagram& pd) {
  json cells = json::array();
  for (const PhaseCell& c : pd.cells) {
    json jc{{"axis1_mhz", mhz(c.axis1)}, {"axis2_mhz", mhz(c.axis2)}, {"tf_ns", c.t_f}};
    auto put = [&](const char* key, const std::optional<ChernEstimate>& e) { jc[key] = e ? to_json(*e) : json(nullptr); };
    put("dynamical", c.dynamical);
    put("spectral", c.spectral);
    put("monopole_count", c.monopole);
    put("lattice", c.lattice);
    jc["flags"] = c.flags;
    cells.push_back(std::move(jc));
  }
  json axis1 = json::array(), axis2 = json::array();
  for (double v : pd.axis1_values) axis1.push_back(mhz(v));
  for (double v : pd.axis2_values) axis2.push_back(mhz(v));
  return json{{"spec", to_json(pd.spec)},
              {"grid",
               {{"axis1", {{"param", to_string(pd.spec.axis1.param)}, {"values_mhz", axis1}}},
                {"axis2", {{"param", to_string(pd.spec.axis2.param)}, {"values_mhz", axis2}}},
                {"cells", cells}}},
              {"provenance",
               {{"code_version", pd.provenance.code_version},
                {"seed", pd.provenance.seed},
                {"preset", pd.provenance.preset}}}};
}

inline PhaseDiagram phase_diagram_from_json(const json& j) {
  PhaseDiagram pd;
  pd.spec = spec_from_json(j.at("spec"));
  const json& grid = j.at("grid");
  for (const auto& v : grid.at("axis1").at("values_mhz")) pd.axis1_values.push_back(rad(v.get<double>()));
  for (const auto& v : grid.at("axis2").at("values_mhz")) pd.axis2_values.push_back(rad(v.get<double>()));
  for (const auto& jc : grid.at("cells")) {
    PhaseCell c;
    c.axis1 = rad(jc.at("axis1_mhz").get<double>());
    c.axis2 = rad(jc.at("axis2_mhz").get<double>());
    c.t_f = jc.at("tf_ns").get<double>();
    auto get = [&](const char* key, std::optional<ChernEstimate>& e) {
      if (!jc.at(key).is_null()) e = chern_from_json(jc.at(key));
    };
    get("dynamical", c.dynamical);
    get("spectral", c.spectral);
    get("monopole_count", c.monopole);
    get("lattice", c.lattice);
    c.flags = jc.at("flags").get<std::vector<std::string>>();
    pd.cells.push_back(std::move(c));
  }
  const json& p = j.at("provenance");
  pd.provenance.code_version = p.at("code_version").get<std::string>();
  pd.provenance.seed = p.at("seed").get<std::uint64_t>();
  pd.provenance.preset = p.at("preset").get<std::string>();
  return pd;
}

inline std::string phase_diagram_json(const PhaseDiagram& pd) { return to_json(pd).dump(2) + "\n"; }

inline PhaseDiagram parse_phase_diagram_json(const std::string& text) {
  try {
    return phase_diagram_from_json(json::parse(text));
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("malformed phase-diagram JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------- SVG

struct Rgb {
  int r = 0, g = 0, b = 0;
};

// Fixed three-stop map over Ch in [0, 2]: blue at 0, green at 1, red at 2.
inline Rgb chern_color(double v) {
  static constexpr Rgb stops[3] = {{33, 102, 172}, {77, 175, 74}, {215, 48, 39}};
  if (std::isnan(v)) return {160, 160, 160};
  const double x = std::clamp(v, 0.0, 2.0);
  const int i = x >= 1.0 ? 1 : 0;
  const double f = x - i;
  auto mix = [&](int a, int b) { return static_cast<int>(std::lround(a + (b - a) * f)); };
  return {mix(stops[i].r, stops[i + 1].r), mix(stops[i].g, stops[i + 1].g), mix(stops[i].b, stops[i + 1].b)};
}

inline std::string hex(const Rgb& c) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c.r, c.g, c.b);
  return buf;
}

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string axis_label(SweepParam p) {
  switch (p) {
    case SweepParam::h0: return "H_0/2π (MHz)";
    case SweepParam::hr: return "H_r/2π (MHz)";
    case SweepParam::g: return "g/2π (MHz)";
    case SweepParam::hx: return "H_X/2π (MHz)";
    case SweepParam::hz: return "H_Z/2π (MHz)";
  }
  return "";
}

inline std::string num(double v) { return fmt(v, 6); }

// Heatmap of one estimator: axis1 runs left to right, axis2 bottom to top.
inline std::string phase_diagram_svg(const PhaseDiagram& pd, ChernMethod method = ChernMethod::dynamical) {
  const int n1 = static_cast<int>(pd.axis1_values.size()), n2 = static_cast<int>(pd.axis2_values.size());
  const double cell = 20.0, left = 70.0, top = 40.0;
  const double w = n1 * cell, h = n2 * cell;
  const double total_w = left + w + 110.0, total_h = top + h + 60.0;
  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(total_w) << "\" height=\"" << num(total_h)
    << "\" viewBox=\"0 0 " << num(total_w) << " " << num(total_h) << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  s << "<title>" << xml_escape(pd.spec.name + " " + to_string(method)) << "</title>\n";
  s << "<text x=\"" << num(left) << "\" y=\"20\" font-size=\"13\">" << xml_escape(pd.spec.name) << " Ch ("
    << to_string(method) << ")</text>\n";
  for (int i = 0; i < n1; ++i) {
    for (int j = 0; j < n2; ++j) {
      const PhaseCell& c = pd.cell(i, j);
      const std::optional<ChernEstimate>* e = method == ChernMethod::dynamical  ? &c.dynamical
                                              : method == ChernMethod::spectral ? &c.spectral
                                              : method == ChernMethod::lattice  ? &c.lattice
                                                                                : &c.monopole;
      const double v = *e ? (*e)->value : std::numeric_limits<double>::quiet_NaN();
      s << "<rect x=\"" << num(left + i * cell) << "\" y=\"" << num(top + (n2 - 1 - j) * cell) << "\" width=\""
        << num(cell) << "\" height=\"" << num(cell) << "\" fill=\"" << hex(chern_color(v)) << "\"/>\n";
    }
  }
  s << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\"" << num(w) << "\" height=\"" << num(h)
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  // Ticks at the ends and middle of each axis.
  for (int i : {0, n1 / 2, n1 - 1}) {
    const double x = left + (i + 0.5) * cell;
    s << "<text x=\"" << num(x) << "\" y=\"" << num(top + h + 15) << "\" text-anchor=\"middle\">"
      << num(units::rad_per_ns_to_mhz(pd.axis1_values[i])) << "</text>\n";
  }
  for (int j : {0, n2 / 2, n2 - 1}) {
    const double y = top + (n2 - 1 - j + 0.5) * cell + 4;
    s << "<text x=\"" << num(left - 5) << "\" y=\"" << num(y) << "\" text-anchor=\"end\">"
      << num(units::rad_per_ns_to_mhz(pd.axis2_values[j])) << "</text>\n";
  }
  s << "<text x=\"" << num(left + w / 2) << "\" y=\"" << num(top + h + 35) << "\" text-anchor=\"middle\">"
    << xml_escape(axis_label(pd.spec.axis1.param)) << "</text>\n";
  s << "<text transform=\"translate(" << num(left - 45) << "," << num(top + h / 2)
    << ") rotate(-90)\" text-anchor=\"middle\">" << xml_escape(axis_label(pd.spec.axis2.param)) << "</text>\n";
  // Colorbar.
  const double bx = left + w + 30, bw = 16;
  const int steps = 40;
  for (int k = 0; k < steps; ++k) {
    const double v = 2.0 * (k + 0.5) / steps;
    s << "<rect x=\"" << num(bx) << "\" y=\"" << num(top + h - (k + 1) * h / steps) << "\" width=\"" << num(bw)
      << "\" height=\"" << num(h / steps + 0.5) << "\" fill=\"" << hex(chern_color(v)) << "\"/>\n";
  }
  s << "<rect x=\"" << num(bx) << "\" y=\"" << num(top) << "\" width=\"" << num(bw) << "\" height=\"" << num(h)
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int v = 0; v <= 2; ++v)
    s << "<text x=\"" << num(bx + bw + 5) << "\" y=\"" << num(top + h - v * h / 2 + 4) << "\">" << v << "</text>\n";
  s << "<text x=\"" << num(bx) << "\" y=\"" << num(top - 8) << "\">Ch</text>\n";
  s << "</svg>\n";
  return s.str();
}

// Bloch vectors in the Brillouin zone: dots coloured by bz (blue -1 .. red +1) with the
// in-plane component drawn as a short segment, and the hexagon outline.
inline std::string texture_svg(const TextureGrid& g) {
  const double size = 480.0, margin = 20.0;
  const double extent = 2.2 * g.bz.b();
  auto px = [&](double x) { return margin + (x + extent) / (2 * extent) * size; };
  auto py = [&](double y) { return margin + (extent - y) / (2 * extent) * size; };
  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(size + 2 * margin) << "\" height=\""
    << num(size + 2 * margin) << "\">\n";
  s << "<title>spin texture H_0/H_r = " << num(g.h_0 / g.h_r) << "</title>\n";
  const auto v = g.bz.vertices();
  s << "<polygon fill=\"none\" stroke=\"gray\" points=\"";
  for (int i = 0; i < 6; ++i) s << (i ? " " : "") << num(px(v[i].x)) << "," << num(py(v[i].y));
  s << "\"/>\n";
  const double arrow = 0.04 * size;
  for (const TexturePoint& p : g.points) {
    const Rgb c = chern_color(1.0 + p.bloch.z);
    const double x = px(p.k.x), y = py(p.k.y);
    if (x < 0 || y < 0 || x > size + 2 * margin || y > size + 2 * margin) continue;
    s << "<line x1=\"" << num(x) << "\" y1=\"" << num(y) << "\" x2=\"" << num(x + arrow * p.bloch.x) << "\" y2=\""
      << num(y - arrow * p.bloch.y) << "\" stroke=\"" << hex(c) << "\"/>\n";
    s << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"1.5\" fill=\"" << hex(c) << "\"/>\n";
  }
  s << "</svg>\n";
  return s.str();
}

// Line plot of the numeric columns `ys` against column `x` of a table, one polyline
// per (column, group) where rows are grouped by the value of `group_col` (or -1).
inline std::string line_plot_svg(const Table& t, int x, const std::vector<int>& ys, int group_col = -1) {
  const double w = 520, h = 360, left = 60, right = 20, top = 30, bottom = 40;
  std::vector<std::string> groups;
  for (const auto& row : t.rows) {
    const std::string key = group_col >= 0 ? row[group_col] : "";
    if (std::find(groups.begin(), groups.end(), key) == groups.end()) groups.push_back(key);
  }
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& row : t.rows) {
    const double xv = std::stod(row[x]);
    xmin = std::min(xmin, xv);
    xmax = std::max(xmax, xv);
    for (int c : ys) {
      const double yv = std::stod(row[c]);
      if (!std::isfinite(yv)) continue;
      ymin = std::min(ymin, yv);
      ymax = std::max(ymax, yv);
    }
  }
  if (xmax <= xmin) xmax = xmin + 1;
  if (ymax <= ymin) ymax = ymin + 1;
  auto px = [&](double v) { return left + (v - xmin) / (xmax - xmin) * (w - left - right); };
  auto py = [&](double v) { return top + (ymax - v) / (ymax - ymin) * (h - top - bottom); };
  static const char* palette[] = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02"};
  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w) << "\" height=\"" << num(h * groups.size())
    << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  s << "<title>" << xml_escape(t.name) << "</title>\n";
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    s << "<g transform=\"translate(0," << num(gi * h) << ")\">\n";
    s << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\"" << num(w - left - right)
      << "\" height=\"" << num(h - top - bottom) << "\" fill=\"none\" stroke=\"black\"/>\n";
    s << "<text x=\"" << num(left) << "\" y=\"20\">" << xml_escape(t.name + " " + groups[gi]) << "</text>\n";
    s << "<text x=\"" << num(left - 5) << "\" y=\"" << num(top + 4) << "\" text-anchor=\"end\">" << num(ymax)
      << "</text>\n";
    s << "<text x=\"" << num(left - 5) << "\" y=\"" << num(h - bottom) << "\" text-anchor=\"end\">" << num(ymin)
      << "</text>\n";
    s << "<text x=\"" << num(left + (w - left - right) / 2) << "\" y=\"" << num(h - 10) << "\" text-anchor=\"middle\">"
      << xml_escape(t.columns[x]) << "</text>\n";
    for (std::size_t k = 0; k < ys.size(); ++k) {
      s << "<polyline fill=\"none\" stroke=\"" << palette[k % 6] << "\" points=\"";
      bool first = true;
      for (const auto& row : t.rows) {
        if (group_col >= 0 && row[group_col] != groups[gi]) continue;
        const double yv = std::stod(row[ys[k]]);
        if (!std::isfinite(yv)) continue;
        s << (first ? "" : " ") << num(px(std::stod(row[x]))) << "," << num(py(yv));
        first = false;
      }
      s << "\"/>\n";
    }
    s << "</g>\n";
  }
  s << "</svg>\n";
  return s.str();
}

// ---------------------------------------------------------------- config files

// Flat `key = value` lines; `#` starts a comment; blank lines ignored.
inline std::vector<std::pair<std::string, std::string>> parse_config(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ArgumentError("config line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key.rfind("--", 0) == 0) key.erase(0, 2);
    if (key.empty()) throw ArgumentError("config line " + std::to_string(lineno) + ": empty key");
    out.emplace_back(std::move(key), std::move(value));
  }
  return out;
}

}  // namespace berrysim::io
