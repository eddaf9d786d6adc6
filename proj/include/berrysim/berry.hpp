#pragma once

// Chern-number estimators and their oracles:
//   - dynamical: integrated out-of-plane deflection <sigma^y> during a meridian ramp
//   - spectral: Berry curvature from the sum over excited states, integrated over theta
//   - monopole_count: analytic ground-state degeneracy loci on the z axis

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "berrysim/controls.hpp"
#include "berrysim/propagator.hpp"
#include "berrysim/qcore.hpp"

namespace berrysim {

enum class ChernMethod { dynamical, spectral, texture, monopole_count, lattice };

inline std::string to_string(ChernMethod m) {
  switch (m) {
    case ChernMethod::dynamical: return "dynamical";
    case ChernMethod::spectral: return "spectral";
    case ChernMethod::texture: return "texture";
    case ChernMethod::monopole_count: return "monopole_count";
    case ChernMethod::lattice: return "lattice";
  }
  return "unknown";
}

inline ChernMethod parse_chern_method(const std::string& s) {
  for (ChernMethod m : {ChernMethod::dynamical, ChernMethod::spectral, ChernMethod::texture,
                        ChernMethod::monopole_count, ChernMethod::lattice})
    if (to_string(m) == s) return m;
  throw ArgumentError("unknown Chern method '" + s + "'");
}

enum class ChernFlag : unsigned { near_boundary = 1u, degenerate_encounter = 2u, low_adiabaticity = 4u };

inline constexpr std::array<ChernFlag, 3> kAllChernFlags{ChernFlag::near_boundary, ChernFlag::degenerate_encounter,
                                                         ChernFlag::low_adiabaticity};

inline std::string to_string(ChernFlag f) {
  switch (f) {
    case ChernFlag::near_boundary: return "near_boundary";
    case ChernFlag::degenerate_encounter: return "degenerate_encounter";
    case ChernFlag::low_adiabaticity: return "low_adiabaticity";
  }
  return "unknown";
}

inline ChernFlag parse_chern_flag(const std::string& s) {
  for (ChernFlag f : kAllChernFlags)
    if (to_string(f) == s) return f;
  throw ArgumentError("unknown flag '" + s + "'");
}

// Adiabaticity below which the deflection estimate is not trusted.
inline constexpr double kMinAdiabaticity = 1.5;

struct ChernEstimate {
  double value = std::numeric_limits<double>::quiet_NaN();
  std::optional<int> rounded;  // absent when the estimator refuses to round
  ChernMethod method = ChernMethod::spectral;
  std::optional<double> adiabaticity;
  unsigned flags = 0;

  static ChernEstimate of(double value, ChernMethod method) {
    ChernEstimate e;
    e.value = value;
    e.method = method;
    if (std::isfinite(value)) e.rounded = static_cast<int>(std::lround(value));
    return e;
  }

  bool has(ChernFlag f) const noexcept { return (flags & static_cast<unsigned>(f)) != 0; }
  void set(ChernFlag f) noexcept { flags |= static_cast<unsigned>(f); }

  // |value - rounded|, NaN when not rounded.
  double residual() const {
    return rounded ? std::abs(value - *rounded) : std::numeric_limits<double>::quiet_NaN();
  }

  void set_adiabaticity(double a) {
    adiabaticity = a;
    if (a < kMinAdiabaticity) set(ChernFlag::low_adiabaticity);
  }
};

inline bool same_bits(double a, double b) {
  return (std::isnan(a) && std::isnan(b)) || std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

inline bool operator==(const ChernEstimate& a, const ChernEstimate& b) {
  const bool adia = a.adiabaticity.has_value() == b.adiabaticity.has_value() &&
                    (!a.adiabaticity || same_bits(*a.adiabaticity, *b.adiabaticity));
  return same_bits(a.value, b.value) && a.rounded == b.rounded && a.method == b.method && adia && a.flags == b.flags;
}

// Composite trapezoid of (amplitude/2) sin(pi t/T_f) sum_q <sigma^y_q>(t) over the samples.
inline double deflection_integral(const std::vector<double>& times, const std::vector<double>& sy_sum,
                                  double amplitude, double t_f) {
  if (times.size() != sy_sum.size() || times.size() < 2) throw ArgumentError("deflection series length mismatch");
  double acc = 0.0;
  auto f = [&](std::size_t j) { return 0.5 * amplitude * std::sin(std::numbers::pi * times[j] / t_f) * sy_sum[j]; };
  for (std::size_t j = 1; j < times.size(); ++j) acc += 0.5 * (times[j] - times[j - 1]) * (f(j) + f(j - 1));
  return acc;
}

inline std::vector<double> summed_sigma_y(const TrajectoryRecord& traj) {
  std::vector<double> sum = traj.series("sy_q1");
  if (traj.schedule.n_qubits() == 2) {
    const auto& s2 = traj.series("sy_q2");
    for (std::size_t j = 0; j < sum.size(); ++j) sum[j] += s2[j];
  }
  return sum;
}

inline ChernEstimate chern_dynamical(const TrajectoryRecord& traj, double amplitude) {
  const ControlSchedule& s = traj.schedule;
  if (s.kind() == ScheduleKind::adiabatic_prep)
    throw UnsupportedError("dynamical Chern number needs a meridian, elliptic or two-qubit ramp");
  ChernEstimate e = ChernEstimate::of(deflection_integral(traj.sample_times, summed_sigma_y(traj), amplitude, s.t_f()),
                                      ChernMethod::dynamical);
  e.set_adiabaticity(adiabaticity_measure(s));
  return e;
}

inline ChernEstimate chern_dynamical(const TrajectoryRecord& traj) {
  return chern_dynamical(traj, traj.schedule.transverse_amplitude());
}

// A closed spherical manifold: one qubit with H = (H_r n, H_0 + H_r n_z), or two qubits
// sharing H_r n with the H_0 offset on qubit 1 and XY coupling g.
struct SphereParams {
  int n_qubits = 1;
  double h_r = 1.0;
  double h_0 = 0.0;
  double g = 0.0;
};

inline ControlVector sphere_point(const SphereParams& p, double theta, double phi = 0.0) {
  const double st = std::sin(theta), ct = std::cos(theta);
  const Vec3 n{p.h_r * st * std::cos(phi), p.h_r * st * std::sin(phi), p.h_r * ct};
  ControlVector cv;
  cv.field[0] = n + Vec3{0.0, 0.0, p.h_0};
  if (p.n_qubits == 2) {
    cv.field[1] = n;
    cv.g = p.g;
  }
  return cv;
}

inline HermitianOperator sphere_hamiltonian(const SphereParams& p, double theta, double phi = 0.0) {
  return hamiltonian(sphere_point(p, theta, phi), p.n_qubits);
}

// dH/dtheta and dH/dphi on the phi = 0 meridian.
inline HermitianOperator sphere_dtheta(const SphereParams& p, double theta) {
  ControlVector cv;
  const Vec3 d{p.h_r * std::cos(theta), 0.0, -p.h_r * std::sin(theta)};
  cv.field[0] = d;
  if (p.n_qubits == 2) cv.field[1] = d;
  return hamiltonian(cv, p.n_qubits);
}

inline HermitianOperator sphere_dphi(const SphereParams& p, double theta) {
  ControlVector cv;
  const Vec3 d{0.0, p.h_r * std::sin(theta), 0.0};
  cv.field[0] = d;
  if (p.n_qubits == 2) cv.field[1] = d;
  return hamiltonian(cv, p.n_qubits);
}

struct CurvatureSample {
  double theta = 0.0;
  double b_theta_phi = 0.0;
};

namespace detail {

inline Complex matrix_element(const SpectralDecomposition& sd, int a, const HermitianOperator& op, int b) {
  Complex s{};
  const int n = sd.source_dim;
  for (int r = 0; r < n; ++r) {
    Complex row{};
    for (int c = 0; c < n; ++c) row += op(r, c) * sd.eigenvectors(c, b);
    s += std::conj(sd.eigenvectors(r, a)) * row;
  }
  return s;
}

}  // namespace detail

// Ground-state Berry curvature B_{theta phi} on the phi = 0 meridian from the
// sum over excited states. Oriented so the field sphere enclosing a single
// two-level crossing integrates to +1, matching the sign of the deflection force.
inline double curvature_from_spectrum(const SpectralDecomposition& sd, const HermitianOperator& d_theta,
                                      const HermitianOperator& d_phi) {
  double b = 0.0;
  for (int n = 1; n < sd.source_dim; ++n) {
    const double gap = sd.eigenvalues[n] - sd.eigenvalues[0];
    const Complex x = detail::matrix_element(sd, 0, d_theta, n) * detail::matrix_element(sd, n, d_phi, 0);
    b += 2.0 * x.imag() / (gap * gap);
  }
  return b;
}

inline CurvatureSample spectral_curvature(const SphereParams& p, double theta) {
  const HermitianOperator h = sphere_hamiltonian(p, theta);
  const SpectralDecomposition sd = eigh(h);
  const double gap = sd.eigenvalues[1] - sd.eigenvalues[0];
  if (gap <= degeneracy_tolerance(h))
    throw DegeneracyError("degenerate ground state at theta = " + std::to_string(theta), gap);
  return {theta, curvature_from_spectrum(sd, sphere_dtheta(p, theta), sphere_dphi(p, theta))};
}

struct MonopoleSet {
  std::vector<double> positions;  // H_z of each crossing on the sphere axis, rad/ns
  int charge = 1;
};

// Crossings of the |uu> (or |dd>) sector with the lower S^z_tot = 0 level:
// H_z = (-H_0 +- sqrt(H_0^2 + 4 g^2)) / 2, larger root first.
inline MonopoleSet degeneracy_loci(double h_0, double g) {
  const double root = std::sqrt(h_0 * h_0 + 4.0 * g * g);
  return {{0.5 * (-h_0 + root), 0.5 * (-h_0 - root)}, 1};
}

inline MonopoleSet degeneracy_loci(const SphereParams& p) {
  if (p.n_qubits == 1) return {{-p.h_0}, 1};
  return degeneracy_loci(p.h_0, p.g);
}

// Signed distance (in rad/ns) from the nearest crossing to the sphere surface.
inline double boundary_distance(const SphereParams& p) {
  double best = std::numeric_limits<double>::infinity();
  for (double z : degeneracy_loci(p).positions) best = std::min(best, std::abs(std::abs(z) - p.h_r));
  return best;
}

inline ChernEstimate monopole_count(const SphereParams& p) {
  if (!(p.h_r > 0.0)) throw ValidationError("H_r must be positive");
  const MonopoleSet m = degeneracy_loci(p);
  int inside = 0;
  bool near = false;
  for (double z : m.positions) {
    if (std::abs(z) < p.h_r) inside += m.charge;
    if (std::abs(std::abs(z) - p.h_r) < 1e-6 * p.h_r) near = true;
  }
  ChernEstimate e = ChernEstimate::of(inside, ChernMethod::monopole_count);
  if (near) e.set(ChernFlag::near_boundary);
  return e;
}

inline ChernEstimate monopole_count(double h_0, double g, double h_r) { return monopole_count({2, h_r, h_0, g}); }

// Eigenvalues of the two-qubit Hamiltonian with the field along z (H_z on both
// qubits, H_0 extra on qubit 1).
struct SectorEnergies {
  double up_up = 0.0;      // -(H_z + H_0/2)
  double down_down = 0.0;  // +(H_z + H_0/2)
  double mixed_low = 0.0;  // -sqrt(H_0^2/4 + g^2)
  double mixed_high = 0.0;

  std::array<double, 4> sorted() const {
    std::array<double, 4> e{up_up, down_down, mixed_low, mixed_high};
    std::sort(e.begin(), e.end());
    return e;
  }
};

inline SectorEnergies sector_energies(double h_z, double h_0, double g) {
  const double product = h_z + 0.5 * h_0;
  const double mixed = std::sqrt(0.25 * h_0 * h_0 + g * g);
  return {-product, product, -mixed, mixed};
}

// Composite Simpson over theta in [0, pi] of the spectral curvature.
inline ChernEstimate chern_spectral(const SphereParams& p, int n_theta = 721) {
  if (n_theta < 3 || n_theta % 2 == 0) throw ArgumentError("n_theta must be odd and >= 3");
  if (!(p.h_r > 0.0)) throw ValidationError("H_r must be positive");
  const double h = std::numbers::pi / (n_theta - 1);
  double acc = 0.0;
  for (int k = 0; k < n_theta; ++k) {
    double b;
    try {
      b = spectral_curvature(p, k * h).b_theta_phi;
    } catch (const DegeneracyError&) {
      ChernEstimate e;
      e.method = ChernMethod::spectral;
      e.set(ChernFlag::degenerate_encounter);
      if (monopole_count(p).has(ChernFlag::near_boundary)) e.set(ChernFlag::near_boundary);
      return e;
    }
    const double w = (k == 0 || k == n_theta - 1) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
    acc += w * b;
  }
  ChernEstimate e = ChernEstimate::of(acc * h / 3.0, ChernMethod::spectral);
  if (monopole_count(p).has(ChernFlag::near_boundary)) e.set(ChernFlag::near_boundary);
  return e;
}

}  // namespace berrysim
