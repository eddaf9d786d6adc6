#pragma once

// Pulse schedules for the single- and two-qubit ramps and the instantaneous Hamiltonian
//   H = -1/2 sum_q H_q . sigma_q + g/2 (sx sx + sy sy)
// All fields are angular frequencies in rad/ns, times in ns.

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "berrysim/qcore.hpp"
#include "berrysim/units.hpp"

namespace berrysim {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  double norm() const noexcept { return std::sqrt(x * x + y * y + z * z); }
  double dot(const Vec3& o) const noexcept { return x * o.x + y * o.y + z * o.z; }
  Vec3 cross(const Vec3& o) const noexcept { return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x}; }
  bool finite() const noexcept { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }

  friend Vec3 operator+(Vec3 a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(Vec3 a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
  friend bool operator==(const Vec3&, const Vec3&) = default;
};

// Per-qubit (H_X, H_Y, H_Z) plus the XY coupling g. Qubit 2 is ignored for one-qubit schedules.
struct ControlVector {
  std::array<Vec3, 2> field{};
  double g = 0.0;

  bool finite() const noexcept { return field[0].finite() && field[1].finite() && std::isfinite(g); }
  friend bool operator==(const ControlVector&, const ControlVector&) = default;
};

enum class ScheduleKind { meridian, elliptic, two_qubit, adiabatic_prep };

inline std::string to_string(ScheduleKind k) {
  switch (k) {
    case ScheduleKind::meridian: return "meridian";
    case ScheduleKind::elliptic: return "elliptic";
    case ScheduleKind::two_qubit: return "two_qubit";
    case ScheduleKind::adiabatic_prep: return "adiabatic_prep";
  }
  return "unknown";
}

// How an adiabatic-preparation schedule leaves its starting point.
//   linear: every component ramps linearly from zero to the target.
//   rotate: the field starts along +z, turns smoothly onto the target direction at
//           constant magnitude, then relaxes to the target magnitude.
enum class PrepApproach { linear, rotate };

struct ScheduleParams {
  double h_r = 0.0;
  double h_0 = 0.0;
  double g = 0.0;
  double h_x_max = 0.0;
  double h_z_max = 0.0;
  double phi_plane = 0.0;
};

class ControlSchedule {
 public:
  int n_qubits() const noexcept { return n_qubits_; }
  ScheduleKind kind() const noexcept { return kind_; }
  // Ramp duration; for adiabatic_prep this is the ramp segment only.
  double t_f() const noexcept { return t_f_; }
  double total_time() const noexcept { return kind_ == ScheduleKind::adiabatic_prep ? t_f_ + t_hold_ : t_f_; }
  double hold_time() const noexcept { return t_hold_; }
  const ScheduleParams& params() const noexcept { return p_; }
  const ControlVector& target() const noexcept { return target_; }
  PrepApproach approach() const noexcept { return approach_; }
  double min_field() const noexcept { return min_field_; }

  // Transverse amplitude that multiplies the sine profile: H_r, or H_X for ellipses.
  double transverse_amplitude() const noexcept {
    return kind_ == ScheduleKind::elliptic ? p_.h_x_max : p_.h_r;
  }

  // Polar angle along the ramp, theta = pi t / T_f.
  double theta_at(double t) const noexcept { return std::numbers::pi * t / t_f_; }
  double v_theta() const noexcept { return std::numbers::pi / t_f_; }

  ControlVector at(double t) const {
    const double total = total_time();
    if (!(t >= -1e-9 * total && t <= total * (1.0 + 1e-12))) throw ArgumentError("time outside schedule window");
    t = std::clamp(t, 0.0, total);
    ControlVector cv;
    const double cphi = std::cos(p_.phi_plane), sphi = std::sin(p_.phi_plane);
    switch (kind_) {
      case ScheduleKind::meridian: {
        const double th = theta_at(t);
        const double sx = p_.h_r * std::sin(th);
        cv.field[0] = {sx * cphi, sx * sphi, p_.h_0 + p_.h_r * std::cos(th)};
        break;
      }
      case ScheduleKind::elliptic: {
        const double th = theta_at(t);
        const double sx = p_.h_x_max * std::sin(th);
        cv.field[0] = {sx * cphi, sx * sphi, p_.h_z_max * std::cos(th)};
        break;
      }
      case ScheduleKind::two_qubit: {
        const double th = theta_at(t);
        const double sx = p_.h_r * std::sin(th);
        const double cz = p_.h_r * std::cos(th);
        cv.field[0] = {sx * cphi, sx * sphi, p_.h_0 + cz};
        cv.field[1] = {sx * cphi, sx * sphi, cz};
        cv.g = p_.g;
        break;
      }
      case ScheduleKind::adiabatic_prep:
        cv = prep_at(t);
        break;
    }
    return cv;
  }

  friend ControlSchedule meridian_ramp(double h_r, double h_0, double t_f, double phi_plane);
  friend ControlSchedule elliptic_ramp(double h_x_max, double h_z_max, double t_f, double phi_plane);
  friend ControlSchedule two_qubit_ramp(double h_r, double h_0, double g, double t_f, double phi_plane);
  friend ControlSchedule adiabatic_prep_schedule(const ControlVector& target, int n_qubits, double t_ramp,
                                                 double t_hold, PrepApproach approach, double min_field);

 private:
  ControlSchedule() = default;

  static double smoothstep(double x) { return 0.5 * (1.0 - std::cos(std::numbers::pi * std::clamp(x, 0.0, 1.0))); }

  ControlVector prep_at(double t) const {
    const double u = std::min(t / t_f_, 1.0);
    ControlVector cv;
    if (approach_ == PrepApproach::linear) {
      for (int q = 0; q < 2; ++q) cv.field[q] = u * target_.field[q];
      cv.g = u * target_.g;
      return cv;
    }
    const double turn = smoothstep(2.0 * u);
    const double relax = smoothstep(2.0 * u - 1.0);
    for (int q = 0; q < n_qubits_; ++q) {
      const Vec3& tgt = target_.field[q];
      const double m_target = tgt.norm();
      const double m_turn = std::max(m_target, min_field_);
      Vec3 dir{0.0, 0.0, 1.0};
      if (m_target > 0.0) {
        const Vec3 n = (1.0 / m_target) * tgt;
        const double angle = std::acos(std::clamp(n.z, -1.0, 1.0));
        Vec3 w{n.x, n.y, 0.0};
        const double wn = w.norm();
        w = wn > 1e-12 ? (1.0 / wn) * w : Vec3{std::cos(p_.phi_plane), std::sin(p_.phi_plane), 0.0};
        const double a = turn * angle;
        dir = Vec3{std::sin(a) * w.x, std::sin(a) * w.y, std::cos(a)};
      }
      const double mag = m_turn + (m_target - m_turn) * relax;
      cv.field[q] = mag * dir;
    }
    cv.g = u * target_.g;
    return cv;
  }

  int n_qubits_ = 1;
  ScheduleKind kind_ = ScheduleKind::meridian;
  double t_f_ = 1.0;
  double t_hold_ = 0.0;
  ScheduleParams p_{};
  ControlVector target_{};
  PrepApproach approach_ = PrepApproach::linear;
  double min_field_ = 0.0;
};

namespace detail {

inline void require_ramp(double h_r, double t_f) {
  if (!std::isfinite(h_r) || !std::isfinite(t_f)) throw ValidationError("ramp parameters must be finite");
  if (!(h_r > 0.0)) throw ValidationError("degenerate manifold: field radius must be positive");
  if (!(t_f > 0.0)) throw ValidationError("ramp time must be positive");
}

}  // namespace detail

// H_X = H_r sin(pi t/T_f), H_Z = H_0 + H_r cos(pi t/T_f) on the phi_plane meridian.
inline ControlSchedule meridian_ramp(double h_r, double h_0, double t_f, double phi_plane = 0.0) {
  detail::require_ramp(h_r, t_f);
  if (!std::isfinite(h_0)) throw ValidationError("H_0 must be finite");
  ControlSchedule s;
  s.n_qubits_ = 1;
  s.kind_ = ScheduleKind::meridian;
  s.t_f_ = t_f;
  s.p_ = {.h_r = h_r, .h_0 = h_0, .g = 0.0, .h_x_max = h_r, .h_z_max = h_r, .phi_plane = phi_plane};
  return s;
}

inline ControlSchedule elliptic_ramp(double h_x_max, double h_z_max, double t_f, double phi_plane = 0.0) {
  detail::require_ramp(h_x_max, t_f);
  if (!(h_z_max > 0.0) || !std::isfinite(h_z_max)) throw ValidationError("degenerate manifold: H_Z amplitude must be positive");
  ControlSchedule s;
  s.n_qubits_ = 1;
  s.kind_ = ScheduleKind::elliptic;
  s.t_f_ = t_f;
  s.p_ = {.h_r = 0.0, .h_0 = 0.0, .g = 0.0, .h_x_max = h_x_max, .h_z_max = h_z_max, .phi_plane = phi_plane};
  return s;
}

// Both qubits ride the sphere of radius H_r; qubit 1 carries the H_0 offset; g is a
// rectangular pulse over the whole window.
inline ControlSchedule two_qubit_ramp(double h_r, double h_0, double g, double t_f, double phi_plane = 0.0) {
  detail::require_ramp(h_r, t_f);
  if (!std::isfinite(h_0) || !std::isfinite(g)) throw ValidationError("H_0 and g must be finite");
  ControlSchedule s;
  s.n_qubits_ = 2;
  s.kind_ = ScheduleKind::two_qubit;
  s.t_f_ = t_f;
  s.p_ = {.h_r = h_r, .h_0 = h_0, .g = g, .h_x_max = h_r, .h_z_max = h_r, .phi_plane = phi_plane};
  return s;
}

inline ControlSchedule adiabatic_prep_schedule(const ControlVector& target, int n_qubits = 1, double t_ramp = 500.0,
                                               double t_hold = 500.0, PrepApproach approach = PrepApproach::linear,
                                               double min_field = units::mhz_to_rad_per_ns(10.0)) {
  if (!target.finite()) throw ValidationError("target control vector must be finite");
  if (n_qubits != 1 && n_qubits != 2) throw ArgumentError("n_qubits must be 1 or 2");
  if (!(t_ramp > 0.0) || !(t_hold > 0.0)) throw ValidationError("ramp and hold times must be positive");
  ControlSchedule s;
  s.n_qubits_ = n_qubits;
  s.kind_ = ScheduleKind::adiabatic_prep;
  s.t_f_ = t_ramp;
  s.t_hold_ = t_hold;
  s.target_ = target;
  s.approach_ = approach;
  s.min_field_ = min_field;
  return s;
}

// Hamiltonian for an explicit control vector.
inline HermitianOperator hamiltonian(const ControlVector& cv, int n_qubits) {
  const Complex i{0.0, 1.0};
  if (n_qubits == 1) {
    const Vec3& f = cv.field[0];
    return HermitianOperator(Matrix(2, {-0.5 * f.z, -0.5 * (f.x - i * f.y), -0.5 * (f.x + i * f.y), 0.5 * f.z}));
  }
  if (n_qubits != 2) throw ArgumentError("n_qubits must be 1 or 2");
  Matrix m(4);
  const Vec3& a = cv.field[0];
  const Vec3& b = cv.field[1];
  // index = 2*b1 + b2, b = 0 for up
  for (int b1 = 0; b1 < 2; ++b1)
    for (int b2 = 0; b2 < 2; ++b2) {
      const int k = 2 * b1 + b2;
      m(k, k) = -0.5 * ((b1 == 0 ? a.z : -a.z) + (b2 == 0 ? b.z : -b.z));
    }
  for (int b2 = 0; b2 < 2; ++b2) {
    m(b2, 2 + b2) = -0.5 * (a.x - i * a.y);
    m(2 + b2, b2) = -0.5 * (a.x + i * a.y);
  }
  for (int b1 = 0; b1 < 2; ++b1) {
    m(2 * b1, 2 * b1 + 1) = -0.5 * (b.x - i * b.y);
    m(2 * b1 + 1, 2 * b1) = -0.5 * (b.x + i * b.y);
  }
  m(1, 2) = cv.g;
  m(2, 1) = cv.g;
  return HermitianOperator(m);
}

inline HermitianOperator hamiltonian_at(const ControlSchedule& s, double t) { return hamiltonian(s.at(t), s.n_qubits()); }

// A = T_f H_r / 2pi for spheres and T_f sqrt(H_X^2 + H_Z^2) / 2pi for ellipses.
inline double adiabaticity_measure(const ControlSchedule& s) {
  switch (s.kind()) {
    case ScheduleKind::meridian:
    case ScheduleKind::two_qubit:
      return s.t_f() * s.params().h_r / units::kTwoPi;
    case ScheduleKind::elliptic:
      return s.t_f() * std::hypot(s.params().h_x_max, s.params().h_z_max) / units::kTwoPi;
    case ScheduleKind::adiabatic_prep:
      break;
  }
  throw UnsupportedError("adiabaticity measure is undefined for adiabatic preparation schedules");
}

// True when |up...up> is the non-degenerate ground state of H(0). Ramps starting
// elsewhere are flagged, not rejected.
inline bool initial_state_is_ground(const ControlSchedule& s) {
  const HermitianOperator h = hamiltonian_at(s, 0.0);
  const SpectralDecomposition sd = eigh(h);
  if (sd.eigenvalues[1] - sd.eigenvalues[0] <= degeneracy_tolerance(h)) return false;
  return std::norm(sd.vector(0)[0]) > 1.0 - 1e-9;
}

}  // namespace berrysim
