#pragma once

// Time-dependent Schroedinger integration along a ControlSchedule.
//
// The integrator is the midpoint exponential (first Magnus term evaluated at the step
// midpoint): psi <- exp(-i H(t + dt/2) dt) psi. It is exactly unitary and second-order
// accurate in dt.

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "berrysim/controls.hpp"
#include "berrysim/qcore.hpp"

namespace berrysim {

struct BlochVector {
  double x = 0.0, y = 0.0, z = 0.0;

  double norm() const noexcept { return std::sqrt(x * x + y * y + z * z); }
  double dot(const BlochVector& o) const noexcept { return x * o.x + y * o.y + z * o.z; }
  BlochVector normalized() const {
    const double n = norm();
    if (n == 0.0) throw DegeneracyError("cannot normalize a zero Bloch vector", 0.0);
    return {x / n, y / n, z / n};
  }
};

// Single-qubit reduced Bloch vector of `qubit` (0-based).
inline BlochVector bloch_vector(const StateVector& psi, int qubit) {
  const int n = psi.dim() == 2 ? 1 : 2;
  return {expectation(psi, pauli(Axis::x, qubit, n)), expectation(psi, pauli(Axis::y, qubit, n)),
          expectation(psi, pauli(Axis::z, qubit, n))};
}

inline StateVector ground_state(const HermitianOperator& h) {
  const SpectralDecomposition sd = eigh(h);
  const double gap = sd.eigenvalues[1] - sd.eigenvalues[0];
  if (gap <= degeneracy_tolerance(h)) throw DegeneracyError("ground state is degenerate", gap);
  return sd.vector(0);
}

struct TrajectoryRecord {
  ControlSchedule schedule;
  std::vector<double> sample_times;
  // Keys: sy_q1, sy_q2 (always), sx_q*, sz_q* (optional). Values in [-1, 1].
  std::map<std::string, std::vector<double>> observables;
  std::vector<StateVector> states;
  int substeps_per_sample = 0;
  double norm_drift = 0.0;  // max |<psi|psi> - 1| over the recorded samples

  const std::vector<double>& series(const std::string& name) const {
    auto it = observables.find(name);
    if (it == observables.end()) throw ArgumentError("trajectory has no observable '" + name + "'");
    return it->second;
  }
  bool has(const std::string& name) const { return observables.count(name) != 0; }
};

struct PropagateOptions {
  int n_record = 50;
  int substeps = 64;
  bool record_xz = true;
  bool record_states = false;
};

// Advances psi from t0 to t1 in n equal midpoint steps.
inline StateVector evolve_midpoint(const ControlSchedule& s, StateVector psi, double t0, double t1, int n) {
  const double dt = (t1 - t0) / n;
  for (int k = 0; k < n; ++k) psi = unitary_step(hamiltonian_at(s, t0 + (k + 0.5) * dt), dt) * psi;
  return psi;
}

inline TrajectoryRecord propagate(const ControlSchedule& s, const StateVector& psi0, const PropagateOptions& opt = {}) {
  const int nq = s.n_qubits();
  if (psi0.dim() != (nq == 1 ? 2 : 4)) throw ArgumentError("initial state dimension does not match the schedule");
  if (opt.n_record < 2) throw ArgumentError("n_record must be at least 2");
  if (opt.substeps < 1) throw ArgumentError("substeps must be at least 1");

  TrajectoryRecord rec{s, {}, {}, {}, opt.substeps, 0.0};
  const double total = s.total_time();
  const double spacing = total / (opt.n_record - 1);

  std::vector<std::pair<std::string, HermitianOperator>> probes;
  for (int q = 0; q < nq; ++q) {
    const std::string tag = "_q" + std::to_string(q + 1);
    probes.emplace_back("sy" + tag, pauli(Axis::y, q, nq));
    if (opt.record_xz) {
      probes.emplace_back("sx" + tag, pauli(Axis::x, q, nq));
      probes.emplace_back("sz" + tag, pauli(Axis::z, q, nq));
    }
  }
  for (auto& [name, op] : probes) rec.observables[name].reserve(opt.n_record);
  rec.sample_times.reserve(opt.n_record);

  StateVector psi = psi0;
  for (int j = 0; j < opt.n_record; ++j) {
    const double t = j == opt.n_record - 1 ? total : j * spacing;
    if (j > 0) psi = evolve_midpoint(s, psi, (j - 1) * spacing, t, opt.substeps);
    rec.sample_times.push_back(t);
    for (auto& [name, op] : probes) rec.observables[name].push_back(std::clamp(expectation(psi, op), -1.0, 1.0));
    if (opt.record_states) rec.states.push_back(psi);
    rec.norm_drift = std::max(rec.norm_drift, std::abs(psi.norm_squared() - 1.0));
  }
  return rec;
}

struct PreparedState {
  int n_qubits = 1;
  std::array<BlochVector, 2> bloch{};   // hold-window averages
  std::array<BlochVector, 2> ground{};  // instantaneous ground-state Bloch vectors at the target
  double fidelity = 1.0;                // min over qubits of the overlap with the ground Bloch vector
  bool low_fidelity = false;
  bool degenerate = false;
};

struct PrepareOptions {
  int n_hold_samples = 100;
  double t_ramp = 500.0;
  double t_hold = 500.0;
  PrepApproach approach = PrepApproach::rotate;
  double min_field = units::mhz_to_rad_per_ns(10.0);
  double max_dt = 0.25;
};

// Ramps from |up...up> to `target`, holds, and averages the per-qubit Bloch vectors at
// n_hold_samples points spread uniformly over the hold window.
inline PreparedState adiabatic_prepare(const ControlVector& target, int n_qubits = 1, const PrepareOptions& opt = {}) {
  if (opt.n_hold_samples < 1) throw ArgumentError("n_hold_samples must be positive");
  const ControlSchedule s =
      adiabatic_prep_schedule(target, n_qubits, opt.t_ramp, opt.t_hold, opt.approach, opt.min_field);
  PreparedState out;
  out.n_qubits = n_qubits;

  const HermitianOperator h_target = hamiltonian(target, n_qubits);
  try {
    const StateVector g = ground_state(h_target);
    for (int q = 0; q < n_qubits; ++q) out.ground[q] = bloch_vector(g, q);
  } catch (const DegeneracyError&) {
    out.degenerate = true;
  }

  StateVector psi = StateVector::all_up(n_qubits);
  psi = evolve_midpoint(s, psi, 0.0, opt.t_ramp, std::max(1, static_cast<int>(std::ceil(opt.t_ramp / opt.max_dt))));
  const int n = opt.n_hold_samples;
  const double spacing = n > 1 ? opt.t_hold / (n - 1) : 0.0;
  const int sub = spacing > 0.0 ? std::max(1, static_cast<int>(std::ceil(spacing / opt.max_dt))) : 1;
  std::array<BlochVector, 2> sum{};
  for (int j = 0; j < n; ++j) {
    const double t = opt.t_ramp + j * spacing;
    if (j > 0) psi = evolve_midpoint(s, psi, t - spacing, t, sub);
    for (int q = 0; q < n_qubits; ++q) {
      const BlochVector b = bloch_vector(psi, q);
      sum[q].x += b.x;
      sum[q].y += b.y;
      sum[q].z += b.z;
    }
  }
  for (int q = 0; q < n_qubits; ++q) out.bloch[q] = {sum[q].x / n, sum[q].y / n, sum[q].z / n};

  if (out.degenerate) {
    out.fidelity = 0.0;
    out.low_fidelity = true;
    return out;
  }
  out.fidelity = 1.0;
  for (int q = 0; q < n_qubits; ++q) {
    const BlochVector& a = out.bloch[q];
    const BlochVector& g = out.ground[q];
    double f;
    if (n_qubits == 1) {
      f = a.norm() > 0.0 ? a.dot(g) / (a.norm() * g.norm()) : 0.0;
    } else {
      const BlochVector d{a.x - g.x, a.y - g.y, a.z - g.z};
      f = 1.0 - d.norm();
    }
    out.fidelity = std::min(out.fidelity, f);
  }
  out.low_fidelity = out.fidelity < 0.99;
  return out;
}

}  // namespace berrysim
