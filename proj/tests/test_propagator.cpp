#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "berrysim/propagator.hpp"

using namespace berrysim;
using units::mhz_to_rad_per_ns;

namespace {

const double kHr = mhz_to_rad_per_ns(10.0);

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

TEST(Propagate, RecordShape) {
  const TrajectoryRecord r = propagate(meridian_ramp(kHr, 0.0, 600.0), StateVector::all_up(1));
  EXPECT_EQ(r.sample_times.size(), 50u);
  EXPECT_DOUBLE_EQ(r.sample_times.front(), 0.0);
  EXPECT_DOUBLE_EQ(r.sample_times.back(), 600.0);
  EXPECT_TRUE(r.has("sy_q1"));
  EXPECT_TRUE(r.has("sx_q1"));
  EXPECT_FALSE(r.has("sy_q2"));
  EXPECT_THROW(r.series("sy_q2"), ArgumentError);
  EXPECT_LE(r.norm_drift, 1e-9);
}

TEST(Propagate, TwoQubitRecordsBoth) {
  PropagateOptions o;
  o.record_xz = false;
  const TrajectoryRecord r = propagate(two_qubit_ramp(kHr, 0.0, 0.0, 500.0), StateVector::all_up(2), o);
  EXPECT_TRUE(r.has("sy_q1"));
  EXPECT_TRUE(r.has("sy_q2"));
  EXPECT_FALSE(r.has("sx_q1"));
  const auto &a = r.series("sy_q1"), &b = r.series("sy_q2");
  for (std::size_t j = 0; j < a.size(); ++j) EXPECT_NEAR(a[j], b[j], 1e-12);
}

TEST(Propagate, RejectsBadOptions) {
  const ControlSchedule s = meridian_ramp(kHr, 0.0, 600.0);
  PropagateOptions o;
  o.n_record = 1;
  EXPECT_THROW(propagate(s, StateVector::all_up(1), o), ArgumentError);
  EXPECT_THROW(propagate(s, StateVector::all_up(2)), ArgumentError);
}

// The deflection averaged over one Larmor period sits at v_theta / H_r for the whole
// ramp. Point samples carry an extra oscillation of the same size from the sudden start.
TEST(Propagate, DeflectionFollowsLinearResponse) {
  PropagateOptions o;
  o.n_record = 601;
  o.substeps = 8;
  const TrajectoryRecord r = propagate(meridian_ramp(kHr, 0.0, 600.0), StateVector::all_up(1), o);
  const double v = std::numbers::pi / 600.0;
  const double period = 2.0 * std::numbers::pi / kHr;  // 100 ns
  const auto& sy = r.series("sy_q1");
  for (double centre : {200.0, 300.0, 400.0}) {
    double sum = 0.0;
    int n = 0;
    for (std::size_t j = 0; j < sy.size(); ++j)
      if (std::abs(r.sample_times[j] - centre) < 0.5 * period - 1e-9) {
        sum += sy[j];
        ++n;
      }
    const double predicted = v / kHr;
    EXPECT_NEAR(sum / n, predicted, 0.1 * predicted) << "window at " << centre;
  }
  EXPECT_NEAR(v / kHr, 0.0833, 1e-4);
}

TEST(Propagate, InPlaneComponentsFollowField) {
  const TrajectoryRecord r = propagate(meridian_ramp(kHr, 0.0, 600.0), StateVector::all_up(1));
  const double v = std::numbers::pi / 600.0;
  double peak_y = 0.0;
  for (std::size_t j = 0; j < r.sample_times.size(); ++j) {
    const double th = v * r.sample_times[j];
    EXPECT_NEAR(r.series("sx_q1")[j], std::sin(th), 0.1);
    EXPECT_NEAR(r.series("sz_q1")[j], std::cos(th), 0.1);
    peak_y = std::max(peak_y, std::abs(r.series("sy_q1")[j]));
  }
  EXPECT_GT(peak_y, 0.5 * v / kHr);
  EXPECT_LT(peak_y, 3.0 * v / kHr);
}

TEST(Propagate, SecondOrderConvergence) {
  const ControlSchedule s = meridian_ramp(kHr, 0.0, 600.0);
  auto run = [&](int sub) {
    PropagateOptions o;
    o.substeps = sub;
    return propagate(s, StateVector::all_up(1), o).series("sy_q1");
  };
  const auto ref = run(512);
  const double e16 = max_abs_diff(run(16), ref), e32 = max_abs_diff(run(32), ref);
  EXPECT_NEAR(e16 / e32, 4.0, 0.4);
}

TEST(Propagate, StationaryHold) {
  ControlVector target;
  target.field[0] = {0.02, 0.03, 0.05};
  const ControlSchedule s = adiabatic_prep_schedule(target);
  StateVector psi = ground_state(hamiltonian(target, 1));
  const BlochVector b0 = bloch_vector(psi, 0);
  for (int k = 0; k < 10; ++k) {
    psi = evolve_midpoint(s, psi, 500.0 + 50.0 * k, 550.0 + 50.0 * k, 100);
    const BlochVector b = bloch_vector(psi, 0);
    EXPECT_NEAR(b.x, b0.x, 1e-9);
    EXPECT_NEAR(b.y, b0.y, 1e-9);
    EXPECT_NEAR(b.z, b0.z, 1e-9);
  }
}

TEST(Propagate, TimeReversalReturnsToStart) {
  const ControlSchedule s = meridian_ramp(kHr, 0.3 * kHr, 300.0);
  const int n = 3000;
  const double dt = 300.0 / n;
  StateVector psi = StateVector::all_up(1);
  for (int k = 0; k < n; ++k) psi = unitary_step(hamiltonian_at(s, (k + 0.5) * dt), dt) * psi;
  for (int k = n - 1; k >= 0; --k) psi = unitary_step(hamiltonian_at(s, (k + 0.5) * dt), dt).adjoint() * psi;
  EXPECT_NEAR(bloch_vector(psi, 0).z, 1.0, 1e-6);
}

TEST(GroundState, Examples) {
  EXPECT_NEAR(std::norm(ground_state(-0.5 * kHr * pauli('z', 0, 1))[0]), 1.0, 1e-15);

  ControlVector cv;
  cv.field[0] = cv.field[1] = {0.0, 0.0, kHr};
  cv.g = 0.5 * kHr;
  EXPECT_NEAR(std::norm(ground_state(hamiltonian(cv, 2))[0]), 1.0, 1e-12);

  cv.g = 1.5 * kHr;
  const StateVector singlet = ground_state(hamiltonian(cv, 2));
  const double sz = expectation(singlet, pauli('z', 0, 2)) + expectation(singlet, pauli('z', 1, 2));
  EXPECT_NEAR(sz, 0.0, 1e-12);
  EXPECT_NEAR(std::norm(singlet[1]) + std::norm(singlet[2]), 1.0, 1e-12);
}

TEST(GroundState, DegenerateThrows) {
  EXPECT_THROW(ground_state(hamiltonian(ControlVector{}, 1)), DegeneracyError);
}

TEST(AdiabaticPrepare, AlongZ) {
  ControlVector target;
  target.field[0] = {0.0, 0.0, kHr};
  const PreparedState p = adiabatic_prepare(target);
  EXPECT_NEAR(p.bloch[0].x, 0.0, 1e-6);
  EXPECT_NEAR(p.bloch[0].y, 0.0, 1e-6);
  EXPECT_NEAR(p.bloch[0].z, 1.0, 1e-6);
  EXPECT_FALSE(p.low_fidelity);
}

TEST(AdiabaticPrepare, AlongX) {
  ControlVector target;
  target.field[0] = {kHr, 0.0, 0.0};
  const PreparedState p = adiabatic_prepare(target);
  EXPECT_NEAR(p.bloch[0].x, 1.0, 0.05);
  EXPECT_LE(std::abs(p.bloch[0].y), 0.05);
  EXPECT_LE(std::abs(p.bloch[0].z), 0.05);
}

TEST(AdiabaticPrepare, ZeroFieldIsDegenerate) {
  const PreparedState p = adiabatic_prepare(ControlVector{});
  EXPECT_TRUE(p.degenerate);
  EXPECT_TRUE(p.low_fidelity);
}

TEST(AdiabaticPrepare, TwoQubitProductTarget) {
  ControlVector target;
  target.field[0] = target.field[1] = {0.5 * kHr, 0.0, 0.5 * kHr};
  const PreparedState p = adiabatic_prepare(target, 2);
  for (int q = 0; q < 2; ++q) {
    EXPECT_NEAR(p.bloch[q].x, std::sqrt(0.5), 0.05);
    EXPECT_NEAR(p.bloch[q].z, std::sqrt(0.5), 0.05);
  }
}
