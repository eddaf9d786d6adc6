#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "berrysim/berry.hpp"
#include "berrysim/controls.hpp"
#include "berrysim/units.hpp"
#include "oracles.hpp"

using namespace berrysim;
using units::mhz_to_rad_per_ns;

namespace {

const double kHr = mhz_to_rad_per_ns(10.0);

void expect_vec(const Vec3& v, double x, double y, double z, double tol = 1e-12) {
  EXPECT_NEAR(v.x, x, tol);
  EXPECT_NEAR(v.y, y, tol);
  EXPECT_NEAR(v.z, z, tol);
}

}  // namespace

TEST(Units, RoundTripTo12Digits) {
  for (double mhz : {0.0, 1e-3, 0.5, 10.0, 123.456789, 1e4}) {
    const double back = units::rad_per_ns_to_mhz(mhz_to_rad_per_ns(mhz));
    EXPECT_LE(std::abs(back - mhz), 1e-12 * std::max(1.0, std::abs(mhz)));
  }
  EXPECT_NEAR(mhz_to_rad_per_ns(10.0), 2.0 * std::numbers::pi * 0.01, 1e-15);
}

TEST(MeridianRamp, Endpoints) {
  const ControlSchedule s = meridian_ramp(kHr, 0.0, 600.0);
  expect_vec(s.at(0.0).field[0], 0, 0, kHr);
  expect_vec(s.at(300.0).field[0], kHr, 0, 0);
  EXPECT_DOUBLE_EQ(s.theta_at(600.0), std::numbers::pi);
  EXPECT_DOUBLE_EQ(s.v_theta(), std::numbers::pi / 600.0);
}

TEST(MeridianRamp, OffsetNeverEnclosesOrigin) {
  const double h0 = mhz_to_rad_per_ns(12.0);
  const ControlSchedule s = meridian_ramp(kHr, h0, 600.0);
  EXPECT_NEAR(s.at(600.0).field[0].z, h0 - kHr, 1e-12);
  for (int k = 0; k <= 100; ++k) EXPECT_GT(s.at(6.0 * k).field[0].z, 0.0);
}

TEST(MeridianRamp, ConstantRadius) {
  const double h0 = mhz_to_rad_per_ns(3.0);
  const ControlSchedule s = meridian_ramp(kHr, h0, 777.0, 0.4);
  for (int k = 0; k <= 200; ++k) {
    const Vec3 f = s.at(777.0 * k / 200).field[0];
    EXPECT_NEAR(std::sqrt(f.x * f.x + f.y * f.y + (f.z - h0) * (f.z - h0)), kHr, 1e-12 * kHr);
  }
}

TEST(MeridianRamp, RejectsDegenerateManifold) {
  EXPECT_THROW(meridian_ramp(0.0, 0.0, 100.0), ValidationError);
  EXPECT_THROW(meridian_ramp(-1.0, 0.0, 100.0), ValidationError);
  EXPECT_THROW(meridian_ramp(1.0, 0.0, 0.0), ValidationError);
}

TEST(MeridianRamp, OutOfWindowTime) {
  const ControlSchedule s = meridian_ramp(kHr, 0.0, 100.0);
  EXPECT_THROW(s.at(-1.0), ArgumentError);
  EXPECT_THROW(s.at(101.0), ArgumentError);
}

TEST(EllipticRamp, CircleMatchesMeridian) {
  const ControlSchedule e = elliptic_ramp(kHr, kHr, 500.0), m = meridian_ramp(kHr, 0.0, 500.0);
  for (int k = 0; k <= 50; ++k) EXPECT_EQ(e.at(10.0 * k), m.at(10.0 * k));
}

TEST(EllipticRamp, StartAndAdiabaticity) {
  const ControlSchedule e = elliptic_ramp(kHr, kHr, 400.0);
  expect_vec(e.at(0.0).field[0], 0, 0, kHr);
  EXPECT_NEAR(adiabaticity_measure(e), 4.0 * std::sqrt(2.0), 1e-12);
  EXPECT_THROW(elliptic_ramp(kHr, 0.0, 400.0), ValidationError);
}

TEST(TwoQubitRamp, DecoupledLimitIsTwoCopies) {
  const ControlSchedule t = two_qubit_ramp(kHr, 0.0, 0.0, 800.0), m = meridian_ramp(kHr, 0.0, 800.0);
  for (int k = 0; k <= 40; ++k) {
    const ControlVector a = t.at(20.0 * k), b = m.at(20.0 * k);
    EXPECT_EQ(a.field[0], b.field[0]);
    EXPECT_EQ(a.field[1], b.field[0]);
    EXPECT_EQ(a.g, 0.0);
  }
}

TEST(TwoQubitRamp, Endpoints) {
  const double h0 = mhz_to_rad_per_ns(6.0), g = mhz_to_rad_per_ns(4.0);
  const ControlSchedule s = two_qubit_ramp(kHr, h0, g, 1000.0);
  const ControlVector a = s.at(0.0);
  expect_vec(a.field[0], 0, 0, h0 + kHr);
  expect_vec(a.field[1], 0, 0, kHr);
  EXPECT_EQ(a.g, g);
  EXPECT_NEAR(s.at(1000.0).field[0].z, h0 - kHr, 1e-12);
  EXPECT_EQ(s.at(1000.0).g, g);
}

TEST(AdiabaticPrep, LinearRampAndHold) {
  ControlVector target;
  target.field[0] = {0.3, -0.2, 0.5};
  const ControlSchedule s = adiabatic_prep_schedule(target);
  EXPECT_DOUBLE_EQ(s.total_time(), 1000.0);
  expect_vec(s.at(250.0).field[0], 0.15, -0.1, 0.25, 1e-15);
  for (double t : {500.0, 700.0, 1000.0}) EXPECT_EQ(s.at(t), target);
}

TEST(AdiabaticPrep, RotateApproachEndsAtTarget) {
  ControlVector target;
  target.field[0] = {kHr, 0.0, 0.0};
  const ControlSchedule s = adiabatic_prep_schedule(target, 1, 500.0, 500.0, PrepApproach::rotate);
  expect_vec(s.at(500.0).field[0], kHr, 0, 0);
  expect_vec(s.at(0.0).field[0], 0, 0, kHr);
  EXPECT_THROW(adiabaticity_measure(s), UnsupportedError);
}

TEST(Hamiltonian, SingleQubitAtStart) {
  const double h0 = 0.2;
  const HermitianOperator h = hamiltonian_at(meridian_ramp(kHr, h0, 100.0), 0.0);
  EXPECT_NEAR(h(0, 0).real(), -0.5 * (h0 + kHr), 1e-15);
  EXPECT_NEAR(h(1, 1).real(), 0.5 * (h0 + kHr), 1e-15);
  EXPECT_EQ(h(0, 1), Complex(0, 0));
}

TEST(Hamiltonian, TwoQubitBlocks) {
  ControlVector cv;
  cv.field[0] = {0.0, 0.0, 1.5};
  cv.field[1] = {0.0, 0.0, 1.0};
  cv.g = 0.7;
  const HermitianOperator h = hamiltonian(cv, 2);
  EXPECT_NEAR(h(0, 0).real(), -1.25, 1e-15);
  EXPECT_NEAR(h(1, 1).real(), -0.25, 1e-15);
  EXPECT_NEAR(h(2, 2).real(), 0.25, 1e-15);
  EXPECT_NEAR(h(3, 3).real(), 1.25, 1e-15);
  EXPECT_EQ(h(1, 2), Complex(0.7, 0));
  EXPECT_EQ(h(2, 1), Complex(0.7, 0));
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      if (r != c && !((r == 1 && c == 2) || (r == 2 && c == 1))) EXPECT_EQ(h(r, c), Complex(0, 0));
}

TEST(Hamiltonian, TransverseTermsMatchPauliSum) {
  ControlVector cv;
  cv.field[0] = {0.3, -0.4, 0.2};
  cv.field[1] = {-0.1, 0.5, 0.6};
  cv.g = 0.25;
  HermitianOperator expect = -0.5 * (0.3 * pauli('x', 0, 2) - 0.4 * pauli('y', 0, 2) + 0.2 * pauli('z', 0, 2) -
                                      0.1 * pauli('x', 1, 2) + 0.5 * pauli('y', 1, 2) + 0.6 * pauli('z', 1, 2));
  const Matrix xx = Matrix(4, {0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 0});
  const Matrix yy = Matrix(4, {0, 0, 0, -1, 0, 0, 1, 0, 0, 1, 0, 0, -1, 0, 0, 0});
  expect = expect + HermitianOperator((xx + yy) * Complex(0.5 * cv.g, 0));
  const HermitianOperator h = hamiltonian(cv, 2);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) EXPECT_NEAR(std::abs(h(r, c) - expect(r, c)), 0.0, 1e-15);
}

TEST(Hamiltonian, HermitianAndPureAcrossRandomSchedules) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const double hr = 0.01 + u(rng), h0 = u(rng) - 0.5, g = u(rng), tf = 10 + 1000 * u(rng);
    const ControlSchedule s = trial % 3 == 0   ? meridian_ramp(hr, h0, tf, 6 * u(rng))
                              : trial % 3 == 1 ? two_qubit_ramp(hr, h0, g, tf)
                                               : elliptic_ramp(hr, 0.01 + u(rng), tf);
    const double t = tf * u(rng);
    EXPECT_NO_THROW(hamiltonian_at(s, t));
    EXPECT_EQ(s.at(t), s.at(t));
  }
}

TEST(Adiabaticity, MeasureExamples) {
  EXPECT_NEAR(adiabaticity_measure(meridian_ramp(kHr, 0.0, 600.0)), 6.0, 1e-12);
  EXPECT_NEAR(adiabaticity_measure(meridian_ramp(kHr, 0.0, 100.0)), 1.0, 1e-12);
}

TEST(InitialState, GroundCheck) {
  EXPECT_TRUE(initial_state_is_ground(meridian_ramp(kHr, 0.0, 100.0)));
  // H_0 pushes the field below zero at t = 0.
  EXPECT_FALSE(initial_state_is_ground(meridian_ramp(kHr, -2.0 * kHr, 100.0)));
  EXPECT_TRUE(initial_state_is_ground(two_qubit_ramp(kHr, 0.0, 0.5 * kHr, 100.0)));
  EXPECT_FALSE(initial_state_is_ground(two_qubit_ramp(kHr, 0.0, 1.5 * kHr, 100.0)));
}
