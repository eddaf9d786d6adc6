#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "berrysim/runner.hpp"

using namespace berrysim;
using units::mhz_to_rad_per_ns;

namespace {

SweepSpec small_sphere() {
  SweepSpec s;
  s.name = "small";
  s.axis1 = mhz_axis(SweepParam::h0, 0.0, 20.0, 4);
  s.axis2 = mhz_axis(SweepParam::hr, 5.0, 15.0, 3);
  s.t_f = 600.0;
  s.substeps = 16;
  return s;
}

void expect_same(const PhaseDiagram& a, const PhaseDiagram& b) {
  ASSERT_EQ(a.cells.size(), b.cells.size());
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    EXPECT_EQ(a.cells[i].dynamical, b.cells[i].dynamical) << i;
    EXPECT_EQ(a.cells[i].spectral, b.cells[i].spectral) << i;
    EXPECT_EQ(a.cells[i].monopole, b.cells[i].monopole) << i;
    EXPECT_EQ(a.cells[i].flags, b.cells[i].flags) << i;
  }
}

}  // namespace

TEST(ShotNoise, CertainOutcome) {
  std::mt19937_64 rng(1);
  for (int k = 0; k < 100; ++k) {
    EXPECT_EQ(sample_observable(1.0, 300, rng), 1.0);
    EXPECT_EQ(sample_observable(-1.0, 300, rng), -1.0);
  }
}

TEST(ShotNoise, BinomialSpread) {
  std::mt19937_64 rng(2);
  const int trials = 10000, n = 300;
  double sum = 0.0, sq = 0.0;
  for (int k = 0; k < trials; ++k) {
    const double x = sample_observable(0.0, n, rng);
    sum += x;
    sq += x * x;
  }
  const double mean = sum / trials, sd = std::sqrt(sq / trials - mean * mean);
  EXPECT_NEAR(mean, 0.0, 0.005);
  EXPECT_NEAR(sd, 1.0 / std::sqrt(static_cast<double>(n)), 0.1 / std::sqrt(static_cast<double>(n)));
}

TEST(ShotNoise, RejectsBadInput) {
  std::mt19937_64 rng(3);
  EXPECT_THROW(sample_observable(1.5, 10, rng), ArgumentError);
  EXPECT_THROW(sample_observable(0.0, 0, rng), ArgumentError);
}

TEST(CellStream, PureFunctionOfSeedAndIndex) {
  auto a = cell_stream(7, 3), b = cell_stream(7, 3), c = cell_stream(7, 4), d = cell_stream(8, 3);
  const auto x = a();
  EXPECT_EQ(x, b());
  EXPECT_NE(x, c());
  EXPECT_NE(x, d());
}

TEST(SweepSpec, Validation) {
  SweepSpec s = small_sphere();
  EXPECT_NO_THROW(s.validate());
  s.axis2.param = SweepParam::h0;
  EXPECT_THROW(s.validate(), ValidationError);
  s = small_sphere();
  s.axis1.param = SweepParam::g;
  EXPECT_THROW(s.validate(), ValidationError);
  s = small_sphere();
  s.axis1.count = 1;
  EXPECT_THROW(s.validate(), ValidationError);
  s = small_sphere();
  s.shots = -1;
  EXPECT_THROW(s.validate(), ValidationError);
  s = small_sphere();
  s.t_f = 0.0;
  EXPECT_THROW(sweep(s), ValidationError);
}

TEST(SweepSpec, EnumNames) {
  EXPECT_EQ(parse_sweep_kind("two_qubit"), SweepKind::two_qubit);
  EXPECT_EQ(parse_sweep_param(to_string(SweepParam::hz)), SweepParam::hz);
  EXPECT_EQ(parse_tf_policy("target_adiabaticity"), TfPolicy::target_adiabaticity);
  EXPECT_EQ(parse_initial_state("all_up"), InitialState::all_up);
  EXPECT_THROW(parse_sweep_kind("cube"), ArgumentError);
}

TEST(Sweep, GridShapeAndOrder) {
  const PhaseDiagram pd = sweep(small_sphere(), 1);
  EXPECT_EQ(pd.cells.size(), 12u);
  EXPECT_EQ(pd.axis1_values.size(), 4u);
  EXPECT_DOUBLE_EQ(pd.cell(1, 2).axis1, pd.axis1_values[1]);
  EXPECT_DOUBLE_EQ(pd.cell(1, 2).axis2, pd.axis2_values[2]);
  // H_0 = 0 is inside every sphere.
  for (int j = 0; j < 3; ++j) EXPECT_EQ(pd.cell(0, j).monopole->rounded, 1);
  EXPECT_EQ(pd.cell(3, 0).monopole->rounded, 0);
}

TEST(Sweep, DeterministicAcrossWorkers) {
  SweepSpec s = small_sphere();
  s.shots = 300;
  s.seed = 42;
  const PhaseDiagram a = sweep(s, 1), b = sweep(s, 4), c = sweep(s, 4);
  expect_same(a, b);
  expect_same(b, c);
  s.seed = 43;
  const PhaseDiagram d = sweep(s, 2);
  bool differs = false;
  for (std::size_t i = 0; i < a.cells.size(); ++i) differs = differs || a.cells[i].dynamical != d.cells[i].dynamical;
  EXPECT_TRUE(differs);
}

TEST(Sweep, TargetAdiabaticityPolicy) {
  SweepSpec s = small_sphere();
  s.tf_policy = TfPolicy::target_adiabaticity;
  s.target_adiabaticity = 4.0;
  const PhaseDiagram pd = sweep(s, 2);
  for (const PhaseCell& c : pd.cells) {
    EXPECT_NEAR(c.t_f * c.axis2 / (2.0 * std::numbers::pi), 4.0, 1e-9);
    EXPECT_NEAR(*c.dynamical->adiabaticity, 4.0, 1e-9);
  }
}

TEST(Sweep, EllipseCounts) {
  SweepSpec s;
  s.kind = SweepKind::ellipse;
  s.axis1 = mhz_axis(SweepParam::hx, 5.0, 15.0, 2);
  s.axis2 = mhz_axis(SweepParam::hz, 5.0, 15.0, 2);
  s.methods = {ChernMethod::monopole_count, ChernMethod::spectral};
  const PhaseDiagram pd = sweep(s, 1);
  for (const PhaseCell& c : pd.cells) {
    EXPECT_EQ(c.monopole->rounded, 1);
    EXPECT_FALSE(c.dynamical.has_value());
  }
}

TEST(Plateau, InteriorOnly) {
  const PhaseDiagram pd = sweep(small_sphere(), 0);
  const PlateauScore s = plateau_score(pd);
  EXPECT_GT(s.checked, 0);
  EXPECT_LT(s.checked, static_cast<int>(pd.cells.size()));
  EXPECT_EQ(s.matched, s.checked);
}

TEST(Presets, Names) {
  EXPECT_EQ(preset_names().size(), 8u);
  EXPECT_THROW(run_preset("fig9"), ArgumentError);
}

TEST(Presets, Fig2) {
  const PresetResult r = run_fig2();
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.tables.at(0).rows.size(), 50u);
}

TEST(Presets, MonopolePointsAgree) {
  const PresetResult r = run_fig4a_monopoles();
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.tables.at(0).rows.size(), 6u);
}

TEST(Presets, BandsSummary) {
  const PresetResult r = run_figS3_bands();
  ASSERT_EQ(r.summary.size(), 4u);
  EXPECT_EQ(r.summary[0].second, "gapless");
  EXPECT_EQ(r.summary[1].second, "2");
  EXPECT_EQ(r.summary[2].second, "0");
  EXPECT_EQ(r.summary[3].second, "1");
  EXPECT_EQ(r.tables.at(0).rows.size(), 4u * 121);
}
