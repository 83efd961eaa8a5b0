#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qcst/curvature.hpp"
#include "qcst/error.hpp"
#include "qcst/fd_oracle.hpp"
#include "qcst/fluid.hpp"
#include "qcst/metric.hpp"
#include "qcst/qc.hpp"

using namespace qcst;

TEST(FluidFromQc, Examples) {
  const FluidState dust = fluid_from_qc(2.0, 3.0, 1.0);
  EXPECT_NEAR(dust.p, 0.0, 1e-15);
  EXPECT_EQ(dust.era, Era::Dust);

  const FluidState q = fluid_from_qc(4.0, 2.0, 1.0);
  EXPECT_DOUBLE_EQ(q.p, -8.0);
  EXPECT_DOUBLE_EQ(q.sigma, 12.0);
  ASSERT_TRUE(q.w);
  EXPECT_NEAR(*q.w, -2.0 / 3.0, 1e-15);
  EXPECT_EQ(q.era, Era::Quintessence);

  const FluidState b = fluid_from_qc(1.0, 1.0, 1.0);
  EXPECT_DOUBLE_EQ(b.p, -1.0);
  EXPECT_DOUBLE_EQ(b.sigma, 3.0);
  EXPECT_EQ(b.era, Era::AcceleratingBoundary);

  const FluidState k2 = fluid_from_qc(4.0, 2.0, 2.0);
  EXPECT_DOUBLE_EQ(k2.p, -2.0);
  EXPECT_DOUBLE_EQ(k2.sigma, 3.0);
}

TEST(FluidFromQc, RejectsKappa) {
  for (double k : {0.0, -1.0}) {
    try {
      fluid_from_qc(1.0, 1.0, k);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::NonPositiveKappa);
    }
  }
}

TEST(ClassifyEra, Examples) {
  EXPECT_EQ(classify_era(2.0, 2.0), Era::Stiff);
  EXPECT_EQ(classify_era(-2.0, 2.0), Era::DarkMatter);
  EXPECT_EQ(classify_era(1.0, 3.0), Era::Radiation);
  EXPECT_EQ(classify_era(0.0, 0.0), Era::Vacuum);
  EXPECT_EQ(classify_era(0.0, 5.0), Era::Dust);
  EXPECT_EQ(classify_era(-3.0, 2.0), Era::Phantom);
  EXPECT_EQ(classify_era(-1.0, 3.0), Era::AcceleratingBoundary);
  EXPECT_EQ(classify_era(-1.5, 3.0), Era::Quintessence);
  EXPECT_EQ(classify_era(-0.5, 3.0), Era::Quintessence);
  EXPECT_EQ(classify_era(2.0, 3.0), Era::Decelerating);
}

TEST(ClassifyEra, BandsAreRelative) {
  const double s = 1e6;
  EXPECT_EQ(classify_era(s + 1e-4, s), Era::Stiff);
  EXPECT_EQ(classify_era(s + 1.0, s), Era::Decelerating);
  EXPECT_EQ(classify_era(1e-10, 1e-10), Era::Vacuum);
}

TEST(FluidProperty, ClassifyIsTotalAndDeterministic) {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int n = 0; n < 10000; ++n) {
    const double p = u(rng), s = u(rng);
    const Era a = classify_era(p, s);
    EXPECT_EQ(a, classify_era(p, s));
    EXPECT_FALSE(to_string(a).empty());
    const FluidState f = fluid_from_qc(s / 3.0, (p + s) / 2.0, 1.0);
    EXPECT_EQ(f.w.has_value(), std::abs(f.sigma) > era_epsilon(f.p, f.sigma));
  }
}

TEST(FluidProperty, PressurePlusDensity) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-5.0, 5.0), k(0.1, 3.0);
  for (int n = 0; n < 1000; ++n) {
    const double g = u(rng), m = u(rng), kappa = k(rng);
    const FluidState f = fluid_from_qc(g, m, kappa);
    const double want = 2 * m / (kappa * kappa);
    EXPECT_NEAR(f.p + f.sigma, want, 1e-12 * std::max({std::abs(f.p), std::abs(f.sigma), 1e-300}));
  }
}

TEST(EnergyConditions, Examples) {
  EXPECT_EQ(gr_energy_conditions(0.0, 1.0), (EcFlags{true, true, true, true}));
  EXPECT_EQ(gr_energy_conditions(-8.0, 12.0), (EcFlags{true, true, true, false}));
  // sigma + p = 0 sits on the NEC boundary; sigma + 3p = 2 satisfies SEC.
  EXPECT_EQ(gr_energy_conditions(1.0, -1.0), (EcFlags{true, false, false, true}));
  EXPECT_EQ(gr_energy_conditions(2.0, -1.0), (EcFlags{true, false, false, true}));
  EXPECT_EQ(gr_energy_conditions(-2.0, -1.0), (EcFlags{false, false, false, false}));
}

TEST(StressEnergy, Examples) {
  const Tensor2 t0 =
      stress_energy_from_einstein(compute_curvature(eval_metric(builtin("minkowski"), {0, 0, 0, 0})), 1.0);
  EXPECT_EQ(norm(t0), 0.0);

  const CurvatureBundle flrw = compute_curvature(eval_metric(builtin("flrw-flat"), {1, 0, 0, 0}));
  const FluidProjection pr =
      project_stress_energy(stress_energy_from_einstein(flrw, 1.0), flrw.ginv, {1, 0, 0, 0});
  EXPECT_NEAR(pr.sigma, 12.0, 1e-10);
  EXPECT_NEAR(pr.p, -8.0, 1e-10);

  const double k = 2.0, kappa = 1.5;
  const CurvatureBundle ds =
      compute_curvature(eval_metric(builtin("de-sitter", {{"k", "2"}}), {0.1, 0, 0, 0}));
  const Tensor2 t = stress_energy_from_einstein(ds, kappa);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      EXPECT_NEAR(t(i, j), -3 * k / (kappa * kappa) * ds.g(i, j), 1e-10 * (1 + std::abs(ds.g(i, j))));

  try {
    stress_energy_from_einstein(flrw, 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonPositiveKappa);
  }
}

TEST(FluidProperty, EinsteinOracleOnQcCatalog) {
  for (const BuiltinInfo& info : builtin_catalog()) {
    const MetricSpec s = builtin(info.name);
    for (const Vec4& p : oracle::sample_points(info, 10, 17)) {
      const CurvatureBundle b = compute_curvature(eval_metric(s, p));
      QCReport r;
      try {
        r = detect_qc(b);
      } catch (const Error&) {
        continue;
      }
      if (!r.is_qc || !r.A_con) continue;
      for (double kappa : {1.0, 0.7}) {
        const FluidState f = fluid_from_qc(r.gamma, r.mu, kappa);
        const FluidProjection pr =
            project_stress_energy(stress_energy_from_einstein(b, kappa), b.ginv, *r.A_con);
        EXPECT_NEAR(pr.sigma, f.sigma, 1e-8) << info.name;
        EXPECT_NEAR(pr.p, f.p, 1e-8) << info.name;
      }
    }
  }
}
