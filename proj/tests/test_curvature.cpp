#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qcst/curvature.hpp"
#include "qcst/fd_oracle.hpp"
#include "qcst/metric.hpp"

using namespace qcst;

namespace {

CurvatureBundle at(const std::string& name, const Vec4& p, const BuiltinParams& params = {}) {
  return compute_curvature(eval_metric(builtin(name, params), p));
}

const BuiltinInfo& info_of(const std::string& name) {
  for (const BuiltinInfo& i : builtin_catalog())
    if (i.name == name) return i;
  throw std::runtime_error("no builtin " + name);
}

constexpr double kHalfPi = std::numbers::pi / 2;

}  // namespace

TEST(Christoffel, Examples) {
  const CurvatureBundle mink = at("minkowski", {0.1, 0.2, 0.3, 0.4});
  EXPECT_EQ(norm(mink.gamma), 0.0);
  EXPECT_EQ(norm(mink.riemann), 0.0);

  const CurvatureBundle flrw = at("flrw-flat", {1.0, 0.0, 0.0, 0.0});
  EXPECT_NEAR(flrw.gamma(0, 1, 1), 2.0, 1e-14);  // a a'
  EXPECT_NEAR(flrw.gamma(1, 0, 1), 2.0, 1e-14);  // a'/a
  EXPECT_NEAR(flrw.gamma(1, 1, 0), 2.0, 1e-14);

  const CurvatureBundle schw = at("schwarzschild", {0.0, 3.0, kHalfPi, 0.0});
  EXPECT_NEAR(schw.gamma(1, 0, 0), 1.0 / 27.0, 1e-15);
}

TEST(Curvature, DeSitterIsConstantCurvature) {
  for (double t : {-0.5, 0.0, 0.7}) {
    const CurvatureBundle b = at("de-sitter", {t, 0.1, 0.2, 0.3});
    for (int h = 0; h < 4; ++h)
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          for (int k = 0; k < 4; ++k) {
            const double want = b.g(h, k) * b.g(i, j) - b.g(h, j) * b.g(i, k);
            EXPECT_NEAR(b.riemann(h, i, j, k), want, 1e-12 * (1 + std::abs(want)));
          }
    EXPECT_NEAR(b.scalar, 12.0, 1e-12);
    EXPECT_LT(norm(b.weyl), 1e-10);
  }
}

TEST(Curvature, FlrwValues) {
  const CurvatureBundle b = at("flrw-flat", {1.0, 0.0, 0.0, 0.0});
  EXPECT_NEAR(b.scalar, 36.0, 1e-12);
  EXPECT_NEAR(b.ricci(0, 0), -6.0, 1e-12);
  EXPECT_NEAR(b.ricci(1, 1), 10.0, 1e-12);
  EXPECT_NEAR(b.ricci(2, 2), 10.0, 1e-12);
  EXPECT_NEAR(b.ricci(0, 1), 0.0, 1e-12);
  EXPECT_LT(norm(b.weyl), 1e-10);
  EXPECT_GT(norm(b.grad_ricci), 1.0);
}

TEST(Curvature, SchwarzschildIsVacuumWithWeyl) {
  const CurvatureBundle b = at("schwarzschild", {0.0, 4.0, 1.1, 0.3});
  EXPECT_LT(norm(b.ricci), 1e-12);
  EXPECT_GT(norm(b.weyl), 1e-2);
  // Kretschmann invariant 48 M^2 / r^6.
  double k = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int c = 0; c < 4; ++c)
      for (int d = 0; d < 4; ++d)
        for (int e = 0; e < 4; ++e) {
          double up = 0.0;
          for (int p = 0; p < 4; ++p)
            for (int q = 0; q < 4; ++q)
              for (int r = 0; r < 4; ++r)
                for (int s = 0; s < 4; ++s)
                  up += b.ginv(a, p) * b.ginv(c, q) * b.ginv(d, r) * b.ginv(e, s) * b.riemann(p, q, r, s);
          k += up * b.riemann(a, c, d, e);
        }
  EXPECT_NEAR(k, 48.0 / std::pow(4.0, 6), 1e-12);
}

TEST(Curvature, ParallelRicciFixtures) {
  EXPECT_LT(norm(at("de-sitter", {0.3, 0.0, 0.0, 0.0}).grad_ricci), 1e-10);
  EXPECT_LT(norm(at("einstein-static", {0.0, 1.0, 1.2, 0.4}).grad_ricci), 1e-10);
}

TEST(CurvatureProperty, SymmetriesAndBianchi) {
  for (const BuiltinInfo& info : builtin_catalog()) {
    const MetricSpec s = builtin(info.name);
    for (const Vec4& p : oracle::sample_points(info, 20, 3)) {
      const CurvatureBundle b = compute_curvature(eval_metric(s, p));
      const double scale = std::max(1.0, norm(b.riemann));
      double worst_sym = 0.0, worst_bianchi = 0.0, worst_trace = 0.0;
      for (int h = 0; h < 4; ++h)
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k) {
              const double r = b.riemann(h, i, j, k);
              worst_sym = std::max({worst_sym, std::abs(r + b.riemann(i, h, j, k)),
                                    std::abs(r + b.riemann(h, i, k, j)),
                                    std::abs(r - b.riemann(j, k, h, i))});
              worst_bianchi = std::max(
                  worst_bianchi, std::abs(r + b.riemann(h, j, k, i) + b.riemann(h, k, i, j)));
            }
      for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) {
          double tr = 0.0;
          for (int h = 0; h < 4; ++h)
            for (int j = 0; j < 4; ++j) tr += b.ginv(h, j) * b.weyl(h, i, j, k);
          worst_trace = std::max(worst_trace, std::abs(tr));
        }
      EXPECT_LT(worst_sym / scale, 1e-12) << info.name;
      EXPECT_LT(worst_bianchi / scale, 1e-12) << info.name;
      EXPECT_LT(worst_trace / scale, 1e-10) << info.name;
      EXPECT_LT(norm(b.ricci - ricci_from_riemann(b.ginv, b.riemann)) / scale, 1e-12) << info.name;
    }
  }
}

TEST(CurvatureProperty, ContractedBianchi) {
  for (const BuiltinInfo& info : builtin_catalog()) {
    const MetricSpec s = builtin(info.name);
    for (const Vec4& p : oracle::sample_points(info, 10, 4)) {
      const CurvatureBundle b = compute_curvature(eval_metric(s, p));
      const double scale = std::max(1.0, norm(b.grad_ricci));
      for (int j = 0; j < 4; ++j) {
        double div = 0.0;
        for (int l = 0; l < 4; ++l)
          for (int i = 0; i < 4; ++i) div += b.ginv(l, i) * b.grad_ricci(l, i, j);
        EXPECT_NEAR(div, 0.5 * b.grad_scalar[j], 1e-10 * scale) << info.name;
      }
    }
  }
}

TEST(CurvatureProperty, MatchesFiniteDifferenceOracle) {
  for (const BuiltinInfo& info : builtin_catalog()) {
    const MetricSpec s = builtin(info.name);
    for (const Vec4& p : oracle::sample_points(info, 20, 20240611)) {
      const CurvatureBundle b = compute_curvature(eval_metric(s, p));
      const oracle::FdCurvature fd = oracle::fd_curvature(s, p, 1e-4);
      const double rscale = std::max(1.0, norm(b.riemann));
      EXPECT_LT(norm(b.riemann - fd.riemann) / rscale, 1e-5) << info.name;
      EXPECT_LT(norm(b.ricci - fd.ricci) / rscale, 1e-5) << info.name;
      EXPECT_LT(norm(b.gamma - fd.gamma) / std::max(1.0, norm(b.gamma)), 1e-7) << info.name;
    }
  }
}

// Q_ijlm against (D_l D_m - D_m D_l) R_ij assembled from finite differences
// of D R at neighbouring points.
TEST(CurvatureProperty, RicciCommutatorMatchesFiniteDifferences) {
  const MetricSpec s = builtin("flrw-closed");
  const double h = 1e-4;
  for (const Vec4& p : oracle::sample_points(info_of("flrw-closed"), 5, 9)) {
    const CurvatureBundle b = compute_curvature(eval_metric(s, p));
    std::array<Tensor3, 4> dT;  // d_l (D_m R_ij), stored [l](m, i, j)
    for (int l = 0; l < 4; ++l) {
      Vec4 pp = p, pm = p;
      pp[l] += h;
      pm[l] -= h;
      const Tensor3 tp = compute_curvature(eval_metric(s, pp)).grad_ricci;
      const Tensor3 tm = compute_curvature(eval_metric(s, pm)).grad_ricci;
      for (std::size_t k = 0; k < tp.size; ++k) dT[l].data[k] = (tp.data[k] - tm.data[k]) / (2 * h);
    }
    auto second = [&](int l, int m, int i, int j) {
      double v = dT[l](m, i, j);
      for (int q = 0; q < 4; ++q) {
        v -= b.gamma(q, l, m) * b.grad_ricci(q, i, j);
        v -= b.gamma(q, l, i) * b.grad_ricci(m, q, j);
        v -= b.gamma(q, l, j) * b.grad_ricci(m, i, q);
      }
      return v;
    };
    Tensor4 q_fd;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int l = 0; l < 4; ++l)
          for (int m = 0; m < 4; ++m) q_fd(i, j, l, m) = second(l, m, i, j) - second(m, l, i, j);
    ASSERT_GT(norm(b.riem_on_ricci), 1e-3);
    EXPECT_LT(norm(b.riem_on_ricci - q_fd) / norm(b.riem_on_ricci), 1e-5);
  }
}

TEST(CurvatureProperty, CompleteFromRiemannIsConsistent) {
  for (const BuiltinInfo& info : builtin_catalog()) {
    const MetricSpec s = builtin(info.name);
    const Vec4 p = oracle::sample_points(info, 1, 2).front();
    const CurvatureBundle b = compute_curvature(eval_metric(s, p));
    CurvatureBundle c = b;
    complete_from_riemann(c);
    const double scale = std::max(1.0, norm(b.riemann));
    EXPECT_LT(norm(c.ricci - b.ricci) / scale, 1e-12) << info.name;
    EXPECT_NEAR(c.scalar, b.scalar, 1e-12 * scale) << info.name;
    EXPECT_LT(norm(c.weyl - b.weyl) / scale, 1e-12) << info.name;
    EXPECT_LT(norm(c.riem_on_ricci - b.riem_on_ricci) / (scale * scale), 1e-12) << info.name;
  }
}
