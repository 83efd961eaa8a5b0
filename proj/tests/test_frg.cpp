#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "qcst/error.hpp"
#include "qcst/fluid.hpp"
#include "qcst/frg.hpp"

using namespace qcst;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::ParseError;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST(ModelA, Examples) {
  const FRModel m = model_a(64);
  EXPECT_LE(std::abs(m.F_R(1.0)), 1e-15);
  EXPECT_NEAR(m.F_R(2.0), std::exp(2.0) * std::log(2.0), 1e-12);
  EXPECT_NEAR(m.F_R(2.0), 5.1217034, 1e-7);
  EXPECT_FALSE(m.in_domain(0.0));
  EXPECT_FALSE(m.in_domain(-1.0));
  EXPECT_TRUE(m.in_domain(1e-6));
  // (e^R - 1) log R -> 0, so F stays finite at the excluded edge.
  EXPECT_TRUE(std::isfinite(m.F(1e-8)));
  EXPECT_LT(std::abs(m.F(1e-8)), 1e-6);
}

TEST(ModelA, BadTermCount) {
  EXPECT_EQ(code_of([] { model_a(1); }), ErrorCode::BadTermCount);
  EXPECT_EQ(code_of([] { model_a(0); }), ErrorCode::BadTermCount);
  EXPECT_NO_THROW(model_a(2));
}

TEST(ModelA, DerivativeIdentityAndMonotoneTail) {
  const FRModel m = model_a(64);
  for (double r : {1.0, 2.0, 3.0, 4.0, 5.0})
    EXPECT_LE(std::abs(m.F_R(r) - std::exp(r) * std::log(r)), 1e-9) << r;
  double prev = INFINITY;
  for (int l : {8, 16, 32, 64}) {
    const double err = std::abs(model_a(l).F_R(5.0) - std::exp(5.0) * std::log(5.0));
    EXPECT_LE(err, prev) << l;
    prev = err;
  }
}

TEST(ModelA, DerivativeMatchesFiniteDifferences) {
  const FRModel m = model_a(64);
  for (double r : {0.5, 1.0, 2.5, 7.0, 20.0}) {
    const double h = 1e-5 * std::max(1.0, r);
    const double fd = (m.F(r + h) - m.F(r - h)) / (2 * h);
    EXPECT_NEAR(m.F_R(r), fd, 1e-6 * std::max(1.0, std::abs(fd))) << r;
  }
}

TEST(ModelByName, Lookup) {
  EXPECT_EQ(model_by_name("A").label, model_a().label);
  EXPECT_EQ(model_by_name("gr").F(3.0), 3.0);
  EXPECT_EQ(code_of([] { model_by_name("B"); }), ErrorCode::BadParameter);
}

TEST(PressureDensity, Identities) {
  const FRModel a = model_a();
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> u(0.2, 3.0);
  for (int n = 0; n < 200; ++n) {
    const double g = u(rng), m = u(rng) * 0.5, kappa = u(rng);
    if (!a.in_domain(scalar_from_qc(g, m))) continue;
    const PressureDensity pd = fr_pressure_density(g, m, a, kappa);
    const double fr = a.F_R(scalar_from_qc(g, m));
    EXPECT_NEAR(pd.p + pd.sigma, 2 * m * fr / (kappa * kappa),
                1e-12 * std::max({std::abs(pd.p), std::abs(pd.sigma), 1.0}));
  }
  // gamma = mu
  const double g = 1.3, kappa = 0.8, r = scalar_from_qc(g, g);
  const PressureDensity pd = fr_pressure_density(g, g, a, kappa);
  EXPECT_NEAR(pd.p, 2 * g * a.F_R(r) / (kappa * kappa) - a.F(r) / (2 * kappa * kappa),
              1e-12 * std::abs(pd.p));
}

TEST(PressureDensity, PureGrReducesToFluid) {
  const FRModel gr = gr_model();
  for (double kappa : {1.0, 0.5}) {
    for (auto [g, m] : std::vector<std::pair<double, double>>{{4, 2}, {1, 1}, {2, 3}, {-1, 0.5}}) {
      const PressureDensity pd = fr_pressure_density(g, m, gr, kappa);
      const FluidState f = fluid_from_qc(g, m, kappa);
      EXPECT_LE(rel(pd.p, f.p), 1e-12);
      EXPECT_LE(rel(pd.sigma, f.sigma), 1e-12);
      const Effective e = effective_from_qc(g, m, gr, kappa);
      EXPECT_LE(rel(e.p_eff, f.p), 1e-12);
      EXPECT_LE(rel(e.sigma_eff, f.sigma), 1e-12);
    }
  }
}

TEST(PressureDensity, Errors) {
  const FRModel a = model_a();
  EXPECT_EQ(code_of([&] { fr_pressure_density(1.0, 2.0, a, 1.0); }), ErrorCode::DomainError);
  EXPECT_EQ(code_of([&] { fr_pressure_density(1.0, 1.0, a, 0.0); }), ErrorCode::NonPositiveKappa);
  EXPECT_EQ(code_of([&] { effective_from_qc(1.0, 3.0, a, 1.0); }), ErrorCode::DomainError);
}

TEST(Effective, Examples) {
  const FRModel a = model_a();
  const double kappa = 1.0;
  const PressureDensity pd = fr_pressure_density(1.0, 1.0, a, kappa);
  const Effective e = effective_quantities(pd.p, pd.sigma, 6.0, a, kappa);
  EXPECT_NEAR(e.sigma_eff, 6 * std::exp(6.0) * std::log(6.0) / 2, 1e-10 * e.sigma_eff);
  EXPECT_NEAR(e.p_eff + e.sigma_eff, pd.p + pd.sigma, 1e-12 * std::abs(e.sigma_eff));
  const Effective c = effective_from_qc(1.0, 1.0, a, kappa);
  EXPECT_LE(rel(c.sigma_eff, e.sigma_eff), 1e-12);
  EXPECT_LE(rel(c.p_eff, e.p_eff), 1e-12);

  // p_eff = (4 mu - 6 gamma) F_R / (2 kappa^2) after substituting R.
  const double g = 1.4, m = 1.1, r = scalar_from_qc(g, m);
  const Effective q = effective_from_qc(g, m, a, 1.0);
  EXPECT_LE(rel(q.p_eff, (4 * m - 6 * g) * a.F_R(r) / 2), 1e-12);
  EXPECT_LE(rel(q.sigma_eff + q.p_eff, 2 * m * a.F_R(r)), 1e-12);
  EXPECT_LE(rel(q.sigma_eff, 3 * g * a.F_R(r)), 1e-12);

  EXPECT_EQ(ec_flags_eff(1.0, 0.0), (EcFlags{true, true, true, true}));
}

TEST(FrgProperty, RouteEquivalence) {
  const FRModel a = model_a();
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> ug(-3.0, 4.0), ur(1e-3, 30.0), uk(0.3, 2.0);
  for (int n = 0; n < 1000; ++n) {
    const double g = ug(rng), r = ur(rng), kappa = uk(rng);
    const double m = 2 * g - r / 6;
    const Effective c = effective_from_qc(g, m, a, kappa);
    const PressureDensity pd = fr_pressure_density(g, m, a, kappa);
    const Effective e = effective_quantities(pd.p, pd.sigma, r, a, kappa);
    const double fr = a.F_R(r), f = a.F(r);
    const double scale =
        (std::abs(f) + std::abs(r * fr) + (std::abs(g) + std::abs(m)) * std::abs(fr)) / (kappa * kappa);
    EXPECT_LE(std::abs(c.sigma_eff - e.sigma_eff), 1e-12 * scale);
    EXPECT_LE(std::abs(c.p_eff - e.p_eff), 1e-12 * scale);
  }
}

TEST(ScanGrid, Errors) {
  const FRModel a = model_a();
  EXPECT_EQ(code_of([&] { scan_grid({1, 2, 1}, {0.5, 2, 10}, a, 1.0); }), ErrorCode::EmptyGrid);
  EXPECT_EQ(code_of([&] { scan_grid({5, 6, 4}, {0.5, 1, 4}, a, 1.0); }), ErrorCode::EmptyGrid);
  EXPECT_EQ(code_of([&] { scan_grid({1, 2, 4}, {0.5, 2, 4}, a, -1.0); }), ErrorCode::NonPositiveKappa);
  EXPECT_EQ(code_of([&] { scan_grid({1, INFINITY, 4}, {0.5, 2, 4}, a, 1.0); }), ErrorCode::BadParameter);
}

TEST(ScanGrid, LayoutAndCounts) {
  const ScanResult r = scan_grid({1, 2, 5}, {0.5, 2, 7}, model_a(), 1.0);
  EXPECT_EQ(r.summary.total, 35u);
  EXPECT_EQ(r.records.size() + r.summary.skipped, 35u);
  for (std::size_t i = 1; i < r.records.size(); ++i) {
    const ECRecord& p = r.records[i - 1];
    const ECRecord& q = r.records[i];
    EXPECT_TRUE(p.mu < q.mu || (p.mu == q.mu && p.gamma < q.gamma));
  }
  std::size_t nec = 0;
  for (const ECRecord& c : r.records) {
    EXPECT_GT(c.R, 0.0);
    nec += c.nec;
  }
  EXPECT_EQ(nec, r.summary.nec);
}

TEST(ScanGrid, SerialEqualsParallelAndIsDeterministic) {
  const FRModel a = model_a();
  auto csv = [&](unsigned threads) {
    std::ostringstream os;
    write_csv(os, scan_grid({1, 2, 50}, {0.5, 2, 50}, a, 1.0, threads).records);
    return os.str();
  };
  const std::string serial = csv(1);
  EXPECT_EQ(serial, csv(4));
  EXPECT_EQ(serial, csv(0));
  EXPECT_EQ(serial, csv(1));
}

TEST(ScanGrid, CsvFormat) {
  std::ostringstream os;
  const ScanResult r = scan_grid({1, 2, 2}, {1, 2, 2}, model_a(), 1.0);
  write_csv(os, r.records);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, kCsvHeader);
  int rows = 0;
  while (std::getline(is, line)) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 10);
    std::istringstream fields(line);
    std::string cell;
    std::getline(fields, cell, ',');
    EXPECT_EQ(std::stod(cell), r.records[rows - 1].mu);
  }
  EXPECT_EQ(rows, static_cast<int>(r.records.size()));

  std::ostringstream sum;
  write_summary(sum, r.summary);
  EXPECT_NE(sum.str().find("grid cells: 4"), std::string::npos);
}

TEST(ScanGrid, FigureClaims) {
  const ScanResult r = scan_grid({1, 2, 50}, {0.5, 2, 50}, model_a(), 1.0);
  for (const ECRecord& c : r.records) {
    if (3 * c.gamma > c.mu && c.R > 1) {
      EXPECT_GT(c.sigma_eff, 0.0);
      EXPECT_TRUE(c.nec && c.wec);
    }
    if (c.F_R > 0) {
      EXPECT_EQ(c.sec, c.mu >= c.gamma - 1e-12) << c.mu << " " << c.gamma;
      EXPECT_EQ(c.dec, 15 * c.gamma >= 7 * c.mu && c.sigma_eff >= 0) << c.mu << " " << c.gamma;
    }
  }
}
