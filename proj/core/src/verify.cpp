#include "qcst/verify.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "qcst/curvature.hpp"
#include "qcst/diagnostics.hpp"
#include "qcst/error.hpp"
#include "qcst/expr.hpp"
#include "qcst/fd_oracle.hpp"
#include "qcst/fluid.hpp"
#include "qcst/frg.hpp"
#include "qcst/jet.hpp"
#include "qcst/metric.hpp"

namespace qcst::verify {
namespace {

constexpr int kOraclePoints = 20;
constexpr std::uint32_t kSeed = 20240611u;

class Sink {
 public:
  Sink(std::string suite, std::vector<CheckResult>& out) : suite_(std::move(suite)), out_(out) {}

  // measured <= bound
  void at_most(const std::string& check, double measured, double bound) {
    out_.push_back({suite_, check, measured, bound, measured <= bound});
  }
  // measured > bound
  void above(const std::string& check, double measured, double bound) {
    out_.push_back({suite_, check, measured, bound, measured > bound});
  }
  void holds(const std::string& check, bool ok) {
    out_.push_back({suite_, check, ok ? 1.0 : 0.0, 1.0, ok});
  }

 private:
  std::string suite_;
  std::vector<CheckResult>& out_;
};

double rel(double a, double b, double scale) {
  const double d = std::abs(a - b);
  if (d == 0.0) return 0.0;
  return d / std::max(1e-300, scale);
}

CurvatureBundle curvature(const MetricSpec& spec, const Vec4& x, Fault fault) {
  CurvatureBundle b = compute_curvature(eval_metric(spec, x));
  if (fault == Fault::RiemannSign) {
    b.riemann = -1.0 * b.riemann;
    complete_from_riemann(b);
  }
  return b;
}

// ---------------------------------------------------------------- jets

void suite_jets(const Options&, Sink& s) {
  const double x0 = 0.7, y0 = -0.4;
  const Jet3 x = Jet3::variable(0, x0);
  const Jet3 y = Jet3::variable(1, y0);

  // f = x y sin(x): f_x = y sin x + x y cos x, f_xx = 2 y cos x - x y sin x
  const Jet3 f = x * y * sin(x);
  double err = std::abs(f.d(0) - (y0 * std::sin(x0) + x0 * y0 * std::cos(x0)));
  err = std::max(err, std::abs(f.d(0, 0) - (2 * y0 * std::cos(x0) - x0 * y0 * std::sin(x0))));
  err = std::max(err, std::abs(f.d(0, 1) - (std::sin(x0) + x0 * std::cos(x0))));
  s.at_most("product_rule", err, 1e-14);

  const Jet3 g = exp(x * 0.5 + y);
  const Jet3 back = log(g);
  double round = 0.0;
  const Jet3 target = x * 0.5 + y;
  for (std::size_t k = 0; k < Jet3::kSize; ++k)
    round = std::max(round, std::abs(back.coeffs()[k] - target.coeffs()[k]));
  s.at_most("exp_log_roundtrip", round, 1e-13);

  const Jet3 c = powi(x, 3);
  s.at_most("third_partial", std::abs(c.d(0, 0, 0) - 6.0), 1e-13);

  const Jet3 r = (x + 2.0) * reciprocal(x + 2.0);
  double one = std::abs(r.value() - 1.0);
  for (std::size_t k = 1; k < Jet3::kSize; ++k) one = std::max(one, std::abs(r.coeffs()[k]));
  s.at_most("reciprocal", one, 1e-14);

  const Jet3 q = sqrt(x + 1.0);
  double sq = 0.0;
  const Jet3 q2 = q * q;
  const Jet3 xp = x + 1.0;
  for (std::size_t k = 0; k < Jet3::kSize; ++k)
    sq = std::max(sq, std::abs(q2.coeffs()[k] - xp.coeffs()[k]));
  s.at_most("sqrt_square", sq, 1e-14);
}

// ---------------------------------------------------------------- parser

void suite_parser(const Options&, Sink& s) {
  auto value = [](std::string_view src) {
    return evaluate(parse_expression(src), {}, {}).value();
  };
  double err = std::abs(value("2+3*4^2") - 50.0);
  err = std::max(err, std::abs(value("-2^2") + 4.0));
  err = std::max(err, std::abs(value("2^3^2") - 512.0));
  err = std::max(err, std::abs(value("2^-1") - 0.5));
  err = std::max(err, std::abs(value("(1-2)-3") + 4.0));
  s.at_most("precedence", err, 0.0);

  auto error_of = [](std::string_view src) -> std::optional<Error> {
    try {
      (void)parse_expression(src);
    } catch (const Error& e) {
      return e;
    }
    return std::nullopt;
  };
  const auto dots = error_of("1..2");
  s.holds("unexpected_character_offset",
          dots && dots->code() == ErrorCode::UnexpectedCharacter && dots->offset() == 2u);
  const auto open = error_of("(1+2");
  s.holds("unbalanced_parenthesis", open && open->code() == ErrorCode::UnbalancedParenthesis);
  const auto fn = error_of("foo(1)");
  s.holds("unknown_function", fn && fn->code() == ErrorCode::UnknownFunction);

  const std::array<std::string, 4> coords{"t", "x", "y", "z"};
  const Expr e = parse_expression("-(1 - 2*M/x)^2 + sin(t)*exp(y/2)", coords);
  s.holds("print_parse_roundtrip", parse_expression(to_string(e), coords) == e);

  const std::string text =
      "coordinates: t x y z\n"
      "g_tt = -1\n"
      "g_xx = t^4\n"
      "g_yy = t^4\n"
      "g_zz = t^4\n";
  const MetricSpec file = load_metric(text);
  const MetricSpec ref = builtin("flrw-flat");
  const Vec4 x{1.3, 0.2, -0.1, 0.4};
  const MetricJet a = eval_metric(file, x);
  const MetricJet b = eval_metric(ref, x);
  double diff = 0.0;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      for (std::size_t k = 0; k < Jet3::kSize; ++k)
        diff = std::max(diff, std::abs(a.g(i, j).coeffs()[k] - b.g(i, j).coeffs()[k]));
  s.at_most("metric_file_matches_builtin", diff, 1e-12);
}

// ---------------------------------------------------------------- curvature-oracle

void suite_curvature_oracle(const Options& o, Sink& s) {
  for (const BuiltinInfo& info : builtin_catalog()) {
    const MetricSpec spec = builtin(info.name);
    double riem = 0.0, ric = 0.0, bianchi = 0.0, trace = 0.0, contracted = 0.0;
    for (const Vec4& x : oracle::sample_points(info, kOraclePoints, kSeed)) {
      const CurvatureBundle b = curvature(spec, x, o.fault);
      const oracle::FdCurvature fd = oracle::fd_curvature(spec, x);
      const double scale = std::max({norm(b.riemann), norm(fd.riemann), 1e-300});
      const double dr = norm(b.riemann - fd.riemann);
      const double dq = norm(b.ricci - fd.ricci);
      riem = std::max(riem, dr == 0.0 ? 0.0 : dr / scale);
      ric = std::max(ric, dq == 0.0 ? 0.0 : dq / std::max(norm(b.ricci), scale));

      double cyc = 0.0;
      for (int h = 0; h < kDim; ++h)
        for (int i = 0; i < kDim; ++i)
          for (int j = 0; j < kDim; ++j)
            for (int k = 0; k < kDim; ++k) {
              const double v = b.riemann(h, i, j, k) + b.riemann(h, j, k, i) + b.riemann(h, k, i, j);
              cyc += v * v;
            }
      bianchi = std::max(bianchi, std::sqrt(cyc) / scale);

      // g^{hk} C_hijk and g^{ij} C_hijk; the other single traces follow by symmetry.
      double tr = 0.0;
      for (int a = 0; a < kDim; ++a)
        for (int c = 0; c < kDim; ++c) {
          double t1 = 0.0, t2 = 0.0;
          for (int p = 0; p < kDim; ++p)
            for (int q = 0; q < kDim; ++q) {
              t1 += b.ginv(p, q) * b.weyl(p, a, c, q);
              t2 += b.ginv(p, q) * b.weyl(a, p, q, c);
            }
          tr += t1 * t1 + t2 * t2;
        }
      trace = std::max(trace, std::sqrt(tr) / scale);

      // D_i (R^i_j - R delta^i_j / 2) = g^{il} D_l R_ij - d_j R / 2
      double div = 0.0, div_scale = 0.0;
      for (int j = 0; j < kDim; ++j) {
        double v = -0.5 * b.grad_scalar[j];
        double m = std::abs(v);
        for (int i = 0; i < kDim; ++i)
          for (int l = 0; l < kDim; ++l) {
            v += b.ginv(i, l) * b.grad_ricci(l, i, j);
            m += std::abs(b.ginv(i, l) * b.grad_ricci(l, i, j));
          }
        div += v * v;
        div_scale += m * m;
      }
      const double dscale = std::sqrt(div_scale);
      contracted = std::max(contracted, dscale <= kZeroFloor ? std::sqrt(div)
                                                               : std::sqrt(div) / dscale);
    }
    s.at_most(info.name + ".riemann", riem, 1e-5);
    s.at_most(info.name + ".ricci", ric, 1e-5);
    s.at_most(info.name + ".first_bianchi", bianchi, 1e-10);
    s.at_most(info.name + ".weyl_traceless", trace, 1e-10);
    s.at_most(info.name + ".contracted_bianchi", contracted, 1e-9);
  }
}

// ---------------------------------------------------------------- qc-roundtrip

void suite_qc_roundtrip(const Options& o, Sink& s) {
  {
    const MetricSpec spec = builtin("flrw-flat");
    const QCReport r = detect_qc(curvature(spec, {1, 0, 0, 0}, o.fault), o.tol);
    s.holds("flrw_flat.is_qc", r.is_qc);
    s.at_most("flrw_flat.gamma", std::abs(r.gamma - 4.0), 1e-8);
    s.at_most("flrw_flat.mu", std::abs(r.mu - 2.0), 1e-8);
    double da = INFINITY;
    if (r.A_con) {
      const Vec4 e{1, 0, 0, 0};
      da = 0.0;
      for (int i = 0; i < kDim; ++i) da = std::max(da, std::abs((*r.A_con)[i] - e[i]));
    }
    s.at_most("flrw_flat.generator", da, 1e-8);
    s.at_most("flrw_flat.riemann_residual", r.riemann_residual_rel, 1e-8);
  }
  {
    const QCReport r = detect_qc(curvature(builtin("de-sitter"), {0.3, 0.1, -0.2, 0.5}, o.fault), o.tol);
    s.holds("de_sitter.constant_curvature", r.constant_curvature && r.is_qc);
    s.at_most("de_sitter.mu", std::abs(r.mu), 1e-10);
    s.at_most("de_sitter.gamma", std::abs(r.gamma - 1.0), 1e-10);
  }
  {
    const QCReport r =
        detect_qc(curvature(builtin("schwarzschild"), {0, 3, 1.5707963, 0}, o.fault), o.tol);
    s.holds("schwarzschild.rejected", !r.is_qc);
    s.above("schwarzschild.weyl_norm_rel", r.weyl_norm_rel, 1e-2);
  }

  // detect(reconstruct(gamma, mu, A)) on random Lorentzian value parts.
  std::mt19937 rng(kSeed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0, contraction = 0.0, scalar = 0.0, nu_err = 0.0;
  int rejected = 0;
  for (int n = 0; n < 200; ++n) {
    Tensor2 e;
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j) e(i, j) = (i == j ? 1.0 : 0.0) + 0.25 * u(rng);
    Tensor2 g;
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j) {
        double v = -e(0, i) * e(0, j);
        for (int k = 1; k < kDim; ++k) v += e(k, i) * e(k, j);
        g(i, j) = v;
      }
    Vec4 a{1.0, 0.3 * u(rng), 0.3 * u(rng), 0.3 * u(rng)};
    const double n2 = contract(g, a, a);
    if (!(n2 < 0.0)) {
      --n;
      continue;
    }
    for (double& c : a) c /= std::sqrt(-n2);
    if (a[0] < 0.0)
      for (double& c : a) c = -c;
    const double gamma = 2.0 * u(rng);
    double mu = 2.0 * u(rng);
    if (std::abs(mu) < 0.1) mu = std::copysign(0.1, mu);
    const Vec4 acov = lower(g, a);

    CurvatureBundle b;
    b.g = g;
    Eigen::Matrix4d gm;
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j) gm(i, j) = g(i, j);
    const Eigen::Matrix4d gi = gm.inverse();
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j) b.ginv(i, j) = gi(i, j);
    b.riemann = reconstruct_riemann(gamma, mu, acov, g);
    complete_from_riemann(b);

    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j) {
        const double expect = (3 * gamma - mu) * g(i, j) + 2 * mu * acov[i] * acov[j];
        contraction = std::max(contraction, std::abs(b.ricci(i, j) - expect));
      }
    scalar = std::max(scalar, rel(b.scalar, 6 * (2 * gamma - mu), std::max(1.0, std::abs(b.scalar))));

    QCReport r;
    try {
      r = detect_qc(b, o.tol);
    } catch (const Error&) {
      ++rejected;
      continue;
    }
    if (!r.is_qc || !r.A_con) {
      ++rejected;
      continue;
    }
    const double scale = std::max(std::abs(gamma), std::abs(mu));
    worst = std::max(worst, std::abs(r.gamma - gamma) / scale);
    worst = std::max(worst, std::abs(r.mu - mu) / std::abs(mu));
    for (int i = 0; i < kDim; ++i)
      worst = std::max(worst, std::abs((*r.A_con)[i] - a[i]) / std::max(1.0, norm(a)));
    nu_err = std::max(nu_err, rel(r.nu, 3 * (r.mu - r.gamma), std::max(1.0, std::abs(r.nu))));
  }
  s.at_most("random.rejected", rejected, 0);
  s.at_most("random.recovery", worst, 1e-9);
  s.at_most("random.nu_identity", nu_err, 1e-9);
  s.at_most("contraction_identity", contraction, 1e-12);
  s.at_most("scalar_identity", scalar, 1e-12);
}

// ---------------------------------------------------------------- theorem-fixtures

struct Fixture {
  std::string name;
  BuiltinParams params;
  Vec4 point;
};

std::vector<Fixture> fixtures() {
  return {
      {"minkowski", {}, {0, 0, 0, 0}},
      {"flrw-flat", {}, {1, 0, 0, 0}},
      {"flrw-flat", {{"a", "t^3 + t"}}, {0.8, 0.1, 0.2, 0.3}},
      {"flrw-closed", {}, {1.2, 1.0, 1.1, 0.4}},
      {"flrw-open", {}, {1.5, 0.7, 1.3, 0.2}},
      {"de-sitter", {}, {0.3, 0.1, -0.2, 0.5}},
      {"einstein-static", {}, {0.0, 1.0, 1.2, 0.0}},
      {"schwarzschild", {}, {0, 3, 1.5707963, 0}},
  };
}

void suite_theorem_fixtures(const Options& o, Sink& s) {
  const double kappa = 1.0;
  double sigma_err = 0.0, p_err = 0.0, sum_err = 0.0;
  double semi_given_symmetric = 0.0;
  bool dichotomy = true, killing_pathway = true;
  for (const Fixture& f : fixtures()) {
    const MetricSpec spec = builtin(f.name, f.params);
    const CurvatureBundle b = curvature(spec, f.point, o.fault);
    const double rs = ricci_symmetric_deviation(b);
    if (rs <= 1e-10) semi_given_symmetric = std::max(semi_given_symmetric, semisymmetry_deviation(b));

    QCReport r;
    try {
      r = detect_qc(b, o.tol);
    } catch (const Error&) {
      continue;
    }
    if (!r.is_qc) continue;

    Vec4 a{1, 0, 0, 0};  // every catalog chart has g_tt = -1 where QC
    if (r.A_con) a = *r.A_con;
    const Tensor2 T = stress_energy_from_einstein(b, kappa);
    const FluidProjection proj = project_stress_energy(T, b.ginv, a);
    const FluidState fl = fluid_from_qc(r.gamma, r.mu, kappa);
    sigma_err = std::max(sigma_err, std::abs(proj.sigma - fl.sigma));
    p_err = std::max(p_err, std::abs(proj.p - fl.p));
    sum_err = std::max(sum_err, rel(fl.p + fl.sigma, 2 * r.mu / (kappa * kappa),
                                    std::max({std::abs(fl.p), std::abs(fl.sigma), 1e-300})));

    if (rs <= o.tol) {
      const double g = std::max(1.0, std::abs(r.gamma));
      const bool cc = std::abs(r.mu) <= o.tol * g;
      const bool boundary = std::abs(r.mu - r.gamma) <= o.tol * g;
      dichotomy = dichotomy && (cc || boundary);
      if (!cc && boundary) {
        const DiagnosticsReport d = diagnose(spec, b, r, o.tol);
        killing_pathway = killing_pathway && d.generator && d.generator->killing_dev <= o.tol &&
                   d.generator->vorticity_dev <= o.tol;
      }
    }
  }
  s.at_most("einstein_oracle.sigma", sigma_err, 1e-8);
  s.at_most("einstein_oracle.p", p_err, 1e-8);
  s.at_most("p_plus_sigma", sum_err, 1e-12);
  s.at_most("symmetric_implies_semisymmetric", semi_given_symmetric, 1e-10);
  s.holds("ricci_symmetric_qc_dichotomy", dichotomy);
  s.holds("ricci_symmetric_boundary_is_static", killing_pathway);

  {
    const MetricSpec spec = builtin("einstein-static");
    const CurvatureBundle b = curvature(spec, {0.0, 1.0, 1.2, 0.0}, o.fault);
    const QCReport r = detect_qc(b, o.tol);
    const DiagnosticsReport d = diagnose(spec, b, r, o.tol);
    s.at_most("einstein_static.gamma", std::abs(r.gamma - 1.0), 1e-10);
    s.at_most("einstein_static.mu", std::abs(r.mu - 1.0), 1e-10);
    s.at_most("einstein_static.ricci_symmetric", d.ricci_symmetric_dev, 1e-10);
    s.at_most("einstein_static.killing", d.generator ? d.generator->killing_dev : INFINITY, 1e-10);
    s.at_most("einstein_static.vorticity", d.generator ? d.generator->vorticity_dev : INFINITY, 1e-10);
    s.holds("einstein_static.conformally_flat", conformally_flat(b, o.tol));
  }
  {
    const CurvatureBundle ds = curvature(builtin("de-sitter"), {0.3, 0.1, -0.2, 0.5}, o.fault);
    const CurvatureBundle sch = curvature(builtin("schwarzschild"), {0, 3, 1.5707963, 0}, o.fault);
    s.at_most("de_sitter.semisymmetry", semisymmetry_deviation(ds), 1e-10);
    s.at_most("schwarzschild.semisymmetry", semisymmetry_deviation(sch), 1e-10);
  }
  {
    const MetricSpec spec = builtin("flrw-flat");
    const CurvatureBundle b = curvature(spec, {1, 0, 0, 0}, o.fault);
    const QCReport r = detect_qc(b, o.tol);
    const FluidState fl = fluid_from_qc(r.gamma, r.mu, 1.0);
    s.at_most("flrw_flat.pressure", std::abs(fl.p + 8.0), 1e-8);
    s.at_most("flrw_flat.density", std::abs(fl.sigma - 12.0), 1e-8);
    s.holds("flrw_flat.quintessence", fl.era == Era::Quintessence);
    const DiagnosticsReport d = diagnose(spec, b, r, o.tol);
    s.at_most("flrw_flat.div_A", d.generator ? std::abs(d.generator->div_A - 6.0) : INFINITY, 1e-10);
  }
}

// ---------------------------------------------------------------- frg-identities

long double model_a_reference(long double r) { return std::exp(r) * std::log(r); }

void suite_frg(const Options&, Sink& s) {
  const FRModel a64 = model_a(64);
  double worst = 0.0;
  for (int R = 1; R <= 5; ++R) {
    const double dev = static_cast<double>(
        std::abs(static_cast<long double>(a64.F_R(R)) - model_a_reference(R)));
    worst = std::max(worst, dev);
  }
  s.at_most("model_a.derivative_identity", worst, 1e-9);

  double prev = INFINITY;
  int increases = 0;
  for (int L : {8, 16, 32, 64}) {
    const double dev = static_cast<double>(
        std::abs(static_cast<long double>(model_a(L).F_R(5.0)) - model_a_reference(5.0L)));
    if (dev > prev) ++increases;
    prev = dev;
  }
  s.at_most("model_a.monotone_in_terms", increases, 0);

  double fd = 0.0;
  for (int k = 0; k < 50; ++k) {
    const double R = 0.2 + 0.5 * k;
    const double h = 1e-6 * std::max(1.0, std::abs(R));
    const double q = (a64.F(R + h) - a64.F(R - h)) / (2 * h);
    fd = std::max(fd, rel(q, a64.F_R(R), std::abs(a64.F_R(R))));
  }
  s.at_most("model_a.fd_consistency", fd, 1e-5);

  std::mt19937 rng(kSeed);
  std::uniform_real_distribution<double> umu(-5.0, 5.0), uR(0.0, 30.0);
  double route = 0.0, sum = 0.0;
  for (int n = 0; n < 1000; ++n) {
    const double mu = umu(rng);
    double R = uR(rng);
    if (R <= 0.0) R = 1e-3;
    const double gamma = (R / 6.0 + mu) / 2.0;
    const double Rq = scalar_from_qc(gamma, mu);
    if (!a64.in_domain(Rq)) continue;
    const Effective direct = effective_from_qc(gamma, mu, a64, 1.0);
    const PressureDensity pd = fr_pressure_density(gamma, mu, a64, 1.0);
    const Effective composed = effective_quantities(pd.p, pd.sigma, Rq, a64, 1.0);
    const double F = a64.F(Rq), FR = a64.F_R(Rq);
    const double scale = std::abs(F) + std::abs(Rq * FR) + (std::abs(gamma) + std::abs(mu)) * std::abs(FR);
    route = std::max(route, rel(direct.p_eff, composed.p_eff, scale));
    route = std::max(route, rel(direct.sigma_eff, composed.sigma_eff, scale));
    sum = std::max(sum, rel(pd.p + pd.sigma, 2 * mu * FR, scale));
  }
  s.at_most("route_equivalence", route, 1e-12);
  s.at_most("pressure_density_sum", sum, 1e-12);

  const FRModel gr = gr_model();
  double reduce = 0.0;
  for (int n = 0; n < 1000; ++n) {
    const double gamma = umu(rng), mu = umu(rng);
    const FluidState fl = fluid_from_qc(gamma, mu, 1.0);
    const PressureDensity pd = fr_pressure_density(gamma, mu, gr, 1.0);
    const Effective eff = effective_from_qc(gamma, mu, gr, 1.0);
    const double scale = std::max({std::abs(fl.p), std::abs(fl.sigma), 3 * (std::abs(gamma) + std::abs(mu))});
    reduce = std::max({reduce, rel(pd.p, fl.p, scale), rel(pd.sigma, fl.sigma, scale),
                       rel(eff.p_eff, fl.p, scale), rel(eff.sigma_eff, fl.sigma, scale)});
  }
  s.at_most("pure_gr_reduction", reduce, 1e-12);

  const ScanResult scan = scan_grid({1.0, 2.0, 50}, {0.5, 2.0, 50}, a64, 1.0);
  int density = 0, nec_wec = 0, sec = 0, dec = 0;
  for (const ECRecord& c : scan.records) {
    if (!(c.R > 1.0)) continue;
    if (3 * c.gamma > c.mu) {
      if (!(c.sigma_eff > 0.0)) ++density;
      if (!(c.nec && c.wec)) ++nec_wec;
    }
    const bool tie = std::abs(c.mu - c.gamma) <= 1e-12 * std::max(1.0, std::abs(c.gamma));
    if (c.sec != (c.mu >= c.gamma || tie)) ++sec;
    if (c.dec != (15 * c.gamma >= 7 * c.mu && c.sigma_eff >= 0.0)) ++dec;
  }
  s.at_most("grid.density_positive", density, 0);
  s.at_most("grid.nec_wec", nec_wec, 0);
  s.at_most("grid.sec_closed_form", sec, 0);
  s.at_most("grid.dec_closed_form", dec, 0);

  std::ostringstream one, two;
  write_csv(one, scan.records);
  write_csv(two, scan_grid({1.0, 2.0, 50}, {0.5, 2.0, 50}, a64, 1.0).records);
  s.holds("grid.deterministic", one.str() == two.str());
}

struct Suite {
  std::string name;
  std::function<void(const Options&, Sink&)> run;
};

const std::vector<Suite>& suites() {
  static const std::vector<Suite> all{
      {"jets", suite_jets},
      {"parser", suite_parser},
      {"curvature-oracle", suite_curvature_oracle},
      {"qc-roundtrip", suite_qc_roundtrip},
      {"theorem-fixtures", suite_theorem_fixtures},
      {"frg-identities", suite_frg},
  };
  return all;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const Suite& s : suites()) v.push_back(s.name);
    return v;
  }();
  return names;
}

std::vector<CheckResult> run(const Options& options) {
  std::vector<CheckResult> out;
  bool matched = false;
  for (const Suite& suite : suites()) {
    if (suite.name.compare(0, options.suite.size(), options.suite) != 0) continue;
    matched = true;
    Sink sink(suite.name, out);
    suite.run(options, sink);
  }
  if (!matched) throw Error(ErrorCode::BadParameter, "no verification suite matches '" + options.suite + "'");
  return out;
}

std::string format(const CheckResult& r) {
  char buf[64];
  std::string line = r.pass ? "PASS " : "FAIL ";
  line += r.suite + "." + r.check;
  std::snprintf(buf, sizeof buf, " %.6e %.6e", r.measured, r.bound);
  return line + buf;
}

}  // namespace qcst::verify
