#include "qcst/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "qcst/error.hpp"

namespace qcst {
namespace {

double ratio(double num, double den) {
  if (num == 0.0) return 0.0;
  return num / std::max(1e-30, den);
}

}  // namespace

double codazzi_deviation(const CurvatureBundle& b) {
  const double grad = norm(b.grad_ricci);
  if (grad <= kZeroFloor * std::max(1.0, norm(b.ricci))) return 0.0;
  double s = 0.0;
  for (int l = 0; l < kDim; ++l)
    for (int h = 0; h < kDim; ++h)
      for (int k = 0; k < kDim; ++k) {
        const double d = b.grad_ricci(l, h, k) - b.grad_ricci(k, h, l);
        s += d * d;
      }
  return ratio(std::sqrt(s), grad);
}

double ricci_symmetric_deviation(const CurvatureBundle& b) {
  return norm(b.grad_ricci) / std::max(1.0, norm(b.ricci));
}

double semisymmetry_deviation(const CurvatureBundle& b) {
  const double ric = norm(b.ricci);
  const double riem = norm(b.riemann);
  if (ric <= kZeroFloor * std::max(1.0, riem)) return 0.0;
  return ratio(norm(b.riem_on_ricci), riem * ric);
}

bool conformally_flat(const CurvatureBundle& b, double tol) {
  return norm(b.weyl) <= tol * std::max(1e-30, norm(b.riemann));
}

GeneratorField generator_field(const MetricSpec& spec, const CurvatureBundle& b,
                               const QCReport& report) {
  std::optional<GeneratorJets> lifted;
  if (report.A_con && !report.constant_curvature) lifted = extract_generator_jets(b, report);

  GeneratorField f;
  if (lifted) {
    Vec4 grad{};
    for (int i = 0; i < kDim; ++i) grad[i] = lifted->gamma.d(i);
    f.grad_gamma = grad;
  } else if (report.constant_curvature) {
    Vec4 grad{};
    for (int i = 0; i < kDim; ++i) grad[i] = b.grad_scalar[i] / 12.0;
    f.grad_gamma = grad;
  }

  if (spec.generator_hint) {
    f.A_con = eval_generator_hint(spec, b.point);
    f.source = GeneratorSource::Hint;
    return f;
  }
  if (lifted) {
    f.A_con = lifted->A_con;
    f.source = GeneratorSource::Extracted;
    return f;
  }
  throw Error(ErrorCode::MissingGeneratorField,
              "no generator hint and no rank-one generator to lift at this point");
}

GeneratorChecks generator_checks(const CurvatureBundle& b, const std::array<Jet3, kDim>& A) {
  Vec4 a{};
  for (int i = 0; i < kDim; ++i) a[i] = A[i].value();
  const double n = contract(b.g, a, a);
  if (std::abs(n + 1.0) > 1e-8) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "g(A, A) = %.17g, expected -1", n);
    throw Error(ErrorCode::NotUnitTimelike, buf);
  }

  std::array<Jet3, kDim> a_cov;
  for (int j = 0; j < kDim; ++j) {
    Jet3 acc;
    for (int p = 0; p < kDim; ++p) acc += b.g_jet(j, p) * A[p];
    a_cov[j] = acc;
  }
  Vec4 low{};
  for (int j = 0; j < kDim; ++j) low[j] = a_cov[j].value();

  Tensor2 nabla;  // D_i A_j
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) {
      double s = a_cov[j].d(i);
      for (int p = 0; p < kDim; ++p) s -= b.gamma(p, i, j) * low[p];
      nabla(i, j) = s;
    }

  GeneratorChecks c;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) c.div_A += b.ginv(i, j) * nabla(i, j);

  const double scale = std::max(1.0, norm(nabla));
  double sym = 0.0;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) {
      const double v = nabla(i, j) + nabla(j, i);
      sym += v * v;
    }
  c.killing_dev = std::sqrt(sym) / scale;

  // A_[i D_j A_k] = (A_i w_jk + A_j w_ki + A_k w_ij)/6, w_jk = D_j A_k - D_k A_j.
  auto w = [&](int j, int k) { return nabla(j, k) - nabla(k, j); };
  double vort = 0.0;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      for (int k = 0; k < kDim; ++k) {
        const double v = (low[i] * w(j, k) + low[j] * w(k, i) + low[k] * w(i, j)) / 6.0;
        vort += v * v;
      }
  c.vorticity_dev = std::sqrt(vort) / scale;
  return c;
}

DiagnosticsReport diagnose(const MetricSpec& spec, const CurvatureBundle& b,
                           const std::optional<QCReport>& report, double tol) {
  DiagnosticsReport d;
  d.tol = tol;
  d.codazzi_dev = codazzi_deviation(b);
  d.ricci_symmetric_dev = ricci_symmetric_deviation(b);
  d.semisymmetry_dev = semisymmetry_deviation(b);
  d.weyl_rel = ratio(norm(b.weyl), norm(b.riemann));
  d.flags["codazzi"] = d.codazzi_dev <= tol;
  d.flags["ricci_symmetric"] = d.ricci_symmetric_dev <= tol;
  d.flags["semisymmetric"] = d.semisymmetry_dev <= tol;
  d.flags["conformally_flat"] = conformally_flat(b, tol);

  QCReport empty;
  const QCReport& rep = report ? *report : empty;
  try {
    const GeneratorField f = generator_field(spec, b, rep);
    d.generator_source = f.source;
    const GeneratorChecks c = generator_checks(b, f.A_con);
    d.generator = c;
    d.flags["killing"] = c.killing_dev <= tol;
    d.flags["irrotational"] = c.vorticity_dev <= tol;
    d.flags["divergence_free"] = std::abs(c.div_A) <= tol;
    if (f.grad_gamma) {
      double s = 0.0;
      for (int i = 0; i < kDim; ++i) s += f.A_con[i].value() * (*f.grad_gamma)[i];
      d.gamma_along_A = s;
    }
  } catch (const Error& e) {
    switch (e.code()) {
      case ErrorCode::MissingGeneratorField:
      case ErrorCode::NotUnitTimelike:
      case ErrorCode::DivisionByZeroJet:
      case ErrorCode::DomainErrorJet:
        d.generator_note = e.what();
        break;
      default:
        throw;
    }
  }
  return d;
}

}  // namespace qcst
