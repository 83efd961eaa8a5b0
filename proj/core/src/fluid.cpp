#include "qcst/fluid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qcst/error.hpp"

namespace qcst {

std::string_view to_string(Era era) {
  switch (era) {
    case Era::Vacuum: return "Vacuum";
    case Era::DarkMatter: return "DarkMatter";
    case Era::Dust: return "Dust";
    case Era::Stiff: return "Stiff";
    case Era::Radiation: return "Radiation";
    case Era::Phantom: return "Phantom";
    case Era::AcceleratingBoundary: return "AcceleratingBoundary";
    case Era::Quintessence: return "Quintessence";
    case Era::Decelerating: return "Decelerating";
  }
  return "?";
}

double era_epsilon(double p, double sigma) {
  return 1e-9 * std::max({1.0, std::abs(p), std::abs(sigma)});
}

Era classify_era(double p, double sigma) {
  const double eps = era_epsilon(p, sigma);
  if (std::abs(p) <= eps && std::abs(sigma) <= eps) return Era::Vacuum;
  if (std::abs(p + sigma) <= eps) return Era::DarkMatter;
  if (std::abs(p) <= eps) return Era::Dust;
  if (std::abs(p - sigma) <= eps) return Era::Stiff;
  if (std::abs(p - sigma / 3.0) <= eps) return Era::Radiation;
  const double w = sigma != 0.0 ? p / sigma : std::copysign(std::numeric_limits<double>::infinity(), p);
  if (w < -1.0) return Era::Phantom;
  if (std::abs(w + 1.0 / 3.0) <= eps) return Era::AcceleratingBoundary;
  if (w < 0.0) return Era::Quintessence;
  return Era::Decelerating;
}

void check_kappa(double kappa) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw Error(ErrorCode::NonPositiveKappa, "kappa must be a positive finite number");
  }
}

FluidState fluid_from_qc(double gamma, double mu, double kappa) {
  check_kappa(kappa);
  const double k2 = kappa * kappa;
  FluidState f;
  f.kappa = kappa;
  f.p = (-3.0 * gamma + 2.0 * mu) / k2;
  f.sigma = 3.0 * gamma / k2;
  f.era = classify_era(f.p, f.sigma);
  if (std::abs(f.sigma) > era_epsilon(f.p, f.sigma)) f.w = f.p / f.sigma;
  return f;
}

Tensor2 stress_energy_from_einstein(const CurvatureBundle& b, double kappa) {
  check_kappa(kappa);
  const double k2 = kappa * kappa;
  Tensor2 t;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) t(i, j) = (b.ricci(i, j) - 0.5 * b.scalar * b.g(i, j)) / k2;
  return t;
}

FluidProjection project_stress_energy(const Tensor2& T, const Tensor2& ginv, const Vec4& A) {
  double sigma = 0.0;
  double trace_h = 0.0;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) {
      sigma += T(i, j) * A[i] * A[j];
      trace_h += (ginv(i, j) + A[i] * A[j]) * T(i, j);
    }
  return {sigma, trace_h / 3.0};
}

EcFlags gr_energy_conditions(double p, double sigma) {
  const double eps = era_epsilon(p, sigma);
  EcFlags f;
  f.nec = sigma + p >= -eps;
  f.wec = sigma >= -eps && f.nec;
  f.dec = sigma >= -eps && sigma + p >= -eps && sigma - p >= -eps;
  f.sec = sigma + 3.0 * p >= -eps;
  return f;
}

}  // namespace qcst
