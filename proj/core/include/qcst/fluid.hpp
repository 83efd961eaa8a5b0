#pragma once

#include <optional>
#include <string_view>

#include "qcst/curvature.hpp"
#include "qcst/tensor.hpp"

namespace qcst {

enum class Era {
  Vacuum,
  DarkMatter,
  Dust,
  Stiff,
  Radiation,
  Phantom,
  AcceleratingBoundary,
  Quintessence,
  Decelerating,
};

std::string_view to_string(Era era);

/// Band half-width around each era boundary: 1e-9 * max(1, |p|, |sigma|).
double era_epsilon(double p, double sigma);

struct FluidState {
  double p = 0.0;
  double sigma = 0.0;
  double kappa = 1.0;
  Era era = Era::Vacuum;
  std::optional<double> w;  // present iff |sigma| > era_epsilon
};

/// First match in the order Vacuum, DarkMatter, Dust, Stiff, Radiation,
/// Phantom (w < -1), AcceleratingBoundary (|w + 1/3| <= eps),
/// Quintessence (w < 0), Decelerating.
Era classify_era(double p, double sigma);

/// p = (-3 gamma + 2 mu)/kappa^2, sigma = 3 gamma/kappa^2. Throws NonPositiveKappa.
FluidState fluid_from_qc(double gamma, double mu, double kappa);

/// T_ij = (R_ij - R g_ij / 2)/kappa^2. Throws NonPositiveKappa.
Tensor2 stress_energy_from_einstein(const CurvatureBundle& bundle, double kappa);

/// sigma = T_ij A^i A^j, p = h^ij T_ij / 3 with h^ij = g^ij + A^i A^j.
struct FluidProjection {
  double sigma;
  double p;
};
FluidProjection project_stress_energy(const Tensor2& T, const Tensor2& ginv, const Vec4& A_con);

struct EcFlags {
  bool nec = false;
  bool wec = false;
  bool dec = false;
  bool sec = false;
  friend bool operator==(const EcFlags&, const EcFlags&) = default;
};

/// Classical energy conditions on (p, sigma), each with slack -era_epsilon.
EcFlags gr_energy_conditions(double p, double sigma);

void check_kappa(double kappa);

}  // namespace qcst
