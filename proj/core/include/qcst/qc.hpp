#pragma once

#include <array>
#include <optional>

#include "qcst/curvature.hpp"
#include "qcst/jet.hpp"
#include "qcst/tensor.hpp"

namespace qcst {

inline constexpr double kDefaultTol = 1e-8;

/// Pointwise quasi-constant-curvature decomposition
///   R_{hijk} = gamma (g_hk g_ij - g_hj g_ik)
///            + mu (g_hk A_i A_j + g_ij A_h A_k - g_hj A_i A_k - g_ik A_h A_j)
/// with A unit timelike (A_i A^i = -1, A^0 > 0).
struct QCReport {
  bool is_qc = false;
  double gamma = 0.0;
  double mu = 0.0;
  /// nu = R_ij A^i A^j; equals -R/4 on the constant-curvature branch.
  double nu = 0.0;
  std::optional<Vec4> A_cov;
  std::optional<Vec4> A_con;
  double riemann_residual_rel = 0.0;
  double weyl_norm_rel = 0.0;
  bool constant_curvature = false;
  double rank1_residual = 0.0;
  /// Sign picked for mu in the rank-one split (+1 or -1); 0 on the
  /// constant-curvature branch.
  int mu_sign = 0;
  /// Column of A^i A_j used to extract A.
  int dominant_column = -1;
  double tol = kDefaultTol;
};

/// n = 4 inversion of R = 6(2 gamma - mu), nu = 3(mu - gamma).
struct QCScalars {
  double gamma;
  double mu;
};
QCScalars qc_scalars_from_invariants(double R, double nu);

/// Throws NonDiagonalizableRicci when neither sign of mu yields a rank-one
/// projector within 1e3 * tol, BadParameter when tol <= 0.
QCReport detect_qc(const CurvatureBundle& bundle, double tol = kDefaultTol);

Tensor4 reconstruct_riemann(double gamma, double mu, const Vec4& A_cov, const Tensor2& g);

/// Generator and gamma lifted to jets from the jet-valued Ricci tensor,
/// replaying the branch choices recorded in `report`. Only the value and
/// first partials are meaningful.
struct GeneratorJets {
  std::array<Jet3, kDim> A_con;
  Jet3 gamma;
};

/// Empty when the report carries no generator (constant curvature, or the
/// rank-one split failed to give a timelike vector).
std::optional<GeneratorJets> extract_generator_jets(const CurvatureBundle& bundle,
                                                    const QCReport& report);

}  // namespace qcst
