#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>

#include "qcst/curvature.hpp"
#include "qcst/jet.hpp"
#include "qcst/metric.hpp"
#include "qcst/qc.hpp"

namespace qcst {

/// Relative magnitude below which a tensor is treated as exactly zero when
/// it would otherwise be the denominator of a deviation ratio.
inline constexpr double kZeroFloor = 1e-12;

/// ||D_l R_hk - D_k R_hl|| / ||D Ricci||; 0 when D Ricci vanishes.
double codazzi_deviation(const CurvatureBundle& b);

/// ||D Ricci|| / max(1, ||Ricci||).
double ricci_symmetric_deviation(const CurvatureBundle& b);

/// ||Q|| / (||Riemann|| ||Ricci||); 0 when Ricci vanishes.
double semisymmetry_deviation(const CurvatureBundle& b);

/// ||Weyl|| <= tol * ||Riemann||; flat space counts as conformally flat.
bool conformally_flat(const CurvatureBundle& b, double tol);

enum class GeneratorSource { Hint, Extracted };

/// Contravariant generator field with exact first partials.
struct GeneratorField {
  std::array<Jet3, kDim> A_con;
  GeneratorSource source = GeneratorSource::Hint;
  /// d_i gamma, present when gamma was lifted to jets.
  std::optional<Vec4> grad_gamma;
};

/// Prefers the metric's generator hint; otherwise lifts the QC extraction to
/// jets. Throws MissingGeneratorField when neither is available.
GeneratorField generator_field(const MetricSpec& spec, const CurvatureBundle& b,
                               const QCReport& report);

struct GeneratorChecks {
  double div_A = 0.0;
  double killing_dev = 0.0;
  double vorticity_dev = 0.0;
};

/// Throws NotUnitTimelike when |g(A, A) + 1| > 1e-8.
GeneratorChecks generator_checks(const CurvatureBundle& b, const std::array<Jet3, kDim>& A_con);

struct DiagnosticsReport {
  double codazzi_dev = 0.0;
  double ricci_symmetric_dev = 0.0;
  double semisymmetry_dev = 0.0;
  double weyl_rel = 0.0;
  std::optional<GeneratorChecks> generator;
  /// A^i d_i gamma when gamma is available as a field.
  std::optional<double> gamma_along_A;
  std::optional<GeneratorSource> generator_source;
  /// Reason generator checks were skipped.
  std::string generator_note;
  std::map<std::string, bool> flags;
  double tol = kDefaultTol;
};

/// Runs every check. Generator problems are recorded in generator_note,
/// never thrown.
DiagnosticsReport diagnose(const MetricSpec& spec, const CurvatureBundle& b,
                           const std::optional<QCReport>& report, double tol = kDefaultTol);

}  // namespace qcst
