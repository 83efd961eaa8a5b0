#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "qcst/fluid.hpp"

namespace qcst {

/// F(R) model at constant scalar curvature.
struct FRModel {
  std::string label;
  std::function<double(double)> F;
  std::function<double(double)> F_R;
  /// Open interval of R on which F and F_R are finite.
  double domain_lo = -INFINITY;
  double domain_hi = INFINITY;

  bool in_domain(double R) const { return R > domain_lo && R < domain_hi; }
};

/// F = e^R log R - log R - R - sum_{l=2}^{L} R^l/(l l!), F_R by term-wise
/// differentiation. Evaluated in extended precision. Domain (0, 700).
/// Throws BadTermCount when terms < 2.
FRModel model_a(int terms = 64);

/// F = R, F_R = 1 on the whole real line.
FRModel gr_model();

/// "A" (alias "model-a") or "gr". Throws BadParameter otherwise.
FRModel model_by_name(std::string_view name, int terms = 64);

/// R = 6(2 gamma - mu).
inline double scalar_from_qc(double gamma, double mu) { return 6.0 * (2.0 * gamma - mu); }

struct PressureDensity {
  double p;
  double sigma;
};

/// p = (3 gamma - mu) F_R/kappa^2 - F/(2 kappa^2),
/// sigma = 3(mu - gamma) F_R/kappa^2 + F/(2 kappa^2), at R = 6(2 gamma - mu).
/// Throws DomainError, NonPositiveKappa.
PressureDensity fr_pressure_density(double gamma, double mu, const FRModel& model, double kappa);

struct Effective {
  double p_eff;
  double sigma_eff;
};

/// p_eff = p + (F - R F_R)/(2 kappa^2), sigma_eff = sigma - (F - R F_R)/(2 kappa^2).
Effective effective_quantities(double p, double sigma, double R, const FRModel& model,
                               double kappa);

/// Closed form of effective_quantities after fr_pressure_density:
///   sigma_eff = (6 mu - 6 gamma + R) F_R/(2 kappa^2),
///   p_eff     = (6 gamma - 2 mu - R) F_R/(2 kappa^2).
Effective effective_from_qc(double gamma, double mu, const FRModel& model, double kappa);

/// Same predicates as gr_energy_conditions, applied to effective quantities.
EcFlags ec_flags_eff(double sigma_eff, double p_eff);

struct ECRecord {
  double mu, gamma, R, F, F_R, sigma_eff, p_eff;
  bool nec, wec, dec, sec;
};

struct GridAxis {
  double min;
  double max;
  int steps;
  double at(int i) const;
};

struct ScanSummary {
  std::size_t total = 0;    // steps_mu * steps_gamma
  std::size_t skipped = 0;  // R outside the model domain
  std::size_t nec = 0, wec = 0, dec = 0, sec = 0;
};

struct ScanResult {
  std::vector<ECRecord> records;  // mu outer, gamma inner
  ScanSummary summary;
};

/// Throws EmptyGrid (steps < 2 or every cell skipped), BadParameter for
/// non-finite bounds, NonPositiveKappa.
ScanResult scan_grid(const GridAxis& mu, const GridAxis& gamma, const FRModel& model,
                     double kappa, unsigned threads = 0);

inline constexpr std::string_view kCsvHeader = "mu,gamma,R,F,F_R,sigma_eff,p_eff,nec,wec,dec,sec";

void write_csv(std::ostream& os, const std::vector<ECRecord>& records);
void write_summary(std::ostream& os, const ScanSummary& s);

}  // namespace qcst
