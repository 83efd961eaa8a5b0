#include "qcst/frg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <thread>

#include "qcst/error.hpp"

namespace qcst {
namespace {

// sum_{l=2}^{L} R^l/(l l!)  and  sum_{l=2}^{L} R^{l-1}/l!
struct SeriesA {
  long double f_tail = 0.0L;
  long double fr_tail = 0.0L;
};

SeriesA series_a(long double r, int terms) {
  SeriesA s;
  long double power = r;     // R^{l-1}
  long double fact = 1.0L;   // l!
  for (int l = 2; l <= terms; ++l) {
    fact *= l;
    const long double fr_term = power / fact;
    s.fr_tail += fr_term;
    s.f_tail += fr_term * r / l;
    power *= r;
  }
  return s;
}

void require_domain(const FRModel& m, double R) {
  if (!m.in_domain(R)) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "R = %.17g outside the domain (%g, %g) of model %s", R,
                  m.domain_lo, m.domain_hi, m.label.c_str());
    throw Error(ErrorCode::DomainError, buf);
  }
}

}  // namespace

FRModel model_a(int terms) {
  if (terms < 2) {
    throw Error(ErrorCode::BadTermCount,
                "Model A needs at least 2 series terms, got " + std::to_string(terms));
  }
  FRModel m;
  m.label = "A(L=" + std::to_string(terms) + ")";
  m.domain_lo = 0.0;
  m.domain_hi = 700.0;
  m.F = [terms](double R) {
    const long double r = R;
    const long double lg = std::log(r);
    const SeriesA s = series_a(r, terms);
    return static_cast<double>(std::exp(r) * lg - lg - r - s.f_tail);
  };
  m.F_R = [terms](double R) {
    const long double r = R;
    const long double e = std::exp(r);
    const SeriesA s = series_a(r, terms);
    return static_cast<double>(e * std::log(r) + e / r - 1.0L / r - 1.0L - s.fr_tail);
  };
  return m;
}

FRModel gr_model() {
  FRModel m;
  m.label = "GR";
  m.F = [](double R) { return R; };
  m.F_R = [](double) { return 1.0; };
  return m;
}

FRModel model_by_name(std::string_view name, int terms) {
  if (name == "A" || name == "a" || name == "model-a") return model_a(terms);
  if (name == "gr" || name == "GR") return gr_model();
  throw Error(ErrorCode::BadParameter, "unknown F(R) model '" + std::string(name) + "'");
}

PressureDensity fr_pressure_density(double gamma, double mu, const FRModel& model, double kappa) {
  check_kappa(kappa);
  const double R = scalar_from_qc(gamma, mu);
  require_domain(model, R);
  const double k2 = kappa * kappa;
  const double F = model.F(R);
  const double FR = model.F_R(R);
  return {(3.0 * gamma - mu) * FR / k2 - F / (2.0 * k2),
          3.0 * (mu - gamma) * FR / k2 + F / (2.0 * k2)};
}

Effective effective_quantities(double p, double sigma, double R, const FRModel& model,
                               double kappa) {
  check_kappa(kappa);
  require_domain(model, R);
  const double shift = (model.F(R) - R * model.F_R(R)) / (2.0 * kappa * kappa);
  return {p + shift, sigma - shift};
}

Effective effective_from_qc(double gamma, double mu, const FRModel& model, double kappa) {
  check_kappa(kappa);
  const double R = scalar_from_qc(gamma, mu);
  require_domain(model, R);
  const double c = model.F_R(R) / (2.0 * kappa * kappa);
  return {(6.0 * gamma - 2.0 * mu - R) * c, (6.0 * mu - 6.0 * gamma + R) * c};
}

EcFlags ec_flags_eff(double sigma_eff, double p_eff) {
  return gr_energy_conditions(p_eff, sigma_eff);
}

double GridAxis::at(int i) const {
  if (i == steps - 1) return max;
  return min + (max - min) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

ScanResult scan_grid(const GridAxis& mu, const GridAxis& gamma, const FRModel& model,
                     double kappa, unsigned threads) {
  check_kappa(kappa);
  if (mu.steps < 2 || gamma.steps < 2) {
    throw Error(ErrorCode::EmptyGrid, "each grid axis needs at least 2 steps");
  }
  for (double v : {mu.min, mu.max, gamma.min, gamma.max}) {
    if (!std::isfinite(v)) throw Error(ErrorCode::BadParameter, "grid bounds must be finite");
  }

  const std::size_t nmu = static_cast<std::size_t>(mu.steps);
  const std::size_t ngamma = static_cast<std::size_t>(gamma.steps);
  std::vector<std::optional<ECRecord>> cells(nmu * ngamma);

  auto eval_row = [&](std::size_t i) {
    const double m = mu.at(static_cast<int>(i));
    for (std::size_t j = 0; j < ngamma; ++j) {
      const double g = gamma.at(static_cast<int>(j));
      const double R = scalar_from_qc(g, m);
      if (!model.in_domain(R)) continue;
      const Effective e = effective_from_qc(g, m, model, kappa);
      const EcFlags f = ec_flags_eff(e.sigma_eff, e.p_eff);
      cells[i * ngamma + j] =
          ECRecord{m, g, R, model.F(R), model.F_R(R), e.sigma_eff, e.p_eff, f.nec, f.wec, f.dec, f.sec};
    }
  };

  unsigned nthreads = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  nthreads = static_cast<unsigned>(std::min<std::size_t>(nthreads, nmu));
  if (nthreads <= 1) {
    for (std::size_t i = 0; i < nmu; ++i) eval_row(i);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nthreads; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t i = t; i < nmu; i += nthreads) eval_row(i);
      });
    }
    for (auto& th : pool) th.join();
  }

  ScanResult out;
  out.summary.total = cells.size();
  for (const auto& c : cells) {
    if (!c) {
      ++out.summary.skipped;
      continue;
    }
    out.records.push_back(*c);
    out.summary.nec += c->nec;
    out.summary.wec += c->wec;
    out.summary.dec += c->dec;
    out.summary.sec += c->sec;
  }
  if (out.records.empty()) {
    throw Error(ErrorCode::EmptyGrid, "every grid cell lies outside the model domain");
  }
  return out;
}

void write_csv(std::ostream& os, const std::vector<ECRecord>& records) {
  os << kCsvHeader << '\n';
  char buf[512];
  for (const ECRecord& r : records) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d,%d,%d,%d\n", r.mu,
                  r.gamma, r.R, r.F, r.F_R, r.sigma_eff, r.p_eff, r.nec, r.wec, r.dec, r.sec);
    os << buf;
  }
}

void write_summary(std::ostream& os, const ScanSummary& s) {
  const std::size_t evaluated = s.total - s.skipped;
  auto frac = [&](std::size_t n) {
    return evaluated ? static_cast<double>(n) / static_cast<double>(evaluated) : 0.0;
  };
  char buf[256];
  std::snprintf(buf, sizeof buf, "grid cells: %zu\nskipped (R outside domain): %zu\nevaluated: %zu\n",
                s.total, s.skipped, evaluated);
  os << buf;
  std::snprintf(buf, sizeof buf,
                "fraction satisfied: NEC %.6f  WEC %.6f  DEC %.6f  SEC %.6f\n", frac(s.nec),
                frac(s.wec), frac(s.dec), frac(s.sec));
  os << buf;
}

}  // namespace qcst
