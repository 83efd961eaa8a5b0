#include "cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "qcst/curvature.hpp"
#include "qcst/diagnostics.hpp"
#include "qcst/error.hpp"
#include "qcst/fluid.hpp"
#include "qcst/frg.hpp"
#include "qcst/metric.hpp"
#include "qcst/qc.hpp"
#include "qcst/verify.hpp"

namespace qcst::cli {
namespace {

// Flag values that are syntactically wrong; mapped to the usage exit code.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v == 0.0 ? 0.0 : v);
  return buf;
}
std::string num(double v) { return fmt("%.12g", v); }
std::string full(double v) { return fmt("%.17g", v); }
std::string vec(const Vec4& v) {
  return "(" + num(v[0]) + ", " + num(v[1]) + ", " + num(v[2]) + ", " + num(v[3]) + ")";
}

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::OrderOverflow:
    case ErrorCode::IndexOutOfRange:
      return kInternal;
    default:
      return kInput;
  }
}

std::pair<std::string, std::string> split_assignment(const std::string& text, const char* what) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw UsageError(std::string(what) + " must look like name=value, got '" + text + "'");
  }
  return {text.substr(0, eq), text.substr(eq + 1)};
}

double parse_real(const std::string& text, const char* what) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size()) {
    throw UsageError(std::string(what) + ": '" + text + "' is not a real number");
  }
  return v;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, ',')) out.push_back(cur);
  return out;
}

MetricSpec load_source(const std::string& source, const std::vector<std::string>& params) {
  constexpr std::string_view prefix = "builtin:";
  if (source.rfind(prefix, 0) == 0) {
    BuiltinParams bp;
    for (const std::string& p : params) {
      auto [k, v] = split_assignment(p, "--param");
      bp[k] = v;
    }
    return builtin(source.substr(prefix.size()), bp);
  }
  ParamMap overrides;
  for (const std::string& p : params) {
    auto [k, v] = split_assignment(p, "--param");
    char* end = nullptr;
    const double d = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size()) {
      throw Error(ErrorCode::BadParameter, "parameter '" + k + "' must be a real number");
    }
    overrides[k] = d;
  }
  std::ifstream in(source);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read metric file '" + source + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return load_metric(buf.str(), overrides);
}

Vec4 parse_point(const std::string& text, const MetricSpec& spec) {
  Vec4 x{};
  std::array<bool, kDim> seen{};
  for (const std::string& item : split_commas(text)) {
    auto [k, v] = split_assignment(item, "--point entry");
    int idx = -1;
    for (int i = 0; i < kDim; ++i)
      if (spec.coordinates[i] == k) idx = i;
    if (idx < 0) throw Error(ErrorCode::UnknownCoordinate, "'" + k + "' is not a coordinate of this metric");
    if (seen[idx]) throw Error(ErrorCode::DuplicateKey, "coordinate '" + k + "' given twice");
    seen[idx] = true;
    x[idx] = parse_real(v, "--point");
  }
  for (int i = 0; i < kDim; ++i) {
    if (!seen[i]) {
      throw Error(ErrorCode::MissingComponent, "--point is missing coordinate '" + spec.coordinates[i] + "'");
    }
  }
  return x;
}

// Writes through a temporary file renamed into place, so a failed run never
// leaves a partial output behind.
void write_output(const std::string& path, const std::function<void(std::ostream&)>& body) {
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw Error(ErrorCode::ParseError, "cannot open '" + path + "' for writing");
    try {
      body(os);
    } catch (...) {
      os.close();
      std::filesystem::remove(tmp);
      throw;
    }
    os.flush();
    if (!os) {
      std::filesystem::remove(tmp);
      throw Error(ErrorCode::ParseError, "write to '" + path + "' failed");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error(ErrorCode::ParseError, "cannot rename output into '" + path + "': " + ec.message());
  }
}

void emit(const std::string& out_path, std::ostream& out,
          const std::function<void(std::ostream&)>& body) {
  if (out_path.empty()) {
    body(out);
  } else {
    write_output(out_path, body);
  }
}

void convention_sheet(std::ostream& os, double kappa) {
  os << "# signature (-,+,+,+); geometric units\n"
     << "# [D_j, D_k] V^h = K^h_ijk V^i, stored R_hijk = -g_hp K^p_ijk "
        "(de Sitter: R_hijk = k(g_hk g_ij - g_hj g_ik), R = 12k > 0)\n"
     << "# R_ij = g^hk R_hijk, Q_ijlm = (D_l D_m - D_m D_l) R_ij\n"
     << "# T_ij = (R_ij - R g_ij / 2) / kappa^2, kappa = " << num(kappa) << "\n";
}

// ------------------------------------------------------------------ analyze

struct PointResult {
  Vec4 x{};
  CurvatureBundle b;
  std::optional<QCReport> qc;
  std::string qc_error;
  std::optional<FluidState> fluid;
  std::optional<EcFlags> ec;
  DiagnosticsReport diag;
};

PointResult analyze_point(const MetricSpec& spec, const Vec4& x, double kappa, double tol) {
  PointResult r;
  r.x = x;
  r.b = compute_curvature(eval_metric(spec, x));
  try {
    r.qc = detect_qc(r.b, tol);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NonDiagonalizableRicci) throw;
    r.qc_error = e.what();
  }
  if (r.qc && r.qc->is_qc) {
    r.fluid = fluid_from_qc(r.qc->gamma, r.qc->mu, kappa);
    r.ec = gr_energy_conditions(r.fluid->p, r.fluid->sigma);
  }
  r.diag = diagnose(spec, r.b, r.qc, tol);
  return r;
}

const char* yn(bool b) { return b ? "true" : "false"; }

void text_point(std::ostream& os, const MetricSpec& spec, const PointResult& r) {
  os << "point";
  for (int i = 0; i < kDim; ++i) os << ' ' << spec.coordinates[i] << '=' << num(r.x[i]);
  os << "\n  curvature: R = " << num(r.b.scalar) << ", |Ricci| = " << num(norm(r.b.ricci))
     << ", |Riemann| = " << num(norm(r.b.riemann)) << ", |Weyl| = " << num(norm(r.b.weyl)) << "\n";
  if (!r.qc) {
    os << "  qc: not detected (" << r.qc_error << ")\n";
  } else {
    const QCReport& q = *r.qc;
    os << "  qc: is_qc = " << yn(q.is_qc) << ", gamma = " << num(q.gamma) << ", mu = " << num(q.mu)
       << ", nu = " << num(q.nu) << ", constant_curvature = " << yn(q.constant_curvature) << "\n";
    if (q.A_con) os << "      A^i = " << vec(*q.A_con) << ", A_i = " << vec(*q.A_cov) << "\n";
    os << "      riemann_residual_rel = " << num(q.riemann_residual_rel)
       << ", weyl_norm_rel = " << num(q.weyl_norm_rel) << ", rank1_residual = " << num(q.rank1_residual)
       << "\n";
  }
  if (r.fluid) {
    const FluidState& f = *r.fluid;
    os << "  fluid: p = " << num(f.p) << ", sigma = " << num(f.sigma)
       << ", w = " << (f.w ? num(*f.w) : std::string("undefined")) << ", era = " << to_string(f.era)
       << "\n";
    os << "  energy conditions: NEC = " << r.ec->nec << ", WEC = " << r.ec->wec
       << ", DEC = " << r.ec->dec << ", SEC = " << r.ec->sec << "\n";
  } else {
    os << "  fluid: not applicable (not a QC point)\n";
  }
  const DiagnosticsReport& d = r.diag;
  os << "  diagnostics: codazzi_dev = " << num(d.codazzi_dev)
     << ", ricci_symmetric_dev = " << num(d.ricci_symmetric_dev)
     << ", semisymmetry_dev = " << num(d.semisymmetry_dev) << ", weyl_rel = " << num(d.weyl_rel)
     << "\n      conformally_flat = " << yn(d.flags.at("conformally_flat"))
     << ", codazzi = " << yn(d.flags.at("codazzi"))
     << ", ricci_symmetric = " << yn(d.flags.at("ricci_symmetric"))
     << ", semisymmetric = " << yn(d.flags.at("semisymmetric")) << "\n";
  if (d.generator) {
    os << "  generator ("
       << (*d.generator_source == GeneratorSource::Hint ? "hint" : "extracted")
       << "): div_A = " << num(d.generator->div_A) << ", killing_dev = " << num(d.generator->killing_dev)
       << ", vorticity_dev = " << num(d.generator->vorticity_dev);
    if (d.gamma_along_A) os << ", A(gamma) = " << num(*d.gamma_along_A);
    os << "\n";
  } else {
    os << "  generator: unavailable (" << d.generator_note << ")\n";
  }
}

constexpr const char* kAnalyzeCsvHeader =
    "x0,x1,x2,x3,R,ricci_norm,weyl_norm,is_qc,gamma,mu,nu,constant_curvature,riemann_residual_rel,"
    "weyl_norm_rel,rank1_residual,A0,A1,A2,A3,p,sigma,w,era,codazzi_dev,ricci_symmetric_dev,"
    "semisymmetry_dev,conformally_flat,div_A,killing_dev,vorticity_dev";

void csv_point(std::ostream& os, const PointResult& r) {
  std::vector<std::string> f;
  for (double v : r.x) f.push_back(full(v));
  f.push_back(full(r.b.scalar));
  f.push_back(full(norm(r.b.ricci)));
  f.push_back(full(norm(r.b.weyl)));
  if (r.qc) {
    const QCReport& q = *r.qc;
    f.push_back(q.is_qc ? "1" : "0");
    for (double v : {q.gamma, q.mu, q.nu}) f.push_back(full(v));
    f.push_back(q.constant_curvature ? "1" : "0");
    for (double v : {q.riemann_residual_rel, q.weyl_norm_rel, q.rank1_residual}) f.push_back(full(v));
    for (int i = 0; i < kDim; ++i) f.push_back(q.A_con ? full((*q.A_con)[i]) : "");
  } else {
    f.push_back("0");
    for (int i = 0; i < 11; ++i) f.push_back("");
  }
  if (r.fluid) {
    f.push_back(full(r.fluid->p));
    f.push_back(full(r.fluid->sigma));
    f.push_back(r.fluid->w ? full(*r.fluid->w) : "");
    f.push_back(std::string(to_string(r.fluid->era)));
  } else {
    for (int i = 0; i < 4; ++i) f.push_back("");
  }
  const DiagnosticsReport& d = r.diag;
  for (double v : {d.codazzi_dev, d.ricci_symmetric_dev, d.semisymmetry_dev}) f.push_back(full(v));
  f.push_back(d.flags.at("conformally_flat") ? "1" : "0");
  if (d.generator) {
    for (double v : {d.generator->div_A, d.generator->killing_dev, d.generator->vorticity_dev})
      f.push_back(full(v));
  } else {
    for (int i = 0; i < 3; ++i) f.push_back("");
  }
  for (std::size_t i = 0; i < f.size(); ++i) os << (i ? "," : "") << f[i];
  os << '\n';
}

double default_tol() {
  if (const char* env = std::getenv("QCST_TOL")) {
    const double v = parse_real(env, "QCST_TOL");
    if (!(v > 0.0)) throw UsageError("QCST_TOL must be positive");
    return v;
  }
  return kDefaultTol;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quasi-constant curvature spacetime toolkit"};
  app.name("qcst");
  app.require_subcommand(1);

  std::string metric, out_path, format = "text", suite, fault;
  std::vector<std::string> params, points;
  double kappa = 1.0;
  std::optional<double> tol_flag;
  int terms = 64;
  double mu_min = 1.0, mu_max = 2.0, gamma_min = 0.5, gamma_max = 2.0;
  int mu_steps = 50, gamma_steps = 50;

  auto add_tol = [&](CLI::App* sub) {
    sub->add_option("--tol", tol_flag, "Relative tolerance (default 1e-8, or $QCST_TOL)");
  };

  CLI::App* analyze = app.add_subcommand("analyze", "Curvature, QC structure, fluid and diagnostics at points");
  analyze->add_option("--metric", metric, "Metric file path or builtin:<name>")->required();
  analyze->add_option("--param", params, "Parameter override name=value (repeatable)");
  analyze->add_option("--point", points, "Point as coord=value,... (repeatable)")->required();
  analyze->add_option("--kappa", kappa, "Gravitational coupling kappa > 0");
  add_tol(analyze);
  analyze->add_option("--format", format, "text or csv")->check(CLI::IsMember({"text", "csv"}));
  analyze->add_option("--out", out_path, "Write the report to this file");

  CLI::App* scan = app.add_subcommand("ec-scan", "Effective energy conditions of Model A over a (mu, gamma) grid");
  scan->add_option("--terms", terms, "Model A series terms L >= 2");
  scan->add_option("--kappa", kappa, "Gravitational coupling kappa > 0");
  scan->add_option("--mu-min", mu_min);
  scan->add_option("--mu-max", mu_max);
  scan->add_option("--mu-steps", mu_steps);
  scan->add_option("--gamma-min", gamma_min);
  scan->add_option("--gamma-max", gamma_max);
  scan->add_option("--gamma-steps", gamma_steps);
  scan->add_option("--format", format, "csv")->check(CLI::IsMember({"csv"}));
  scan->add_option("--out", out_path, "CSV output file (default: standard output)");

  CLI::App* catalog = app.add_subcommand("catalog", "List builtin metrics");
  catalog->add_option("--format", format, "text or csv")->check(CLI::IsMember({"text", "csv"}));

  CLI::App* verify_cmd = app.add_subcommand("verify", "Run the verification suites");
  verify_cmd->add_option("--suite", suite, "Run suites whose name starts with this prefix");
  add_tol(verify_cmd);
  verify_cmd->add_option("--inject-fault", fault)->group("")->check(CLI::IsMember({"riemann-sign"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    const double tol = tol_flag ? *tol_flag : default_tol();
    if (!(tol > 0.0)) throw UsageError("--tol must be positive");

    if (*analyze) {
      check_kappa(kappa);
      const MetricSpec spec = load_source(metric, params);
      std::vector<Vec4> xs;
      for (const std::string& p : points) xs.push_back(parse_point(p, spec));
      std::vector<PointResult> results;
      for (const Vec4& x : xs) results.push_back(analyze_point(spec, x, kappa, tol));
      emit(out_path, out, [&](std::ostream& os) {
        if (format == "csv") {
          os << kAnalyzeCsvHeader << '\n';
          for (const PointResult& r : results) csv_point(os, r);
          return;
        }
        convention_sheet(os, kappa);
        os << "# metric: " << (spec.label.empty() ? metric : spec.label) << " in coordinates ("
           << spec.coordinates[0] << ", " << spec.coordinates[1] << ", " << spec.coordinates[2]
           << ", " << spec.coordinates[3] << "), tol = " << num(tol) << "\n";
        for (const PointResult& r : results) text_point(os, spec, r);
      });
      return kOk;
    }

    if (*scan) {
      const FRModel model = model_a(terms);
      const ScanResult res = scan_grid({mu_min, mu_max, mu_steps}, {gamma_min, gamma_max, gamma_steps},
                                       model, kappa);
      if (out_path.empty()) {
        write_csv(out, res.records);
        write_summary(err, res.summary);
      } else {
        write_output(out_path, [&](std::ostream& os) { write_csv(os, res.records); });
        write_summary(out, res.summary);
      }
      return kOk;
    }

    if (*catalog) {
      if (format == "csv") out << "name,coordinates,defaults,line_element\n";
      for (const BuiltinInfo& info : builtin_catalog()) {
        std::string coords = info.coordinates[0] + " " + info.coordinates[1] + " " +
                             info.coordinates[2] + " " + info.coordinates[3];
        std::string defaults;
        for (const auto& [k, v] : info.defaults) defaults += (defaults.empty() ? "" : " ") + k + "=" + v;
        if (format == "csv") {
          out << info.name << "," << coords << "," << defaults << ",\"" << info.chart << "\"\n";
        } else {
          out << info.name << "\n  coordinates: " << coords << "\n  ds^2 = " << info.chart << "\n";
          if (!defaults.empty()) out << "  defaults: " << defaults << "\n";
        }
      }
      return kOk;
    }

    if (*verify_cmd) {
      verify::Options opt;
      opt.suite = suite;
      opt.tol = tol;
      if (fault == "riemann-sign") opt.fault = verify::Fault::RiemannSign;
      std::vector<verify::CheckResult> results;
      try {
        results = verify::run(opt);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::BadParameter) throw UsageError(e.what());
        err << "qcst: verification harness fault: " << e.what() << "\n";
        return kInternal;
      }
      int failed = 0;
      for (const auto& r : results) {
        out << verify::format(r) << "\n";
        failed += !r.pass;
      }
      out << "# " << results.size() - static_cast<std::size_t>(failed) << "/" << results.size()
          << " checks passed\n";
      return failed ? kInternal : kOk;
    }
  } catch (const UsageError& e) {
    err << "qcst: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "qcst: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "qcst: internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}

}  // namespace qcst::cli
