#include "qcst/metric.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <set>

#include "qcst/error.hpp"

namespace qcst {

Tensor2 MetricJet::g_value() const {
  Tensor2 out;
  for (std::size_t k = 0; k < out.size; ++k) out.data[k] = g.data[k].value();
  return out;
}

Tensor2 MetricJet::ginv_value() const {
  Tensor2 out;
  for (std::size_t k = 0; k < out.size; ++k) out.data[k] = ginv.data[k].value();
  return out;
}

// ---------------------------------------------------------------------------
// File format

namespace {

struct Line {
  std::size_t number;
  std::string_view text;  // comment stripped, not trimmed
};

std::size_t skip_space(std::string_view s, std::size_t i) {
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
  return i;
}

std::size_t trim_end(std::string_view s) {
  std::size_t n = s.size();
  while (n > 0 && (s[n - 1] == ' ' || s[n - 1] == '\t' || s[n - 1] == '\r')) --n;
  return n;
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

[[noreturn]] void fail(ErrorCode code, const std::string& msg, std::size_t line, std::size_t col) {
  throw Error(code, msg).at(line, col);
}

// Splits a field list on top-level commas when present, otherwise on
// whitespace. Returns (offset, text) pairs relative to `s`.
std::vector<std::pair<std::size_t, std::string_view>> split_fields(std::string_view s) {
  std::vector<std::pair<std::size_t, std::string_view>> out;
  int depth = 0;
  bool has_comma = false;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) has_comma = true;
  }
  std::size_t i = 0;
  if (has_comma) {
    std::size_t start = 0;
    depth = 0;
    for (i = 0; i <= s.size(); ++i) {
      if (i < s.size()) {
        if (s[i] == '(') ++depth;
        if (s[i] == ')') --depth;
      }
      if (i == s.size() || (s[i] == ',' && depth == 0)) {
        std::string_view field = s.substr(start, i - start);
        const std::size_t lead = skip_space(field, 0);
        field = field.substr(lead);
        field = field.substr(0, trim_end(field));
        out.emplace_back(start + lead, field);
        start = i + 1;
      }
    }
    return out;
  }
  while (true) {
    i = skip_space(s, i);
    if (i >= s.size()) break;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    out.emplace_back(i, s.substr(i, j - i));
    i = j;
  }
  return out;
}

class Loader {
 public:
  Loader(std::string_view text, const ParamMap& overrides) : overrides_(overrides) {
    std::size_t start = 0;
    std::size_t number = 1;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      std::string_view line = text.substr(start, end - start);
      const std::size_t hash = line.find('#');
      if (hash != std::string_view::npos) line = line.substr(0, hash);
      lines_.push_back({number, line});
      ++number;
      if (end == text.size()) break;
      start = end + 1;
    }
  }

  MetricSpec run() {
    // Pass 1: declarations.
    for (const Line& l : lines_) {
      const std::size_t b = skip_space(l.text, 0);
      std::string_view body = l.text.substr(0, trim_end(l.text));
      if (b >= body.size()) continue;
      const std::string_view rest = body.substr(b);
      if (starts_with_key(rest, "coordinates")) {
        declare_coordinates(l, b);
      } else if (starts_with_key(rest, "label")) {
        if (label_seen_) fail(ErrorCode::DuplicateKey, "duplicate key 'label'", l.number, b + 1);
        label_seen_ = true;
        const std::size_t v = skip_space(body, b + body.substr(b).find(':') + 1);
        spec_.label = std::string(body.substr(v));
      } else if (rest.rfind("param", 0) == 0 && rest.size() > 5 &&
                 (rest[5] == ' ' || rest[5] == '\t')) {
        declare_param(l, b);
      }
    }
    if (!coordinates_seen_) {
      throw Error(ErrorCode::MissingComponent, "missing 'coordinates:' declaration");
    }
    for (const auto& [name, value] : overrides_) spec_.parameters[name] = value;

    // Pass 2: components and generator.
    std::array<bool, 10> seen{};
    for (const Line& l : lines_) {
      const std::size_t b = skip_space(l.text, 0);
      std::string_view body = l.text.substr(0, trim_end(l.text));
      if (b >= body.size()) continue;
      const std::string_view rest = body.substr(b);
      if (starts_with_key(rest, "coordinates") || starts_with_key(rest, "label") ||
          (rest.rfind("param", 0) == 0 && rest.size() > 5 &&
           (rest[5] == ' ' || rest[5] == '\t'))) {
        continue;
      }
      if (starts_with_key(rest, "generator")) {
        read_generator(l, body, b);
        continue;
      }
      if (rest.rfind("g_", 0) == 0) {
        read_component(l, body, b, seen);
        continue;
      }
      std::size_t k = 0;
      while (k < rest.size() && (std::isalnum(static_cast<unsigned char>(rest[k])) ||
                                 rest[k] == '_'))
        ++k;
      fail(ErrorCode::ParseError, "unknown key '" + std::string(rest.substr(0, k ? k : 1)) + "'",
           l.number, b + 1);
    }

    for (int i = 0; i < kDim; ++i) {
      const int s = component_slot(i, i);
      if (!seen[s]) {
        const std::string name = "g_" + spec_.coordinates[i] + spec_.coordinates[i];
        throw Error(ErrorCode::MissingComponent, "missing component '" + name + "'");
      }
    }
    for (int i = 0; i < kDim; ++i)
      for (int j = i + 1; j < kDim; ++j)
        if (!seen[component_slot(i, j)]) spec_.components[component_slot(i, j)] = Expr::number(0.0);
    return spec_;
  }

 private:
  static bool starts_with_key(std::string_view rest, std::string_view key) {
    if (rest.rfind(key, 0) != 0) return false;
    const std::size_t i = skip_space(rest, key.size());
    return i < rest.size() && rest[i] == ':';
  }

  void declare_coordinates(const Line& l, std::size_t b) {
    if (coordinates_seen_) fail(ErrorCode::DuplicateKey, "duplicate key 'coordinates'", l.number, b + 1);
    coordinates_seen_ = true;
    const std::size_t colon = l.text.find(':', b);
    const std::string_view list = l.text.substr(colon + 1);
    const auto fields = split_fields(list.substr(0, trim_end(list)));
    if (fields.size() != kDim) {
      fail(ErrorCode::ParseError,
           "expected 4 coordinate names, got " + std::to_string(fields.size()), l.number,
           colon + 2);
    }
    for (int i = 0; i < kDim; ++i) {
      const auto& [off, name] = fields[i];
      const std::size_t col = colon + 1 + off + 1;
      if (!is_identifier(name) || function_from_name(name) || name == "pi") {
        fail(ErrorCode::ParseError, "invalid coordinate name '" + std::string(name) + "'",
             l.number, col);
      }
      for (int j = 0; j < i; ++j) {
        if (spec_.coordinates[j] == name) {
          fail(ErrorCode::DuplicateKey, "duplicate coordinate '" + std::string(name) + "'",
               l.number, col);
        }
      }
      spec_.coordinates[i] = std::string(name);
    }
  }

  void declare_param(const Line& l, std::size_t b) {
    std::string_view body = l.text.substr(0, trim_end(l.text));
    std::size_t i = skip_space(body, b + 5);
    std::size_t j = i;
    while (j < body.size() && (std::isalnum(static_cast<unsigned char>(body[j])) || body[j] == '_')) ++j;
    const std::string name(body.substr(i, j - i));
    if (!is_identifier(name)) fail(ErrorCode::ParseError, "expected parameter name", l.number, i + 1);
    std::size_t eq = skip_space(body, j);
    if (eq >= body.size() || body[eq] != '=') {
      fail(ErrorCode::ParseError, "expected '=' after parameter name", l.number, eq + 1);
    }
    const std::size_t v = skip_space(body, eq + 1);
    const std::string text(body.substr(v));
    char* end = nullptr;
    const double value = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size() || !std::isfinite(value)) {
      fail(ErrorCode::ParseError, "parameter value must be a real number", l.number, v + 1);
    }
    if (spec_.parameters.count(name)) {
      fail(ErrorCode::DuplicateKey, "duplicate parameter '" + name + "'", l.number, i + 1);
    }
    spec_.parameters[name] = value;
  }

  Expr parse_at(std::string_view src, std::size_t line, std::size_t col0) {
    Expr e;
    try {
      e = parse_expression(src, spec_.coordinates);
    } catch (const Error& err) {
      throw err.at(line, col0 + err.offset().value_or(0));
    }
    for (const std::string& p : parameters_of(e)) {
      if (!spec_.parameters.count(p)) {
        std::size_t off = src.find(p);
        throw Error(ErrorCode::UnknownCoordinate,
                    "'" + p + "' is neither a coordinate nor a declared parameter")
            .at(line, col0 + (off == std::string_view::npos ? 0 : off));
      }
    }
    return e;
  }

  void read_component(const Line& l, std::string_view body, std::size_t b,
                      std::array<bool, 10>& seen) {
    std::size_t j = b + 2;
    while (j < body.size() && (std::isalnum(static_cast<unsigned char>(body[j])) || body[j] == '_')) ++j;
    const std::string_view suffix = body.substr(b + 2, j - b - 2);
    // Index names are the two coordinate names concatenated, optionally
    // separated by '_' (g_tt, g_thetatheta, g_theta_phi).
    std::set<std::pair<int, int>> splits;
    for (std::size_t cut = 1; cut < suffix.size(); ++cut) {
      const std::string_view lhs = suffix.substr(0, cut);
      std::string_view rhs = suffix.substr(cut);
      if (rhs.size() > 1 && rhs[0] == '_') rhs = rhs.substr(1);
      const auto li = std::find(spec_.coordinates.begin(), spec_.coordinates.end(), lhs);
      const auto ri = std::find(spec_.coordinates.begin(), spec_.coordinates.end(), rhs);
      if (li != spec_.coordinates.end() && ri != spec_.coordinates.end()) {
        const int a = static_cast<int>(li - spec_.coordinates.begin());
        const int c = static_cast<int>(ri - spec_.coordinates.begin());
        splits.emplace(std::min(a, c), std::max(a, c));
      }
    }
    const std::size_t matches = splits.size();
    const int row = matches ? splits.begin()->first : -1;
    const int col = matches ? splits.begin()->second : -1;
    if (matches == 0) {
      fail(ErrorCode::UnknownCoordinate,
           "component index '" + std::string(suffix) + "' does not name two coordinates",
           l.number, b + 3);
    }
    if (matches > 1) {
      fail(ErrorCode::ParseError, "ambiguous component index '" + std::string(suffix) + "'",
           l.number, b + 3);
    }
    const std::size_t eq = skip_space(body, j);
    if (eq >= body.size() || body[eq] != '=') {
      fail(ErrorCode::ParseError, "expected '=' after component name", l.number, eq + 1);
    }
    const int s = component_slot(row, col);
    if (seen[s]) {
      fail(ErrorCode::DuplicateKey, "duplicate component '" + std::string(body.substr(b, j - b)) + "'",
           l.number, b + 1);
    }
    seen[s] = true;
    const std::size_t v = skip_space(body, eq + 1);
    spec_.components[s] = parse_at(body.substr(v), l.number, v + 1);
  }

  void read_generator(const Line& l, std::string_view body, std::size_t b) {
    if (spec_.generator_hint) fail(ErrorCode::DuplicateKey, "duplicate key 'generator'", l.number, b + 1);
    const std::size_t colon = body.find(':', b);
    const std::string_view list = body.substr(colon + 1);
    const auto fields = split_fields(list);
    if (fields.size() != kDim) {
      fail(ErrorCode::ParseError, "generator needs 4 expressions", l.number, colon + 2);
    }
    std::array<Expr, kDim> hint;
    for (int i = 0; i < kDim; ++i) {
      hint[i] = parse_at(fields[i].second, l.number, colon + 1 + fields[i].first + 1);
    }
    spec_.generator_hint = std::move(hint);
  }

  const ParamMap& overrides_;
  std::vector<Line> lines_;
  MetricSpec spec_;
  bool coordinates_seen_ = false;
  bool label_seen_ = false;
};

}  // namespace

MetricSpec load_metric(std::string_view text, const ParamMap& overrides) {
  return Loader(text, overrides).run();
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

JetEnv seed(const MetricSpec& spec, const Vec4& point) {
  JetEnv env;
  for (int i = 0; i < kDim; ++i) env.emplace(spec.coordinates[i], Jet3::variable(i, point[i]));
  return env;
}

std::string describe(const MetricSpec& spec, const Vec4& p) {
  std::string s = "(";
  for (int i = 0; i < kDim; ++i) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s%s=%.17g", i ? ", " : "", spec.coordinates[i].c_str(), p[i]);
    s += buf;
  }
  return s + ")";
}

Tensor<2, Jet3> eval_components(const MetricSpec& spec, const Vec4& point) {
  const JetEnv env = seed(spec, point);
  Tensor<2, Jet3> g;
  for (int i = 0; i < kDim; ++i) {
    for (int j = i; j < kDim; ++j) {
      Jet3 v;
      try {
        v = evaluate(spec.component(i, j), env, spec.parameters);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::DivisionByZeroJet) {
          throw Error(ErrorCode::SingularMetric,
                      "component g_" + spec.coordinates[i] + spec.coordinates[j] +
                          " is singular at " + describe(spec, point));
        }
        throw;
      }
      for (double c : v.coeffs()) {
        if (!std::isfinite(c)) {
          throw Error(ErrorCode::SingularMetric, "component g_" + spec.coordinates[i] +
                                                     spec.coordinates[j] + " is not finite at " +
                                                     describe(spec, point));
        }
      }
      g(i, j) = v;
      g(j, i) = v;
    }
  }
  return g;
}

constexpr double kSingularRatio = 1e-13;

}  // namespace

Tensor2 metric_value(const MetricSpec& spec, const Vec4& point) {
  const Tensor<2, Jet3> g = eval_components(spec, point);
  Tensor2 out;
  for (std::size_t k = 0; k < out.size; ++k) out.data[k] = g.data[k].value();
  return out;
}

MetricJet eval_metric(const MetricSpec& spec, const Vec4& point) {
  MetricJet mj;
  mj.point = point;
  mj.g = eval_components(spec, point);

  Eigen::Matrix4d g0;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) g0(i, j) = mj.g(i, j).value();

  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> eig(g0, Eigen::EigenvaluesOnly);
  const Eigen::Vector4d lambda = eig.eigenvalues();
  const double scale = lambda.cwiseAbs().maxCoeff();
  if (!(scale > 0.0) || lambda.cwiseAbs().minCoeff() <= kSingularRatio * scale) {
    throw Error(ErrorCode::SingularMetric, "degenerate metric at " + describe(spec, point));
  }
  const int negatives = static_cast<int>((lambda.array() < 0.0).count());
  if (negatives != 1) {
    throw Error(ErrorCode::SignatureError,
                "metric has " + std::to_string(negatives) +
                    " negative eigenvalues; expected signature (-,+,+,+)");
  }
  mj.det_value = g0.determinant();

  // g = G0 + H with H nilpotent in the jet algebra (no value part), so
  // g^{-1} = (I + N + N^2 + N^3) G0^{-1} with N = -G0^{-1} H, exactly.
  const Eigen::Matrix4d g0inv = g0.inverse();
  Tensor<2, Jet3> n;
  for (int i = 0; i < kDim; ++i) {
    for (int j = 0; j < kDim; ++j) {
      Jet3 acc;
      for (int k = 0; k < kDim; ++k) {
        Jet3 h = mj.g(k, j);
        h.coeffs()[0] = 0.0;
        acc += (-g0inv(i, k)) * h;
      }
      n(i, j) = acc;
    }
  }
  Tensor<2, Jet3> term;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) term(i, j) = Jet3::constant(g0inv(i, j));
  Tensor<2, Jet3> sum = term;
  for (int power = 1; power <= Jet3::kDegree; ++power) {
    Tensor<2, Jet3> next;
    for (int i = 0; i < kDim; ++i) {
      for (int j = 0; j < kDim; ++j) {
        Jet3 acc;
        for (int k = 0; k < kDim; ++k) acc += n(i, k) * term(k, j);
        next(i, j) = acc;
      }
    }
    term = next;
    for (std::size_t k = 0; k < sum.size; ++k) sum.data[k] += term.data[k];
  }
  for (int i = 0; i < kDim; ++i) {
    for (int j = i; j < kDim; ++j) {
      Jet3 s = sum(i, j);
      if (i != j) {
        s += sum(j, i);
        s *= 0.5;
      }
      mj.ginv(i, j) = s;
      mj.ginv(j, i) = s;
    }
  }
  return mj;
}

std::array<Jet3, kDim> eval_generator_hint(const MetricSpec& spec, const Vec4& point) {
  if (!spec.generator_hint) {
    throw Error(ErrorCode::MissingGeneratorField, "metric has no generator hint");
  }
  const JetEnv env = seed(spec, point);
  std::array<Jet3, kDim> a;
  for (int i = 0; i < kDim; ++i) a[i] = evaluate((*spec.generator_hint)[i], env, spec.parameters);
  return a;
}

}  // namespace qcst
