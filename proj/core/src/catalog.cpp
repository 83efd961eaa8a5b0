#include <cmath>
#include <cstdlib>
#include <functional>

#include "qcst/error.hpp"
#include "qcst/metric.hpp"

namespace qcst {
namespace {

constexpr std::pair<double, double> kAny{-2.0, 2.0};
constexpr std::pair<double, double> kAngle{0.3, 2.8};

using Components = std::map<std::pair<int, int>, std::string>;

struct Recipe {
  BuiltinInfo info;
  // Numeric parameters that must be strictly positive.
  std::vector<std::string> positive;
  std::function<Components(const BuiltinParams&)> components;
  bool has_generator;
};

double parse_real(const std::string& name, const std::string& text) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || !std::isfinite(v)) {
    throw Error(ErrorCode::BadParameter, "parameter '" + name + "' must be a real number, got '" +
                                             text + "'");
  }
  return v;
}

std::string scale(const BuiltinParams& p) { return "(" + p.at("a") + ")^2"; }

const std::vector<Recipe>& recipes() {
  static const std::vector<Recipe> r = [] {
    std::vector<Recipe> v;
    v.push_back({{"minkowski", "-dt^2 + dx^2 + dy^2 + dz^2", {"t", "x", "y", "z"}, {},
                  {kAny, kAny, kAny, kAny}},
                 {},
                 [](const BuiltinParams&) {
                   return Components{{{0, 0}, "-1"}, {{1, 1}, "1"}, {{2, 2}, "1"}, {{3, 3}, "1"}};
                 },
                 false});
    v.push_back({{"flrw-flat", "-dt^2 + a(t)^2 (dx^2 + dy^2 + dz^2)", {"t", "x", "y", "z"},
                  {{"a", "t^2"}}, {{{0.5, 2.0}, kAny, kAny, kAny}}},
                 {},
                 [](const BuiltinParams& p) {
                   const std::string s = scale(p);
                   return Components{{{0, 0}, "-1"}, {{1, 1}, s}, {{2, 2}, s}, {{3, 3}, s}};
                 },
                 true});
    v.push_back({{"flrw-closed",
                  "-dt^2 + a(t)^2 (dchi^2 + sin(chi)^2 (dtheta^2 + sin(theta)^2 dphi^2))",
                  {"t", "chi", "theta", "phi"}, {{"a", "t^2"}},
                  {{{0.5, 2.0}, kAngle, kAngle, kAny}}},
                 {},
                 [](const BuiltinParams& p) {
                   const std::string s = scale(p);
                   return Components{{{0, 0}, "-1"},
                                     {{1, 1}, s},
                                     {{2, 2}, s + "*sin(chi)^2"},
                                     {{3, 3}, s + "*sin(chi)^2*sin(theta)^2"}};
                 },
                 true});
    v.push_back({{"flrw-open",
                  "-dt^2 + a(t)^2 (dchi^2 + sinh(chi)^2 (dtheta^2 + sin(theta)^2 dphi^2))",
                  {"t", "chi", "theta", "phi"}, {{"a", "t^2"}},
                  {{{0.5, 2.0}, {0.3, 2.0}, kAngle, kAny}}},
                 {},
                 [](const BuiltinParams& p) {
                   const std::string s = scale(p);
                   return Components{{{0, 0}, "-1"},
                                     {{1, 1}, s},
                                     {{2, 2}, s + "*sinh(chi)^2"},
                                     {{3, 3}, s + "*sinh(chi)^2*sin(theta)^2"}};
                 },
                 true});
    v.push_back({{"de-sitter", "-dt^2 + exp(2 sqrt(k) t) (dx^2 + dy^2 + dz^2)",
                  {"t", "x", "y", "z"}, {{"k", "1"}}, {{{-1.0, 1.0}, kAny, kAny, kAny}}},
                 {"k"},
                 [](const BuiltinParams&) {
                   const std::string s = "exp(2*sqrt(k)*t)";
                   return Components{{{0, 0}, "-1"}, {{1, 1}, s}, {{2, 2}, s}, {{3, 3}, s}};
                 },
                 false});
    v.push_back({{"einstein-static",
                  "-dt^2 + a0^2 (dchi^2 + sin(chi)^2 (dtheta^2 + sin(theta)^2 dphi^2))",
                  {"t", "chi", "theta", "phi"}, {{"a0", "1"}}, {{kAny, kAngle, kAngle, kAny}}},
                 {"a0"},
                 [](const BuiltinParams&) {
                   return Components{{{0, 0}, "-1"},
                                     {{1, 1}, "a0^2"},
                                     {{2, 2}, "a0^2*sin(chi)^2"},
                                     {{3, 3}, "a0^2*sin(chi)^2*sin(theta)^2"}};
                 },
                 true});
    v.push_back({{"schwarzschild",
                  "-(1 - 2M/r) dt^2 + dr^2/(1 - 2M/r) + r^2 (dtheta^2 + sin(theta)^2 dphi^2)",
                  {"t", "r", "theta", "phi"}, {{"M", "1"}}, {{kAny, {3.0, 6.0}, kAngle, kAny}}},
                 {"M"},
                 [](const BuiltinParams&) {
                   return Components{{{0, 0}, "-(1 - 2*M/r)"},
                                     {{1, 1}, "1/(1 - 2*M/r)"},
                                     {{2, 2}, "r^2"},
                                     {{3, 3}, "r^2*sin(theta)^2"}};
                 },
                 false});
    return v;
  }();
  return r;
}

}  // namespace

const std::vector<BuiltinInfo>& builtin_catalog() {
  static const std::vector<BuiltinInfo> infos = [] {
    std::vector<BuiltinInfo> out;
    for (const Recipe& r : recipes()) out.push_back(r.info);
    return out;
  }();
  return infos;
}

MetricSpec builtin(std::string_view name, const BuiltinParams& params) {
  const Recipe* recipe = nullptr;
  for (const Recipe& r : recipes())
    if (r.info.name == name) recipe = &r;
  if (!recipe) throw Error(ErrorCode::UnknownBuiltin, "unknown builtin metric '" + std::string(name) + "'");

  const bool is_flrw = recipe->info.defaults.count("a") != 0;
  BuiltinParams merged = recipe->info.defaults;
  for (const auto& [k, v] : params) {
    // flrw-* accept extra numeric parameters referenced from `a`.
    if (!merged.count(k) && !is_flrw) {
      throw Error(ErrorCode::BadParameter,
                  "builtin '" + std::string(name) + "' has no parameter '" + k + "'");
    }
    merged[k] = v;
  }

  MetricSpec spec;
  spec.coordinates = recipe->info.coordinates;
  for (const auto& [k, v] : merged) {
    if (is_flrw && k == "a") continue;
    const double value = parse_real(k, v);
    for (const std::string& pos : recipe->positive) {
      if (pos == k && !(value > 0.0)) {
        throw Error(ErrorCode::BadParameter, "parameter '" + k + "' must be positive");
      }
    }
    spec.parameters[k] = value;
  }

  const Components comps = recipe->components(merged);
  for (int i = 0; i < kDim; ++i) {
    for (int j = i; j < kDim; ++j) {
      const auto it = comps.find({i, j});
      if (it == comps.end()) {
        spec.components[component_slot(i, j)] = Expr::number(0.0);
        continue;
      }
      Expr e;
      try {
        e = parse_expression(it->second, spec.coordinates);
      } catch (const Error& err) {
        throw Error(ErrorCode::BadParameter, "cannot parse component '" + it->second +
                                                 "': " + err.what());
      }
      for (const std::string& p : parameters_of(e)) {
        if (!spec.parameters.count(p)) {
          throw Error(ErrorCode::BadParameter, "expression references unknown name '" + p + "'");
        }
      }
      spec.components[component_slot(i, j)] = e;
    }
  }

  if (recipe->has_generator) {
    spec.generator_hint = std::array<Expr, kDim>{Expr::number(1.0), Expr::number(0.0),
                                                 Expr::number(0.0), Expr::number(0.0)};
  }

  spec.label = std::string(name);
  if (is_flrw) spec.label += "(a=" + merged.at("a") + ")";
  return spec;
}

}  // namespace qcst
