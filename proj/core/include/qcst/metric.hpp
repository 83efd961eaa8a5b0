#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qcst/expr.hpp"
#include "qcst/jet.hpp"
#include "qcst/tensor.hpp"

namespace qcst {

/// Slot of g_{ij} in MetricSpec::components: upper triangle, row-major
/// (tt, tx, ty, tz, xx, xy, ...).
constexpr int component_slot(int i, int j) {
  if (i > j) std::swap(i, j);
  return i * kDim - i * (i - 1) / 2 + (j - i);
}

/// A metric as written: four coordinate names (index 0 is time), the ten
/// independent components g_{ij}, i <= j, in geometric units, and named
/// real parameters.
struct MetricSpec {
  std::array<std::string, kDim> coordinates;
  std::array<Expr, 10> components;
  ParamMap parameters;
  /// Candidate contravariant generator A^i, one expression per coordinate.
  std::optional<std::array<Expr, kDim>> generator_hint;
  std::string label;

  const Expr& component(int i, int j) const { return components[component_slot(i, j)]; }

  friend bool operator==(const MetricSpec&, const MetricSpec&) = default;
};

/// g and g^{-1} as jets about `point`: every entry carries exact partials of
/// order <= 3.
struct MetricJet {
  Tensor<2, Jet3> g;
  Tensor<2, Jet3> ginv;
  Vec4 point{};
  double det_value = 0.0;

  Tensor2 g_value() const;
  Tensor2 ginv_value() const;
};

/// Parses the line-oriented metric file format (see docs/metric-format.md).
/// `overrides` replace or add `param` values before validation. Throws
/// ParseError, MissingComponent, DuplicateKey, UnknownCoordinate; positions
/// are 1-based line/column.
MetricSpec load_metric(std::string_view text, const ParamMap& overrides = {});

using BuiltinParams = std::map<std::string, std::string, std::less<>>;

struct BuiltinInfo {
  std::string name;
  std::string chart;  // line element in the chart used
  std::array<std::string, kDim> coordinates;
  BuiltinParams defaults;
  /// Coordinate box where the chart is regular; used for random sampling.
  std::array<std::pair<double, double>, kDim> sample_box;
};

const std::vector<BuiltinInfo>& builtin_catalog();

/// Standard metric from the catalog. `params` override the defaults; the
/// flrw-* scale factor `a` is an expression in t, other values are reals.
/// Throws UnknownBuiltin, BadParameter.
MetricSpec builtin(std::string_view name, const BuiltinParams& params = {});

/// Throws SingularMetric, SignatureError, DomainErrorJet.
MetricJet eval_metric(const MetricSpec& spec, const Vec4& point);

/// Value part of g only (no derivative bookkeeping beyond evaluation).
Tensor2 metric_value(const MetricSpec& spec, const Vec4& point);

/// Evaluates the generator hint expressions as contravariant jets.
std::array<Jet3, kDim> eval_generator_hint(const MetricSpec& spec, const Vec4& point);

}  // namespace qcst
