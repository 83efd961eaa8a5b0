#pragma once

#include <cstdint>
#include <vector>

#include "qcst/metric.hpp"
#include "qcst/tensor.hpp"

namespace qcst::oracle {

// Curvature from central finite differences of metric values only. Shares
// no code with the jet pipeline beyond metric evaluation.
struct FdCurvature {
  Tensor2 g;
  Tensor2 ginv;
  Tensor3 gamma;    // G^h_{ij}
  Tensor4 riemann;  // same sign convention as CurvatureBundle::riemann
  Tensor2 ricci;
  double scalar = 0.0;
};

FdCurvature fd_curvature(const MetricSpec& spec, const Vec4& point, double step = 1e-4);

/// Uniform points in the builtin's sample box, reproducible from `seed`.
std::vector<Vec4> sample_points(const BuiltinInfo& info, int count, std::uint32_t seed);

}  // namespace qcst::oracle
