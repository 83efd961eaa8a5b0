#include "qcst/fd_oracle.hpp"

#include <Eigen/Dense>
#include <random>

namespace qcst::oracle {
namespace {

Vec4 shifted(Vec4 x, int a, double da, int b = -1, double db = 0.0) {
  x[a] += da;
  if (b >= 0) x[b] += db;
  return x;
}

}  // namespace

FdCurvature fd_curvature(const MetricSpec& spec, const Vec4& x, double h) {
  FdCurvature out;
  out.g = metric_value(spec, x);

  Eigen::Matrix4d g0;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) g0(i, j) = out.g(i, j);
  const Eigen::Matrix4d gi = g0.inverse();
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) out.ginv(i, j) = gi(i, j);

  // dg(a, i, j) = d_a g_ij ; ddg(a, b, i, j) = d_a d_b g_ij
  Tensor3 dg;
  Tensor4 ddg;
  for (int a = 0; a < kDim; ++a) {
    const Tensor2 gp = metric_value(spec, shifted(x, a, h));
    const Tensor2 gm = metric_value(spec, shifted(x, a, -h));
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j) {
        dg(a, i, j) = (gp(i, j) - gm(i, j)) / (2.0 * h);
        ddg(a, a, i, j) = (gp(i, j) - 2.0 * out.g(i, j) + gm(i, j)) / (h * h);
      }
    for (int b = a + 1; b < kDim; ++b) {
      const Tensor2 gpp = metric_value(spec, shifted(x, a, h, b, h));
      const Tensor2 gpm = metric_value(spec, shifted(x, a, h, b, -h));
      const Tensor2 gmp = metric_value(spec, shifted(x, a, -h, b, h));
      const Tensor2 gmm = metric_value(spec, shifted(x, a, -h, b, -h));
      for (int i = 0; i < kDim; ++i)
        for (int j = 0; j < kDim; ++j) {
          const double v = (gpp(i, j) - gpm(i, j) - gmp(i, j) + gmm(i, j)) / (4.0 * h * h);
          ddg(a, b, i, j) = v;
          ddg(b, a, i, j) = v;
        }
    }
  }

  Tensor3 first;  // G_{qij}
  for (int q = 0; q < kDim; ++q)
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j)
        first(q, i, j) = 0.5 * (dg(i, q, j) + dg(j, q, i) - dg(q, i, j));
  for (int p = 0; p < kDim; ++p)
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j) {
        double s = 0.0;
        for (int q = 0; q < kDim; ++q) s += out.ginv(p, q) * first(q, i, j);
        out.gamma(p, i, j) = s;
      }

  // Textbook form R_abcd = 1/2 (g_ad,bc + g_bc,ad - g_ac,bd - g_bd,ac)
  //                      + g_pq (G^p_bc G^q_ad - G^p_bd G^q_ac),
  // which is the negative of the stored convention.
  for (int a = 0; a < kDim; ++a)
    for (int b = 0; b < kDim; ++b)
      for (int c = 0; c < kDim; ++c)
        for (int d = 0; d < kDim; ++d) {
          double r = 0.5 * (ddg(b, c, a, d) + ddg(a, d, b, c) - ddg(a, c, b, d) - ddg(b, d, a, c));
          for (int p = 0; p < kDim; ++p)
            for (int q = 0; q < kDim; ++q)
              r += out.g(p, q) * (out.gamma(p, b, c) * out.gamma(q, a, d) -
                                  out.gamma(p, b, d) * out.gamma(q, a, c));
          out.riemann(a, b, c, d) = -r;
        }

  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) {
      double s = 0.0;
      for (int a = 0; a < kDim; ++a)
        for (int d = 0; d < kDim; ++d) s += out.ginv(a, d) * out.riemann(a, i, j, d);
      out.ricci(i, j) = s;
    }
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) out.scalar += out.ginv(i, j) * out.ricci(i, j);
  return out;
}

std::vector<Vec4> sample_points(const BuiltinInfo& info, int count, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::vector<Vec4> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (int n = 0; n < count; ++n) {
    Vec4 x{};
    for (int i = 0; i < kDim; ++i) {
      std::uniform_real_distribution<double> u(info.sample_box[i].first, info.sample_box[i].second);
      x[i] = u(rng);
    }
    pts.push_back(x);
  }
  return pts;
}

}  // namespace qcst::oracle
