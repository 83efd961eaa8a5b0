#pragma once

#include "qcst/jet.hpp"
#include "qcst/metric.hpp"
#include "qcst/tensor.hpp"

namespace qcst {

// Conventions
// -----------
// Signature (-,+,+,+). The connection-level curvature
//     K^h_{ijk} = d_j G^h_{ik} - d_k G^h_{ij} + G^h_{jp} G^p_{ik} - G^h_{kp} G^p_{ij}
// satisfies [D_j, D_k] V^h = K^h_{ijk} V^i. The stored fully covariant
// Riemann tensor is R_{hijk} = -g_{hp} K^p_{ijk}, which puts a space of
// constant curvature k in the form R_{hijk} = k (g_{hk} g_{ij} - g_{hj} g_{ik})
// with Ricci R_{ij} = g^{hk} R_{hijk} = 3k g_{ij} and R = 12k.

/// Christoffel symbols G^h_{ij} as jets about the point. Coefficients are
/// exact through degree 2 (first and second partials of G).
using ChristoffelJets = Tensor<3, Jet3>;

ChristoffelJets christoffel(const MetricJet& mj);

/// Connection-level curvature K^h_{ijk} as jets, exact through degree 1.
Tensor<4, Jet3> connection_curvature(const ChristoffelJets& gamma);

struct CurvatureBundle {
  Vec4 point{};
  Tensor2 g;
  Tensor2 ginv;

  Tensor3 gamma;     // G^h_{ij}
  Tensor4 dgamma;    // d_l G^h_{ij}, index order (h, i, j, l)
  Tensor5 ddgamma;   // d_l d_m G^h_{ij}, index order (h, i, j, l, m)

  Tensor4 riemann;   // R_{hijk}
  Tensor2 ricci;     // R_{ij}
  double scalar = 0.0;
  Vec4 grad_scalar{};  // d_l R
  Tensor4 weyl;      // C_{hijk}
  Tensor3 grad_ricci;     // D_l R_{ij}, index order (l, i, j)
  Tensor4 riem_on_ricci;  // Q_{ijlm} = (D_l D_m - D_m D_l) R_{ij}

  // Jet-level fields (value + first partials are exact) for derivative-level
  // diagnostics such as generator extraction.
  Tensor<2, Jet3> g_jet;
  Tensor<2, Jet3> ginv_jet;
  ChristoffelJets gamma_jet;
  Tensor<2, Jet3> ricci_jet;
};

/// Full curvature pipeline at the metric jet's point.
CurvatureBundle compute_curvature(const MetricJet& mj);

/// R_{ij} = g^{hk} R_{hijk}.
Tensor2 ricci_from_riemann(const Tensor2& ginv, const Tensor4& riemann);
double scalar_from_ricci(const Tensor2& ginv, const Tensor2& ricci);
/// C = R - 1/2 (g_hk R_ij - g_hj R_ik + g_ij R_hk - g_ik R_hj)
///       + R/6 (g_hk g_ij - g_hj g_ik).
Tensor4 weyl_from(const Tensor2& g, const Tensor4& riemann, const Tensor2& ricci, double scalar);
/// Q_{ijlm} = -K^p_{ilm} R_{pj} - K^p_{jlm} R_{ip} with K^p_{ilm} = -g^{pq} R_{qilm}.
Tensor4 riemann_on_ricci(const Tensor2& ginv, const Tensor4& riemann, const Tensor2& ricci);

/// Fills ricci, scalar, weyl and riem_on_ricci of `b` from g, ginv, riemann.
/// Used for bundles assembled from tensors rather than from a metric.
void complete_from_riemann(CurvatureBundle& b);

}  // namespace qcst
