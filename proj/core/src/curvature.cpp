#include "qcst/curvature.hpp"

namespace qcst {

ChristoffelJets christoffel(const MetricJet& mj) {
  // dg(k, i, j) = d_k g_{ij}
  Tensor<3, Jet3> dg;
  for (int i = 0; i < kDim; ++i) {
    for (int j = i; j < kDim; ++j) {
      for (int k = 0; k < kDim; ++k) {
        dg(k, i, j) = mj.g(i, j).derivative(k);
        dg(k, j, i) = dg(k, i, j);
      }
    }
  }
  ChristoffelJets gamma;
  for (int i = 0; i < kDim; ++i) {
    for (int j = i; j < kDim; ++j) {
      std::array<Jet3, kDim> first_kind;
      for (int k = 0; k < kDim; ++k) {
        first_kind[k] = dg(i, k, j) + dg(j, k, i) - dg(k, i, j);
        first_kind[k] *= 0.5;
      }
      for (int h = 0; h < kDim; ++h) {
        Jet3 acc;
        for (int k = 0; k < kDim; ++k) acc += mj.ginv(h, k) * first_kind[k];
        gamma(h, i, j) = acc;
        gamma(h, j, i) = acc;
      }
    }
  }
  return gamma;
}

Tensor<4, Jet3> connection_curvature(const ChristoffelJets& gamma) {
  // d_l G^h_{ij}, index order (h, i, j, l)
  Tensor<4, Jet3> dgamma;
  for (int h = 0; h < kDim; ++h)
    for (int i = 0; i < kDim; ++i)
      for (int j = i; j < kDim; ++j)
        for (int l = 0; l < kDim; ++l) {
          dgamma(h, i, j, l) = gamma(h, i, j).derivative(l);
          dgamma(h, j, i, l) = dgamma(h, i, j, l);
        }

  Tensor<4, Jet3> k;
  for (int h = 0; h < kDim; ++h) {
    for (int i = 0; i < kDim; ++i) {
      for (int a = 0; a < kDim; ++a) {
        for (int b = a + 1; b < kDim; ++b) {
          Jet3 acc = dgamma(h, i, b, a) - dgamma(h, i, a, b);
          for (int p = 0; p < kDim; ++p) {
            acc += gamma(h, a, p) * gamma(p, i, b);
            acc -= gamma(h, b, p) * gamma(p, i, a);
          }
          k(h, i, a, b) = acc;
          k(h, i, b, a) = -acc;
        }
      }
    }
  }
  return k;
}

Tensor2 ricci_from_riemann(const Tensor2& ginv, const Tensor4& riemann) {
  Tensor2 ric;
  for (int i = 0; i < kDim; ++i) {
    for (int j = 0; j < kDim; ++j) {
      double s = 0.0;
      for (int h = 0; h < kDim; ++h)
        for (int k = 0; k < kDim; ++k) s += ginv(h, k) * riemann(h, i, j, k);
      ric(i, j) = s;
    }
  }
  return ric;
}

double scalar_from_ricci(const Tensor2& ginv, const Tensor2& ricci) {
  double s = 0.0;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) s += ginv(i, j) * ricci(i, j);
  return s;
}

Tensor4 weyl_from(const Tensor2& g, const Tensor4& riemann, const Tensor2& ricci, double scalar) {
  Tensor4 c;
  for (int h = 0; h < kDim; ++h)
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j)
        for (int k = 0; k < kDim; ++k) {
          const double ricci_part = g(h, k) * ricci(i, j) - g(h, j) * ricci(i, k) +
                                    g(i, j) * ricci(h, k) - g(i, k) * ricci(h, j);
          const double metric_part = g(h, k) * g(i, j) - g(h, j) * g(i, k);
          c(h, i, j, k) = riemann(h, i, j, k) - 0.5 * ricci_part + scalar / 6.0 * metric_part;
        }
  return c;
}

Tensor4 riemann_on_ricci(const Tensor2& ginv, const Tensor4& riemann, const Tensor2& ricci) {
  // S_{ilm}{}^p R_{pj} with S^p_{ilm} = g^{pq} R_{qilm} = -K^p_{ilm}.
  Tensor4 raised;  // (p, i, l, m)
  for (int p = 0; p < kDim; ++p)
    for (int i = 0; i < kDim; ++i)
      for (int l = 0; l < kDim; ++l)
        for (int m = 0; m < kDim; ++m) {
          double s = 0.0;
          for (int q = 0; q < kDim; ++q) s += ginv(p, q) * riemann(q, i, l, m);
          raised(p, i, l, m) = s;
        }
  Tensor4 q;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      for (int l = 0; l < kDim; ++l)
        for (int m = 0; m < kDim; ++m) {
          double s = 0.0;
          for (int p = 0; p < kDim; ++p) {
            s += raised(p, i, l, m) * ricci(p, j) + raised(p, j, l, m) * ricci(i, p);
          }
          q(i, j, l, m) = s;
        }
  return q;
}

void complete_from_riemann(CurvatureBundle& b) {
  b.ricci = ricci_from_riemann(b.ginv, b.riemann);
  b.scalar = scalar_from_ricci(b.ginv, b.ricci);
  b.weyl = weyl_from(b.g, b.riemann, b.ricci, b.scalar);
  b.riem_on_ricci = riemann_on_ricci(b.ginv, b.riemann, b.ricci);
}

CurvatureBundle compute_curvature(const MetricJet& mj) {
  CurvatureBundle b;
  b.point = mj.point;
  b.g = mj.g_value();
  b.ginv = mj.ginv_value();
  b.g_jet = mj.g;
  b.ginv_jet = mj.ginv;

  b.gamma_jet = christoffel(mj);
  for (int h = 0; h < kDim; ++h)
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j) {
        const Jet3& gj = b.gamma_jet(h, i, j);
        b.gamma(h, i, j) = gj.value();
        for (int l = 0; l < kDim; ++l) {
          b.dgamma(h, i, j, l) = gj.d(l);
          for (int m = 0; m < kDim; ++m) b.ddgamma(h, i, j, l, m) = gj.d(l, m);
        }
      }

  const Tensor<4, Jet3> k = connection_curvature(b.gamma_jet);

  for (int h = 0; h < kDim; ++h)
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j)
        for (int l = 0; l < kDim; ++l) {
          double s = 0.0;
          for (int p = 0; p < kDim; ++p) s += b.g(h, p) * k(p, i, j, l).value();
          b.riemann(h, i, j, l) = -s;
        }

  // Ricci as a jet so that D Ricci needs no further differentiation.
  for (int i = 0; i < kDim; ++i) {
    for (int j = i; j < kDim; ++j) {
      Jet3 acc;
      for (int p = 0; p < kDim; ++p) acc += k(p, i, p, j);
      Jet3 sym = acc;
      if (i != j) {
        Jet3 other;
        for (int p = 0; p < kDim; ++p) other += k(p, j, p, i);
        sym += other;
        sym *= 0.5;
      }
      b.ricci_jet(i, j) = sym;
      b.ricci_jet(j, i) = sym;
      b.ricci(i, j) = sym.value();
      b.ricci(j, i) = sym.value();
    }
  }

  Jet3 scalar;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) scalar += mj.ginv(i, j) * b.ricci_jet(i, j);
  b.scalar = scalar.value();
  for (int l = 0; l < kDim; ++l) b.grad_scalar[l] = scalar.d(l);

  b.weyl = weyl_from(b.g, b.riemann, b.ricci, b.scalar);

  for (int l = 0; l < kDim; ++l)
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j) {
        double s = b.ricci_jet(i, j).d(l);
        for (int p = 0; p < kDim; ++p) {
          s -= b.gamma(p, l, i) * b.ricci(p, j) + b.gamma(p, l, j) * b.ricci(i, p);
        }
        b.grad_ricci(l, i, j) = s;
      }

  b.riem_on_ricci = riemann_on_ricci(b.ginv, b.riemann, b.ricci);
  return b;
}

}  // namespace qcst
