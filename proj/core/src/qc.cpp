#include "qcst/qc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "qcst/error.hpp"

namespace qcst {
namespace {

double relative_norm(double num, double den) {
  if (num == 0.0) return 0.0;
  return num / std::max(1e-30, den);
}

// Mixed operator M^i_j = g^{ik} R_{kj}, its trace, and B = M - (R/4) Id.
template <class T>
struct Split {
  Tensor<2, T> m;
  T trace;
  Tensor<2, T> b;
};

template <class T>
Split<T> trace_free_split(const Tensor<2, T>& ginv, const Tensor<2, T>& ricci) {
  Split<T> s;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) {
      T acc{};
      for (int k = 0; k < kDim; ++k) acc += ginv(i, k) * ricci(k, j);
      s.m(i, j) = acc;
    }
  s.trace = T{};
  for (int i = 0; i < kDim; ++i) s.trace += s.m(i, i);
  s.b = s.m;
  for (int i = 0; i < kDim; ++i) s.b(i, i) -= s.trace * 0.25;
  return s;
}

template <class T>
T trace_of_square(const Tensor<2, T>& b) {
  T acc{};
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) acc += b(i, j) * b(j, i);
  return acc;
}

// P = (B - (mu/2) Id) / (2 mu); equals A^i A_j on an exact decomposition.
template <class T>
Tensor<2, T> projector(const Tensor<2, T>& b, const T& mu) {
  Tensor<2, T> p = b;
  for (int i = 0; i < kDim; ++i) p(i, i) -= mu * 0.5;
  for (auto& v : p.data) v = v / (mu * 2.0);
  return p;
}

double rank_one_residual(const Tensor2& p) {
  Tensor2 q;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) {
      double s = p(i, j);
      for (int k = 0; k < kDim; ++k) s += p(i, k) * p(k, j);
      q(i, j) = s;
    }
  return norm(q) / std::max(1.0, norm(p));
}

int dominant_column(const Tensor2& p) {
  int best = 0;
  double best_norm = -1.0;
  for (int j = 0; j < kDim; ++j) {
    double s = 0.0;
    for (int i = 0; i < kDim; ++i) s += p(i, j) * p(i, j);
    if (s > best_norm) {
      best_norm = s;
      best = j;
    }
  }
  return best;
}

// Index of the component used to fix the orientation: A^0 when it is not
// negligible, else the largest component.
int orientation_index(const Vec4& a) {
  if (std::abs(a[0]) > 1e-12 * norm(a)) return 0;
  int best = 0;
  for (int i = 1; i < kDim; ++i)
    if (std::abs(a[i]) > std::abs(a[best])) best = i;
  return best;
}

}  // namespace

QCScalars qc_scalars_from_invariants(double R, double nu) {
  return {(R + 2.0 * nu) / 6.0, (R + 4.0 * nu) / 6.0};
}

Tensor4 reconstruct_riemann(double gamma, double mu, const Vec4& A, const Tensor2& g) {
  Tensor4 r;
  for (int h = 0; h < kDim; ++h)
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j)
        for (int k = 0; k < kDim; ++k) {
          const double cc = g(h, k) * g(i, j) - g(h, j) * g(i, k);
          const double rank1 = g(h, k) * A[i] * A[j] + g(i, j) * A[h] * A[k] -
                               g(h, j) * A[i] * A[k] - g(i, k) * A[h] * A[j];
          r(h, i, j, k) = gamma * cc + mu * rank1;
        }
  return r;
}

QCReport detect_qc(const CurvatureBundle& b, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::BadParameter, "tolerance must be positive");
  QCReport rep;
  rep.tol = tol;
  const double riem_norm = norm(b.riemann);
  rep.weyl_norm_rel = relative_norm(norm(b.weyl), riem_norm);

  const Split<double> s = trace_free_split(b.ginv, b.ricci);
  const double R = s.trace;

  if (norm(s.b) <= tol * std::max(1.0, norm(s.m))) {
    rep.gamma = R / 12.0;
    rep.mu = 0.0;
    rep.nu = -R / 4.0;
    const Tensor4 recon = reconstruct_riemann(rep.gamma, 0.0, Vec4{}, b.g);
    rep.riemann_residual_rel = relative_norm(norm(recon - b.riemann), riem_norm);
    rep.is_qc = rep.weyl_norm_rel <= tol && rep.riemann_residual_rel <= tol;
    // Trace-free Ricci vanishes; the branch only counts when Riemann matches.
    rep.constant_curvature = rep.is_qc;
    return rep;
  }

  const double mu_abs = std::sqrt(std::abs(trace_of_square(s.b)) / 3.0);
  Tensor2 best_p;
  double best_res = INFINITY;
  int best_sign = 0;
  for (int sign : {1, -1}) {
    const Tensor2 p = projector(s.b, sign * mu_abs);
    const double res = rank_one_residual(p);
    if (res < best_res) {
      best_res = res;
      best_p = p;
      best_sign = sign;
    }
  }
  if (!(best_res <= 1e3 * tol)) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "rank-one residual %.3e for both signs of mu", best_res);
    throw Error(ErrorCode::NonDiagonalizableRicci, buf);
  }
  rep.mu = best_sign * mu_abs;
  rep.mu_sign = best_sign;
  rep.rank1_residual = best_res;
  rep.gamma = (R + 6.0 * rep.mu) / 12.0;

  const int col = dominant_column(best_p);
  rep.dominant_column = col;
  Vec4 v{};
  for (int i = 0; i < kDim; ++i) v[i] = best_p(i, col);
  const double n = contract(b.g, v, v);
  if (!(n < 0.0)) {
    // Spacelike or null rank-one direction: not a fluid generator.
    rep.is_qc = false;
    rep.riemann_residual_rel = INFINITY;
    return rep;
  }
  const double inv = 1.0 / std::sqrt(-n);
  for (double& x : v) x *= inv;
  if (v[orientation_index(v)] < 0.0)
    for (double& x : v) x = -x;
  rep.A_con = v;
  rep.A_cov = lower(b.g, v);

  double nu = 0.0;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) nu += b.ricci(i, j) * v[i] * v[j];
  rep.nu = nu;

  const Tensor4 recon = reconstruct_riemann(rep.gamma, rep.mu, *rep.A_cov, b.g);
  rep.riemann_residual_rel = relative_norm(norm(recon - b.riemann), riem_norm);
  rep.is_qc = rep.riemann_residual_rel <= tol && rep.rank1_residual <= tol &&
              rep.weyl_norm_rel <= tol;
  return rep;
}

std::optional<GeneratorJets> extract_generator_jets(const CurvatureBundle& b,
                                                    const QCReport& rep) {
  if (rep.constant_curvature || !rep.A_con || rep.mu_sign == 0 || rep.dominant_column < 0) {
    return std::nullopt;
  }
  const Split<Jet3> s = trace_free_split(b.ginv_jet, b.ricci_jet);
  Jet3 t = trace_of_square(s.b) * (1.0 / 3.0);
  if (t.value() < 0.0) t = -t;
  Jet3 mu = sqrt(t);
  if (rep.mu_sign < 0) mu = -mu;
  const Tensor<2, Jet3> p = projector(s.b, mu);

  std::array<Jet3, kDim> v;
  for (int i = 0; i < kDim; ++i) v[i] = p(i, rep.dominant_column);
  Jet3 n;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) n += b.g_jet(i, j) * v[i] * v[j];
  if (!(n.value() < 0.0)) return std::nullopt;
  Jet3 inv = reciprocal(sqrt(-n));
  Vec4 vv{};
  for (int i = 0; i < kDim; ++i) vv[i] = v[i].value();
  if (vv[orientation_index(vv)] < 0.0) inv = -inv;

  GeneratorJets out;
  for (int i = 0; i < kDim; ++i) out.A_con[i] = v[i] * inv;
  out.gamma = (s.trace + mu * 6.0) * (1.0 / 12.0);
  return out;
}

}  // namespace qcst
