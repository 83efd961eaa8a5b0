#include "qcst/jet.hpp"

#include <cmath>
#include <cstdint>
#include <string>

#include "qcst/error.hpp"

namespace qcst {
namespace {

using MultiIndex = Jet3::MultiIndex;

constexpr int kSlots = Jet3::kSize;
constexpr int kProductTerms = 165;  // monomials of degree <= 3 in 8 variables

struct ProductTerm {
  std::uint8_t a;
  std::uint8_t b;
  std::uint8_t out;
};

struct Tables {
  std::array<MultiIndex, kSlots> index{};
  std::array<int, kSlots> degree{};
  std::array<int, 256> slot_of{};
  std::array<double, kSlots> factorial{};
  std::array<ProductTerm, kProductTerms> product{};
  // derivative[var][k]: slot of index[k] + e_var, or -1 past degree 2.
  std::array<std::array<int, kSlots>, Jet3::kVars> derivative{};
};

constexpr int key(const MultiIndex& a) {
  return ((a[0] * 4 + a[1]) * 4 + a[2]) * 4 + a[3];
}

constexpr Tables make_tables() {
  Tables t{};
  for (auto& s : t.slot_of) s = -1;

  int n = 0;
  for (int d = 0; d <= Jet3::kDegree; ++d) {
    for (int a0 = d; a0 >= 0; --a0) {
      for (int a1 = d - a0; a1 >= 0; --a1) {
        for (int a2 = d - a0 - a1; a2 >= 0; --a2) {
          const MultiIndex m{a0, a1, a2, d - a0 - a1 - a2};
          t.index[n] = m;
          t.degree[n] = d;
          t.slot_of[key(m)] = n;
          double f = 1.0;
          for (int v : m)
            for (int k = 2; k <= v; ++k) f *= k;
          t.factorial[n] = f;
          ++n;
        }
      }
    }
  }

  int p = 0;
  for (int i = 0; i < kSlots; ++i) {
    for (int j = 0; j < kSlots; ++j) {
      if (t.degree[i] + t.degree[j] > Jet3::kDegree) continue;
      MultiIndex s{};
      for (int v = 0; v < Jet3::kVars; ++v) s[v] = t.index[i][v] + t.index[j][v];
      t.product[p++] = {static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(j),
                        static_cast<std::uint8_t>(t.slot_of[key(s)])};
    }
  }

  for (int v = 0; v < Jet3::kVars; ++v) {
    for (int k = 0; k < kSlots; ++k) {
      if (t.degree[k] >= Jet3::kDegree) {
        t.derivative[v][k] = -1;
        continue;
      }
      MultiIndex s = t.index[k];
      s[v] += 1;
      t.derivative[v][k] = t.slot_of[key(s)];
    }
  }
  return t;
}

constexpr Tables kTables = make_tables();

static_assert(kTables.index[kSlots - 1] == MultiIndex{0, 0, 0, 3});
static_assert(kTables.product[kProductTerms - 1].out != 0);

constexpr double kDivisionFloor = 1e-300;

}  // namespace

int Jet3::slot(const MultiIndex& alpha) noexcept {
  int total = 0;
  for (int v : alpha) {
    if (v < 0 || v > kDegree) return -1;
    total += v;
  }
  if (total > kDegree) return -1;
  return kTables.slot_of[key(alpha)];
}

const Jet3::MultiIndex& Jet3::multi_index(int s) noexcept { return kTables.index[s]; }

int Jet3::degree_of_slot(int s) noexcept { return kTables.degree[s]; }

Jet3 Jet3::constant(double v) {
  Jet3 j;
  j.c_[0] = v;
  return j;
}

Jet3 Jet3::variable(int index, double value) {
  if (index < 0 || index >= kVars) {
    throw Error(ErrorCode::IndexOutOfRange,
                "jet variable index " + std::to_string(index) + " not in 0..3");
  }
  Jet3 j;
  j.c_[0] = value;
  j.c_[1 + index] = 1.0;
  return j;
}

double Jet3::coeff(const MultiIndex& alpha) const {
  const int s = slot(alpha);
  if (s < 0) throw Error(ErrorCode::OrderOverflow, "multi-index order exceeds 3");
  return c_[s];
}

void Jet3::set_coeff(const MultiIndex& alpha, double v) {
  const int s = slot(alpha);
  if (s < 0) throw Error(ErrorCode::OrderOverflow, "multi-index order exceeds 3");
  c_[s] = v;
}

double Jet3::partial(const MultiIndex& alpha) const {
  const int s = slot(alpha);
  if (s < 0) throw Error(ErrorCode::OrderOverflow, "multi-index order exceeds 3");
  return c_[s] * kTables.factorial[s];
}

double Jet3::d(int i) const {
  MultiIndex a{};
  a.at(i) += 1;
  return partial(a);
}

double Jet3::d(int i, int j) const {
  MultiIndex a{};
  a.at(i) += 1;
  a.at(j) += 1;
  return partial(a);
}

double Jet3::d(int i, int j, int k) const {
  MultiIndex a{};
  a.at(i) += 1;
  a.at(j) += 1;
  a.at(k) += 1;
  return partial(a);
}

Jet3 Jet3::derivative(int var) const {
  if (var < 0 || var >= kVars) {
    throw Error(ErrorCode::IndexOutOfRange, "derivative variable not in 0..3");
  }
  Jet3 out;
  const auto& src = kTables.derivative[var];
  for (int k = 0; k < kSlots; ++k) {
    const int s = src[k];
    if (s < 0) continue;
    out.c_[k] = c_[s] * static_cast<double>(kTables.index[k][var] + 1);
  }
  return out;
}

Jet3 Jet3::truncated(int degree) const {
  Jet3 out = *this;
  for (int k = 0; k < kSlots; ++k)
    if (kTables.degree[k] > degree) out.c_[k] = 0.0;
  return out;
}

Jet3& Jet3::operator+=(const Jet3& b) noexcept {
  for (int k = 0; k < kSlots; ++k) c_[k] += b.c_[k];
  return *this;
}

Jet3& Jet3::operator-=(const Jet3& b) noexcept {
  for (int k = 0; k < kSlots; ++k) c_[k] -= b.c_[k];
  return *this;
}

Jet3& Jet3::operator*=(double s) noexcept {
  for (double& v : c_) v *= s;
  return *this;
}

Jet3& Jet3::operator*=(const Jet3& b) noexcept { return *this = *this * b; }

Jet3& Jet3::operator/=(const Jet3& b) { return *this = *this / b; }

Jet3 operator*(const Jet3& a, const Jet3& b) noexcept {
  Jet3 out;
  for (const ProductTerm& t : kTables.product) {
    out.c_[t.out] += a.c_[t.a] * b.c_[t.b];
  }
  return out;
}

Jet3 operator/(const Jet3& a, const Jet3& b) { return a * reciprocal(b); }

Jet3 operator-(Jet3 a) noexcept {
  for (double& v : a.c_) v = -v;
  return a;
}

Jet3 compose(const Jet3& a, const std::array<double, 4>& taylor) {
  Jet3 h = a;
  h.coeffs()[0] = 0.0;
  const Jet3 h2 = h * h;
  const Jet3 h3 = h2 * h;
  Jet3 out = taylor[1] * h;
  out += taylor[2] * h2;
  out += taylor[3] * h3;
  out.coeffs()[0] = taylor[0];
  return out;
}

Jet3 reciprocal(const Jet3& a) {
  const double x = a.value();
  if (!(std::fabs(x) >= kDivisionFloor)) {
    throw Error(ErrorCode::DivisionByZeroJet, "divisor value coefficient is zero");
  }
  const double r = 1.0 / x;
  return compose(a, {r, -r * r, r * r * r, -r * r * r * r});
}

Jet3 exp(const Jet3& a) {
  const double e = std::exp(a.value());
  return compose(a, {e, e, e / 2.0, e / 6.0});
}

Jet3 log(const Jet3& a) {
  const double x = a.value();
  if (!(x > 0.0)) {
    throw Error(ErrorCode::DomainErrorJet, "log of non-positive value");
  }
  const double r = 1.0 / x;
  return compose(a, {std::log(x), r, -r * r / 2.0, r * r * r / 3.0});
}

Jet3 sin(const Jet3& a) {
  const double s = std::sin(a.value());
  const double c = std::cos(a.value());
  return compose(a, {s, c, -s / 2.0, -c / 6.0});
}

Jet3 cos(const Jet3& a) {
  const double s = std::sin(a.value());
  const double c = std::cos(a.value());
  return compose(a, {c, -s, -c / 2.0, s / 6.0});
}

Jet3 sinh(const Jet3& a) {
  const double s = std::sinh(a.value());
  const double c = std::cosh(a.value());
  return compose(a, {s, c, s / 2.0, c / 6.0});
}

Jet3 cosh(const Jet3& a) {
  const double s = std::sinh(a.value());
  const double c = std::cosh(a.value());
  return compose(a, {c, s, c / 2.0, s / 6.0});
}

Jet3 sqrt(const Jet3& a) {
  const double x = a.value();
  if (!(x > 0.0)) {
    throw Error(ErrorCode::DomainErrorJet, "sqrt of non-positive value");
  }
  const double r = std::sqrt(x);
  const double r3 = r * r * r;
  return compose(a, {r, 0.5 / r, -1.0 / (8.0 * r3), 1.0 / (16.0 * r3 * r * r)});
}

Jet3 powi(const Jet3& a, int n) {
  if (n < 0) return reciprocal(powi(a, -n));
  Jet3 result = Jet3::constant(1.0);
  Jet3 base = a;
  unsigned e = static_cast<unsigned>(n);
  while (e != 0) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e != 0) base = base * base;
  }
  return result;
}

}  // namespace qcst
