#pragma once

#include <array>
#include <cstddef>
#include <span>

namespace qcst {

/// Truncated multivariate Taylor expansion in 4 variables, total degree <= 3.
///
/// Coefficient c_alpha stores d^alpha f / alpha! at the expansion point, so
/// products are plain Cauchy products with no factorials. The 35 slots are
/// laid out in graded-lexicographic order: degree 0, then the 4 degree-1
/// monomials, 10 of degree 2 and 20 of degree 3; within one degree the
/// exponent tuples are sorted in descending lexicographic order, so x0 comes
/// before x1 and x0^2 before x0*x1.
class Jet3 {
 public:
  static constexpr int kVars = 4;
  static constexpr int kDegree = 3;
  static constexpr int kSize = 35;

  using MultiIndex = std::array<int, kVars>;

  constexpr Jet3() = default;

  static Jet3 constant(double v);
  /// Seeds variable `index` at `value`; throws IndexOutOfRange.
  static Jet3 variable(int index, double value);

  double value() const noexcept { return c_[0]; }

  /// Taylor coefficient c_alpha; throws OrderOverflow if |alpha| > 3.
  double coeff(const MultiIndex& alpha) const;
  void set_coeff(const MultiIndex& alpha, double v);

  /// True partial derivative d^alpha f = c_alpha * alpha!.
  double partial(const MultiIndex& alpha) const;
  double d(int i) const;
  double d(int i, int j) const;
  double d(int i, int j, int k) const;

  std::span<const double, kSize> coeffs() const noexcept { return c_; }
  std::span<double, kSize> coeffs() noexcept { return c_; }

  /// Partial derivative with respect to variable `var` as a jet. Only the
  /// coefficients up to degree 2 are determined; degree-3 slots are zero.
  Jet3 derivative(int var) const;

  /// Copy with every coefficient above `degree` cleared.
  Jet3 truncated(int degree) const;

  Jet3& operator+=(const Jet3& b) noexcept;
  Jet3& operator-=(const Jet3& b) noexcept;
  Jet3& operator*=(const Jet3& b) noexcept;
  Jet3& operator*=(double s) noexcept;
  Jet3& operator/=(const Jet3& b);

  friend Jet3 operator+(Jet3 a, const Jet3& b) noexcept { return a += b; }
  friend Jet3 operator-(Jet3 a, const Jet3& b) noexcept { return a -= b; }
  friend Jet3 operator*(const Jet3& a, const Jet3& b) noexcept;
  friend Jet3 operator/(const Jet3& a, const Jet3& b);
  friend Jet3 operator-(Jet3 a) noexcept;
  friend Jet3 operator*(double s, Jet3 a) noexcept { return a *= s; }
  friend Jet3 operator*(Jet3 a, double s) noexcept { return a *= s; }
  friend Jet3 operator+(Jet3 a, double s) noexcept {
    a.c_[0] += s;
    return a;
  }
  friend Jet3 operator-(Jet3 a, double s) noexcept {
    a.c_[0] -= s;
    return a;
  }
  friend Jet3 operator+(double s, Jet3 a) noexcept { return a + s; }
  friend Jet3 operator-(double s, const Jet3& a) noexcept { return -a + s; }

  friend bool operator==(const Jet3&, const Jet3&) = default;

  /// Slot of a multi-index, or -1 when |alpha| > 3 or an entry is negative.
  static int slot(const MultiIndex& alpha) noexcept;
  static const MultiIndex& multi_index(int slot) noexcept;
  static int degree_of_slot(int slot) noexcept;

 private:
  std::array<double, kSize> c_{};
};

Jet3 reciprocal(const Jet3& a);
Jet3 exp(const Jet3& a);
Jet3 log(const Jet3& a);
Jet3 sin(const Jet3& a);
Jet3 cos(const Jet3& a);
Jet3 sinh(const Jet3& a);
Jet3 cosh(const Jet3& a);
Jet3 sqrt(const Jet3& a);
Jet3 powi(const Jet3& a, int n);

/// f(a) given the univariate Taylor coefficients {f(a0), f'(a0), f''(a0)/2,
/// f'''(a0)/6} of f at the value coefficient a0 of `a`.
Jet3 compose(const Jet3& a, const std::array<double, 4>& taylor);

/// Free-function spellings of the elementary operations.
inline Jet3 jet_constant(double v) { return Jet3::constant(v); }
inline Jet3 jet_variable(int index, double value) {
  return Jet3::variable(index, value);
}
inline double extract_partial(const Jet3& a, const Jet3::MultiIndex& alpha) {
  return a.partial(alpha);
}

}  // namespace qcst
