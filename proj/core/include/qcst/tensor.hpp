#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace qcst {

inline constexpr int kDim = 4;

using Vec4 = std::array<double, kDim>;

constexpr std::size_t pow4(std::size_t rank) {
  std::size_t n = 1;
  for (std::size_t r = 0; r < rank; ++r) n *= kDim;
  return n;
}

// Dense rank-N tensor over a 4-dimensional chart, row-major (first index
// slowest). Index placement (up/down) is a naming convention of the owner.
template <std::size_t Rank, class T = double>
struct Tensor {
  static constexpr std::size_t rank = Rank;
  static constexpr std::size_t size = pow4(Rank);

  std::array<T, size> data{};

  template <class... I>
  constexpr T& operator()(I... idx) noexcept {
    static_assert(sizeof...(I) == Rank);
    return data[flat(static_cast<std::size_t>(idx)...)];
  }
  template <class... I>
  constexpr const T& operator()(I... idx) const noexcept {
    static_assert(sizeof...(I) == Rank);
    return data[flat(static_cast<std::size_t>(idx)...)];
  }

  template <class... I>
  static constexpr std::size_t flat(I... idx) noexcept {
    std::size_t f = 0;
    ((f = f * kDim + idx), ...);
    return f;
  }

  friend bool operator==(const Tensor&, const Tensor&) = default;
};

using Tensor2 = Tensor<2>;
using Tensor3 = Tensor<3>;
using Tensor4 = Tensor<4>;
using Tensor5 = Tensor<5>;

// Euclidean norm of the chart components. Used only for relative residuals.
template <std::size_t Rank>
double norm(const Tensor<Rank, double>& t) {
  double s = 0.0;
  for (double v : t.data) s += v * v;
  return std::sqrt(s);
}

template <std::size_t Rank>
Tensor<Rank, double> operator-(const Tensor<Rank, double>& a,
                               const Tensor<Rank, double>& b) {
  Tensor<Rank, double> out;
  for (std::size_t i = 0; i < out.size; ++i) out.data[i] = a.data[i] - b.data[i];
  return out;
}

template <std::size_t Rank>
Tensor<Rank, double> operator*(double s, const Tensor<Rank, double>& a) {
  Tensor<Rank, double> out;
  for (std::size_t i = 0; i < out.size; ++i) out.data[i] = s * a.data[i];
  return out;
}

inline double norm(const Vec4& v) {
  return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]);
}

// g(u, v) for a symmetric bilinear form.
inline double contract(const Tensor2& g, const Vec4& u, const Vec4& v) {
  double s = 0.0;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) s += g(i, j) * u[i] * v[j];
  return s;
}

inline Vec4 lower(const Tensor2& g, const Vec4& v) {
  Vec4 out{};
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) out[i] += g(i, j) * v[j];
  return out;
}

// ||a - b|| / max(floor, ||b||), with 0/0 mapped to 0.
template <std::size_t Rank>
double relative_difference(const Tensor<Rank, double>& a,
                           const Tensor<Rank, double>& b,
                           double floor = 1e-30) {
  const double diff = norm(a - b);
  if (diff == 0.0) return 0.0;
  const double ref = norm(b);
  return diff / (ref > floor ? ref : floor);
}

}  // namespace qcst
