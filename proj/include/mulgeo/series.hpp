#pragma once

// Truncated Taylor series for forward-mode differentiation of bridge
// functions. A Series holds c_0..c_K with c_k = f^{(k)}(x0) / k!; K is the
// number of trustworthy orders and shrinks under differentiation. Binary
// operations keep the smaller K of their operands.

#include <array>
#include <cmath>
#include <cstddef>

namespace mulgeo {

class Series {
 public:
  static constexpr int kMaxOrder = 10;

  Series() = default;
  /// Constant c, exact to every order.
  Series(double c) { c_[0] = c; }  // NOLINT(google-explicit-constructor)

  /// x0 + h: the independent variable expanded at x0.
  static Series variable(double x0, int order = kMaxOrder);
  static Series constant(double c, int order = kMaxOrder);

  int order() const noexcept { return order_; }
  double value() const noexcept { return c_[0]; }
  double coeff(int k) const { return c_[static_cast<std::size_t>(k)]; }
  void set_coeff(int k, double v) { c_[static_cast<std::size_t>(k)] = v; }
  /// k-th derivative at the expansion point; throws DomainError if k > order().
  double derivative(int k) const;

  /// d/dh of the series; order drops by one.
  Series derivative() const;
  /// Antiderivative with the given constant; order grows by one (capped).
  Series integral(double c0 = 0.0) const;
  /// Polynomial value at offset h from the expansion point.
  double eval(double h) const noexcept;
  Series truncated(int order) const;

  Series& operator+=(const Series& o);
  Series& operator-=(const Series& o);
  Series& operator*=(const Series& o);
  Series& operator/=(const Series& o);

 private:
  std::array<double, kMaxOrder + 1> c_{};
  int order_ = kMaxOrder;
};

Series operator-(const Series& a);
Series operator+(const Series& a, const Series& b);
Series operator-(const Series& a, const Series& b);
Series operator*(const Series& a, const Series& b);
/// Throws DomainError when the divisor's constant term is zero.
Series operator/(const Series& a, const Series& b);

Series sqrt(const Series& a);
Series exp(const Series& a);
Series log(const Series& a);
Series sin(const Series& a);
Series cos(const Series& a);
Series tan(const Series& a);
Series cot(const Series& a);
Series pow(const Series& a, double p);
/// Throws NonDifferentiableError at a zero constant term when order > 0.
Series abs(const Series& a);

/// outer(inner(h)) for inner with zero constant term.
Series compose(const Series& outer, const Series& inner);
/// The series g with f(g(h)) = h; needs f(0) = 0 and f'(0) != 0.
Series revert(const Series& f);

using SeriesVec3 = std::array<Series, 3>;

Series dot(const SeriesVec3& a, const SeriesVec3& b);
SeriesVec3 cross(const SeriesVec3& a, const SeriesVec3& b);
SeriesVec3 derivative(const SeriesVec3& v);
SeriesVec3 scale(const Series& s, const SeriesVec3& v);
SeriesVec3 add(const SeriesVec3& a, const SeriesVec3& b);
SeriesVec3 sub(const SeriesVec3& a, const SeriesVec3& b);
std::array<double, 3> values(const SeriesVec3& v);

}  // namespace mulgeo
