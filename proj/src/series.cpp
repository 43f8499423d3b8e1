#include "mulgeo/series.hpp"

#include <algorithm>
#include <string>

#include "mulgeo/errors.hpp"

namespace mulgeo {

namespace {

int common_order(const Series& a, const Series& b) { return std::min(a.order(), b.order()); }

Series with_order(int order) { return Series::constant(0.0, order); }

}  // namespace

Series Series::variable(double x0, int order) {
  Series s = constant(x0, order);
  if (order >= 1) s.c_[1] = 1.0;
  return s;
}

Series Series::constant(double c, int order) {
  Series s;
  s.c_[0] = c;
  s.order_ = std::clamp(order, 0, kMaxOrder);
  return s;
}

double Series::derivative(int k) const {
  if (k < 0 || k > order_) {
    throw DomainError("series: derivative of order " + std::to_string(k) +
                      " requested but only " + std::to_string(order_) + " available");
  }
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return c_[static_cast<std::size_t>(k)] * f;
}

Series Series::derivative() const {
  if (order_ == 0) throw DomainError("series: no derivative information left");
  Series d = with_order(order_ - 1);
  for (int k = 0; k < order_; ++k) d.c_[k] = (k + 1) * c_[k + 1];
  return d;
}

Series Series::integral(double c0) const {
  Series r = with_order(std::min(order_ + 1, kMaxOrder));
  r.c_[0] = c0;
  for (int k = 1; k <= r.order_; ++k) r.c_[k] = c_[k - 1] / k;
  return r;
}

double Series::eval(double h) const noexcept {
  double acc = 0.0;
  for (int k = order_; k >= 0; --k) acc = acc * h + c_[k];
  return acc;
}

Series Series::truncated(int order) const {
  Series r = *this;
  r.order_ = std::clamp(order, 0, order_);
  for (int k = r.order_ + 1; k <= kMaxOrder; ++k) r.c_[k] = 0.0;
  return r;
}

Series& Series::operator+=(const Series& o) {
  order_ = common_order(*this, o);
  for (int k = 0; k <= order_; ++k) c_[k] += o.c_[k];
  return *this;
}

Series& Series::operator-=(const Series& o) {
  order_ = common_order(*this, o);
  for (int k = 0; k <= order_; ++k) c_[k] -= o.c_[k];
  return *this;
}

Series& Series::operator*=(const Series& o) { return *this = *this * o; }
Series& Series::operator/=(const Series& o) { return *this = *this / o; }

Series operator-(const Series& a) {
  Series r = with_order(a.order());
  for (int k = 0; k <= a.order(); ++k) r.set_coeff(k, -a.coeff(k));
  return r;
}

Series operator+(const Series& a, const Series& b) {
  Series r = a;
  r += b;
  return r;
}

Series operator-(const Series& a, const Series& b) {
  Series r = a;
  r -= b;
  return r;
}

Series operator*(const Series& a, const Series& b) {
  const int n = common_order(a, b);
  Series r = with_order(n);
  for (int k = 0; k <= n; ++k) {
    double acc = 0.0;
    for (int i = 0; i <= k; ++i) acc += a.coeff(i) * b.coeff(k - i);
    r.set_coeff(k, acc);
  }
  return r;
}

Series operator/(const Series& a, const Series& b) {
  if (b.value() == 0.0) throw DomainError("series: division by a series vanishing at the origin");
  const int n = common_order(a, b);
  Series q = with_order(n);
  for (int k = 0; k <= n; ++k) {
    double acc = a.coeff(k);
    for (int i = 1; i <= k; ++i) acc -= b.coeff(i) * q.coeff(k - i);
    q.set_coeff(k, acc / b.value());
  }
  return q;
}

Series sqrt(const Series& a) {
  const int n = a.order();
  if (a.value() < 0.0) throw DomainError("series: sqrt of a negative value");
  if (a.value() == 0.0 && n > 0) throw NonDifferentiableError("series: sqrt is not differentiable at 0");
  Series r = with_order(n);
  const double r0 = std::sqrt(a.value());
  r.set_coeff(0, r0);
  for (int k = 1; k <= n; ++k) {
    double acc = a.coeff(k);
    for (int i = 1; i < k; ++i) acc -= r.coeff(i) * r.coeff(k - i);
    r.set_coeff(k, acc / (2.0 * r0));
  }
  return r;
}

Series exp(const Series& a) {
  const int n = a.order();
  Series r = with_order(n);
  r.set_coeff(0, std::exp(a.value()));
  for (int k = 1; k <= n; ++k) {
    double acc = 0.0;
    for (int i = 1; i <= k; ++i) acc += i * a.coeff(i) * r.coeff(k - i);
    r.set_coeff(k, acc / k);
  }
  return r;
}

Series log(const Series& a) {
  const int n = a.order();
  if (!(a.value() > 0.0)) throw DomainError("series: log of a non-positive value");
  Series r = with_order(n);
  r.set_coeff(0, std::log(a.value()));
  for (int k = 1; k <= n; ++k) {
    double acc = a.coeff(k);
    for (int i = 1; i < k; ++i) acc -= static_cast<double>(i) / k * r.coeff(i) * a.coeff(k - i);
    r.set_coeff(k, acc / a.value());
  }
  return r;
}

namespace {

void sin_cos(const Series& a, Series& s, Series& c) {
  const int n = a.order();
  s = with_order(n);
  c = with_order(n);
  s.set_coeff(0, std::sin(a.value()));
  c.set_coeff(0, std::cos(a.value()));
  for (int k = 1; k <= n; ++k) {
    double sk = 0.0;
    double ck = 0.0;
    for (int i = 1; i <= k; ++i) {
      sk += i * a.coeff(i) * c.coeff(k - i);
      ck -= i * a.coeff(i) * s.coeff(k - i);
    }
    s.set_coeff(k, sk / k);
    c.set_coeff(k, ck / k);
  }
}

}  // namespace

Series sin(const Series& a) {
  Series s;
  Series c;
  sin_cos(a, s, c);
  return s;
}

Series cos(const Series& a) {
  Series s;
  Series c;
  sin_cos(a, s, c);
  return c;
}

Series tan(const Series& a) {
  Series s;
  Series c;
  sin_cos(a, s, c);
  return s / c;
}

Series cot(const Series& a) {
  Series s;
  Series c;
  sin_cos(a, s, c);
  return c / s;
}

Series pow(const Series& a, double p) {
  const int n = a.order();
  const double a0 = a.value();
  const bool integral_power = std::floor(p) == p;
  if (a0 == 0.0) {
    if (integral_power && p >= 0.0) {
      Series r = Series::constant(1.0, n);
      for (int i = 0; i < static_cast<int>(p); ++i) r = r * a;
      return r;
    }
    if (n == 0 && p > 0.0) return Series::constant(0.0, 0);
    throw NonDifferentiableError("series: non-integer power at 0");
  }
  if (a0 < 0.0 && !integral_power) throw DomainError("series: non-integer power of a negative value");
  Series r = with_order(n);
  r.set_coeff(0, std::pow(a0, p));
  for (int k = 1; k <= n; ++k) {
    double acc = 0.0;
    for (int i = 1; i <= k; ++i) acc += (p * i - (k - i)) * a.coeff(i) * r.coeff(k - i);
    r.set_coeff(k, acc / (k * a0));
  }
  return r;
}

Series abs(const Series& a) {
  if (a.value() > 0.0) return a;
  if (a.value() < 0.0) return -a;
  if (a.order() == 0) return a;
  throw NonDifferentiableError("series: |x| is not differentiable at 0");
}

Series compose(const Series& outer, const Series& inner) {
  if (inner.value() != 0.0) throw DomainError("series: compose needs an inner series through 0");
  const int n = common_order(outer, inner);
  Series acc = Series::constant(outer.coeff(outer.order()), n);
  for (int k = outer.order() - 1; k >= 0; --k) acc = acc * inner + Series::constant(outer.coeff(k), n);
  return acc.truncated(n);
}

Series revert(const Series& f) {
  if (f.value() != 0.0 || f.order() < 1 || f.coeff(1) == 0.0) {
    throw DomainError("series: reversion needs f(0) = 0 and f'(0) != 0");
  }
  const int n = f.order();
  const Series id = Series::variable(0.0, n);
  Series g = id * Series::constant(1.0 / f.coeff(1), n);
  // Each pass fixes one more coefficient.
  for (int pass = 1; pass < n; ++pass) {
    const Series err = compose(f, g) - id;
    g = g - err * Series::constant(1.0 / f.coeff(1), n);
  }
  return g;
}

Series dot(const SeriesVec3& a, const SeriesVec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

SeriesVec3 cross(const SeriesVec3& a, const SeriesVec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

SeriesVec3 derivative(const SeriesVec3& v) { return {v[0].derivative(), v[1].derivative(), v[2].derivative()}; }

SeriesVec3 scale(const Series& s, const SeriesVec3& v) { return {s * v[0], s * v[1], s * v[2]}; }

SeriesVec3 add(const SeriesVec3& a, const SeriesVec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }

SeriesVec3 sub(const SeriesVec3& a, const SeriesVec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

std::array<double, 3> values(const SeriesVec3& v) { return {v[0].value(), v[1].value(), v[2].value()}; }

}  // namespace mulgeo
