#pragma once

// Multiplicative vectors in R*^n. A vector is determined by its log-image
// (log u_1, ..., log u_n); inner product, norm, cross product and angle are
// the classical ones applied to log-images and mapped back through exp.

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>

#include "mulgeo/mnum.hpp"

namespace mulgeo {

template <std::size_t N>
class MVec {
 public:
  static_assert(N >= 1);
  using LogImage = std::array<double, N>;

  constexpr MVec() = default;
  constexpr explicit MVec(const std::array<MNum, N>& c) : c_(c) {}

  static MVec from_logs(const LogImage& logs) {
    MVec v;
    for (std::size_t i = 0; i < N; ++i) v.c_[i] = MNum::from_log(logs[i]);
    return v;
  }

  static constexpr std::size_t size() noexcept { return N; }
  constexpr MNum operator[](std::size_t i) const { return c_[i]; }
  constexpr MNum& operator[](std::size_t i) { return c_[i]; }

  LogImage logs() const noexcept {
    LogImage out{};
    for (std::size_t i = 0; i < N; ++i) out[i] = c_[i].log();
    return out;
  }

  constexpr bool operator==(const MVec&) const = default;

 private:
  std::array<MNum, N> c_{};
};

using MVec2 = MVec<2>;
using MVec3 = MVec<3>;

template <std::size_t N>
MVec<N> vadd(const MVec<N>& u, const MVec<N>& v) {
  MVec<N> r;
  for (std::size_t i = 0; i < N; ++i) r[i] = madd(u[i], v[i]);
  return r;
}

template <std::size_t N>
MVec<N> vsub(const MVec<N>& u, const MVec<N>& v) {
  MVec<N> r;
  for (std::size_t i = 0; i < N; ++i) r[i] = msub(u[i], v[i]);
  return r;
}

template <std::size_t N>
MVec<N> vneg(const MVec<N>& u) {
  MVec<N> r;
  for (std::size_t i = 0; i < N; ++i) r[i] = mneg(u[i]);
  return r;
}

/// a .* u, componentwise e^{log a log u_i}.
template <std::size_t N>
MVec<N> smul(MNum a, const MVec<N>& u) {
  MVec<N> r;
  for (std::size_t i = 0; i < N; ++i) r[i] = mmul(a, u[i]);
  return r;
}

template <std::size_t N>
MNum minner(const MVec<N>& u, const MVec<N>& v) {
  double dot = 0.0;
  for (std::size_t i = 0; i < N; ++i) dot += u[i].log() * v[i].log();
  return MNum::from_log(dot);
}

template <std::size_t N>
MNum mnorm(const MVec<N>& u) {
  double sq = 0.0;
  for (std::size_t i = 0; i < N; ++i) sq += u[i].log() * u[i].log();
  return MNum::from_log(std::sqrt(sq));
}

template <std::size_t N>
MNum mdistance(const MVec<N>& u, const MVec<N>& v) {
  return mnorm(vsub(u, v));
}

/// u /* ||u||*. Throws DivisionByZeroError for the zero vector.
template <std::size_t N>
MVec<N> mnormalize(const MVec<N>& u) {
  const MNum len = mnorm(u);
  if (len.log() == 0.0) throw DivisionByZeroError("mnormalize: zero vector");
  MVec<N> r;
  for (std::size_t i = 0; i < N; ++i) r[i] = mdiv(u[i], len);
  return r;
}

MVec3 mcross(const MVec3& u, const MVec3& v);

/// arccos* of the inner product of the normalized inputs; log result in [0, pi].
template <std::size_t N>
MNum mangle(const MVec<N>& u, const MVec<N>& v) {
  const MVec<N> a = mnormalize(u);
  const MVec<N> b = mnormalize(v);
  double c = minner(a, b).log();
  // Rounding can push |cos| a hair past 1 for parallel inputs.
  c = c > 1.0 ? 1.0 : (c < -1.0 ? -1.0 : c);
  return marccos(MNum::from_log(c));
}

/// Plane sum*(normal_i .* x_i) -* offset = 0*, stored with "+*" coefficients.
struct MPlane {
  MVec3 normal;
  MNum offset;
};

/// Throws DomainError when the normal is the zero vector.
MPlane make_plane(const MVec3& normal, MNum offset);
MNum plane_eval(const MPlane& plane, const MVec3& point);
bool plane_contains(const MPlane& plane, const MVec3& point, double atol = 1e-12,
                    double rtol = 1e-9);

/// Renders as `(c1, c2, c3)` using the MNum display rules.
template <std::size_t N>
std::string render(const MVec<N>& v, Style style = Style::Auto) {
  std::string out = "(";
  for (std::size_t i = 0; i < N; ++i) {
    if (i) out += ", ";
    out += render(v[i], style);
  }
  return out + ")";
}

/// Parses `(e^5, e^3, e^-2)` or decimal components; the length must be N.
template <std::size_t N>
MVec<N> parse_mvec(std::string_view text);

extern template MVec2 parse_mvec<2>(std::string_view);
extern template MVec3 parse_mvec<3>(std::string_view);

}  // namespace mulgeo
