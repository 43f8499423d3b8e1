#pragma once

// The multiplicative real line R* = (0, inf).
//
// An MNum stores the classical logarithm of the positive real it represents.
// Every multiplicative operation is the classical operation conjugated by exp:
// op*(a, b) = exp(op(log a, log b)). Keeping the log as the canonical value
// makes +* and -* exact and lets numbers like e^500 exist without overflow.

#include <compare>
#include <string>
#include <string_view>

#include "mulgeo/errors.hpp"

namespace mulgeo {

class MNum {
 public:
  /// 0* (the number 1).
  constexpr MNum() = default;

  static MNum from_log(double u);
  /// Rejects v <= 0 and non-finite v.
  static MNum from_value(double v);

  constexpr double log() const noexcept { return log_; }
  double value() const noexcept;

  static constexpr MNum zero() noexcept { return MNum{}; }
  static constexpr MNum one() noexcept {
    MNum m;
    m.log_ = 1.0;
    return m;
  }

  // Multiplicative order coincides with the order of the logs.
  constexpr auto operator<=>(const MNum&) const = default;

 private:
  double log_ = 0.0;
};

inline MNum from_value(double v) { return MNum::from_value(v); }
inline MNum from_log(double u) { return MNum::from_log(u); }
inline double to_value(MNum x) noexcept { return x.value(); }
inline double to_log(MNum x) noexcept { return x.log(); }

// Field operations (Table of basic multiplicative operations).
MNum madd(MNum a, MNum b);
MNum msub(MNum a, MNum b);
MNum mmul(MNum a, MNum b);
/// Throws DivisionByZeroError when b is 0*.
MNum mdiv(MNum a, MNum b);

MNum mneg(MNum a);
/// Multiplicative reciprocal e^{1/log a}; throws for a = 0*.
MNum minv(MNum a);
/// a for a >= 0* (a >= 1), -*a otherwise.
MNum mabs(MNum a);

/// e^{(log a)^k}. Non-integer k needs log a >= 0.
MNum mpow(MNum a, double k);
MNum msqrt(MNum a);

/// (a +* b)^{2*} expanded as a^{2*} +* e^2 .* a .* b +* b^{2*}.
MNum square_of_sum(MNum a, MNum b);
/// (a +* b) .* (a -* b).
MNum diff_of_squares(MNum a, MNum b);

MNum msin(MNum theta);
MNum mcos(MNum theta);
MNum mtan(MNum theta);
MNum mcot(MNum theta);
/// Inverse of mcos with log result in [0, pi]; needs log x in [-1, 1].
MNum marccos(MNum x);

/// |log a - log b| <= atol + rtol * |log b|.
bool approx_equal(MNum a, MNum b, double atol = 1e-12, double rtol = 1e-9) noexcept;

/// Multiplicative distance on R* expressed in log space, |log a - log b|.
inline double log_distance(MNum a, MNum b) noexcept {
  const double d = a.log() - b.log();
  return d < 0 ? -d : d;
}

enum class Style {
  Auto,   // value form inside [1e-6, 1e6] when it re-parses losslessly
  Log,    // e^<u>
  Value,  // positive decimal
};

std::string render(MNum x, Style style = Style::Auto);
/// Accepts `e^<real>`, `e`, or a positive decimal; surrounding blanks ignored.
MNum parse_mnum(std::string_view text);

/// Shortest decimal string that round-trips to the same double.
std::string format_real(double v);
/// Strict parse of a complete real literal; throws ParseError.
double parse_real(std::string_view text);

}  // namespace mulgeo
