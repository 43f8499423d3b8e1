#include "mulgeo/mnum.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <system_error>

namespace mulgeo {

namespace {

constexpr double kPoleGuard = 1e-14;

MNum checked(double u, const char* op) {
  if (!std::isfinite(u)) {
    throw DomainError(std::string(op) + ": result is not a finite multiplicative number");
  }
  return MNum::from_log(u);
}

bool is_integer(double k) { return std::isfinite(k) && std::floor(k) == k; }

}  // namespace

MNum MNum::from_log(double u) {
  if (!std::isfinite(u)) throw DomainError("from_log: log value must be finite");
  MNum m;
  m.log_ = u;
  return m;
}

MNum MNum::from_value(double v) {
  if (!std::isfinite(v) || !(v > 0.0)) {
    throw DomainError("from_value: multiplicative numbers are positive finite reals, got " +
                      format_real(v));
  }
  return from_log(std::log(v));
}

double MNum::value() const noexcept { return std::exp(log_); }

MNum madd(MNum a, MNum b) { return checked(a.log() + b.log(), "madd"); }
MNum msub(MNum a, MNum b) { return checked(a.log() - b.log(), "msub"); }
MNum mmul(MNum a, MNum b) { return checked(a.log() * b.log(), "mmul"); }

MNum mdiv(MNum a, MNum b) {
  if (b.log() == 0.0) throw DivisionByZeroError("mdiv: division by 0*");
  return checked(a.log() / b.log(), "mdiv");
}

MNum mneg(MNum a) { return MNum::from_log(-a.log()); }

MNum minv(MNum a) {
  if (a.log() == 0.0) throw DivisionByZeroError("minv: 0* has no multiplicative inverse");
  return checked(1.0 / a.log(), "minv");
}

MNum mabs(MNum a) { return MNum::from_log(std::abs(a.log())); }

MNum mpow(MNum a, double k) {
  const double u = a.log();
  if (!std::isfinite(k)) throw DomainError("mpow: exponent must be finite");
  if (u < 0.0 && !is_integer(k)) {
    throw DomainError("mpow: non-integer power of a multiplicative-negative number");
  }
  if (u == 0.0 && k < 0.0) throw DivisionByZeroError("mpow: negative power of 0*");
  return checked(std::pow(u, k), "mpow");
}

MNum msqrt(MNum a) {
  if (a.log() < 0.0) throw DomainError("msqrt: argument below 0*");
  return MNum::from_log(std::sqrt(a.log()));
}

MNum square_of_sum(MNum a, MNum b) {
  const MNum e2 = MNum::from_log(2.0);
  return madd(madd(mpow(a, 2.0), mmul(mmul(e2, a), b)), mpow(b, 2.0));
}

MNum diff_of_squares(MNum a, MNum b) { return mmul(madd(a, b), msub(a, b)); }

MNum msin(MNum theta) { return MNum::from_log(std::sin(theta.log())); }
MNum mcos(MNum theta) { return MNum::from_log(std::cos(theta.log())); }

MNum mtan(MNum theta) {
  const double c = std::cos(theta.log());
  if (std::abs(c) < kPoleGuard) throw DomainError("mtan: cos(log theta) = 0");
  return checked(std::sin(theta.log()) / c, "mtan");
}

MNum mcot(MNum theta) {
  const double s = std::sin(theta.log());
  if (std::abs(s) < kPoleGuard) throw DomainError("mcot: sin(log theta) = 0");
  return checked(std::cos(theta.log()) / s, "mcot");
}

MNum marccos(MNum x) {
  const double u = x.log();
  if (!(u >= -1.0 && u <= 1.0)) throw DomainError("marccos: log argument outside [-1, 1]");
  return MNum::from_log(std::acos(u));
}

bool approx_equal(MNum a, MNum b, double atol, double rtol) noexcept {
  return std::abs(a.log() - b.log()) <= atol + rtol * std::abs(b.log());
}

std::string format_real(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, ptr);
}

double parse_real(std::string_view text) {
  std::size_t lead = 0;
  while (lead < text.size() && text[lead] == ' ') ++lead;
  std::string_view body = text.substr(lead);
  while (!body.empty() && body.back() == ' ') body.remove_suffix(1);
  // from_chars rejects a leading '+'.
  if (!body.empty() && body.front() == '+') body.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
  if (body.empty() || ec != std::errc{} || ptr != body.data() + body.size()) {
    throw ParseError("not a real number: '" + std::string(text) + "'", lead, {"real"});
  }
  return v;
}

std::string render(MNum x, Style style) {
  const double u = x.log();
  const auto log_form = [u] { return u == 1.0 ? std::string("e") : "e^" + format_real(u); };
  switch (style) {
    case Style::Log:
      return log_form();
    case Style::Value:
      return format_real(x.value());
    case Style::Auto:
      break;
  }
  const double v = x.value();
  if (v >= 1e-6 && v <= 1e6) {
    std::string text = format_real(v);
    if (std::log(parse_real(text)) == u) return text;
  }
  return log_form();
}

MNum parse_mnum(std::string_view text) {
  std::size_t b = 0;
  std::size_t e = text.size();
  while (b < e && text[b] == ' ') ++b;
  while (e > b && text[e - 1] == ' ') --e;
  const std::string_view body = text.substr(b, e - b);
  if (body == "e") return MNum::one();
  if (body.size() >= 2 && body[0] == 'e' && body[1] == '^') {
    std::string_view exponent = body.substr(2);
    if (exponent.size() >= 2 && exponent.front() == '{' && exponent.back() == '}') {
      exponent = exponent.substr(1, exponent.size() - 2);
    }
    try {
      return MNum::from_log(parse_real(exponent));
    } catch (const ParseError&) {
      throw ParseError("bad log-form literal: '" + std::string(body) + "'", b + 2, {"real"});
    }
  }
  double v = 0.0;
  try {
    v = parse_real(body);
  } catch (const ParseError&) {
    throw ParseError("bad multiplicative literal: '" + std::string(body) + "'", b,
                     {"e^<real>", "positive decimal"});
  }
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ParseError("multiplicative literal must be positive: '" + std::string(body) + "'", b,
                     {"positive decimal"});
  }
  return MNum::from_value(v);
}

}  // namespace mulgeo
