#include "mulgeo/mcalc.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "mulgeo/curve.hpp"

namespace mulgeo {

double ScalarMapJet::bridge_value(double u) const {
  if (bridge) return bridge(u, 0).value();
  if (!eval) throw DomainError("ScalarMapJet: neither eval nor bridge is set");
  return eval(MNum::from_log(u)).log();
}

Series ScalarMapJet::bridge_derivs(double u, int order) const {
  if (bridge) return bridge(u, order);
  const int n = std::min(order, 3);
  Series s = Series::constant(bridge_value(u), n);
  const auto g = [this](double x) { return bridge_value(x); };
  double factorial = 1.0;
  for (int k = 1; k <= n; ++k) {
    factorial *= k;
    s.set_coeff(k, central_difference(g, u, k) / factorial);
  }
  return s;
}

ScalarMapJet ScalarMapJet::from_eval(Eval eval) {
  ScalarMapJet f;
  f.eval = std::move(eval);
  return f;
}

ScalarMapJet ScalarMapJet::from_bridge(Bridge bridge) {
  ScalarMapJet f;
  f.eval = [bridge](MNum s) { return MNum::from_log(bridge(s.log(), 0).value()); };
  f.bridge = std::move(bridge);
  return f;
}

double central_difference(const std::function<double(double)>& g, double x, int order) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double scale = std::max(1.0, std::abs(x));
  double h = 0.0;
  std::function<double(double)> rule;
  switch (order) {
    case 1:
      h = std::cbrt(eps) * scale;
      rule = [&](double step) { return (g(x + step) - g(x - step)) / (2.0 * step); };
      break;
    case 2:
      h = std::pow(eps, 1.0 / 5.0) * scale;
      rule = [&](double step) { return (g(x + step) - 2.0 * g(x) + g(x - step)) / (step * step); };
      break;
    case 3:
      h = std::pow(eps, 1.0 / 6.0) * scale;
      rule = [&](double step) {
        return (g(x + 2 * step) - 2.0 * g(x + step) + 2.0 * g(x - step) - g(x - 2 * step)) /
               (2.0 * step * step * step);
      };
      break;
    default:
      throw DomainError("central_difference: order must be 1, 2 or 3");
  }
  const double coarse = rule(h);
  const double fine = rule(h / 2.0);
  const double result = (4.0 * fine - coarse) / 3.0;
  if (!std::isfinite(result)) {
    throw DomainError("central_difference: non-finite values near " + format_real(x));
  }
  return result;
}

MNum star_derivative(const ScalarMapJet& f, MNum s, int order) {
  if (order < 1 || order > 3) throw DomainError("star_derivative: order must be 1, 2 or 3");
  const double u = s.log();
  if (f.has_jets()) {
    const double d = f.bridge(u, order).derivative(order);
    if (!std::isfinite(d)) throw DomainError("star_derivative: non-finite jet");
    return MNum::from_log(d);
  }
  return MNum::from_log(central_difference([&f](double x) { return f.bridge_value(x); }, u, order));
}

namespace {

struct SimpsonState {
  const std::function<double(double)>& g;
  int max_depth;
  bool exhausted = false;
  double worst = 0.0;
};

double simpson_step(SimpsonState& st, double a, double b, double fa, double fm, double fb,
                    double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = st.g(lm);
  const double frm = st.g(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (!std::isfinite(delta)) throw DomainError("adaptive_simpson: integrand is not finite");
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  if (depth >= st.max_depth) {
    st.exhausted = true;
    st.worst = std::max(st.worst, std::abs(delta) / 15.0);
    return left + right + delta / 15.0;
  }
  return simpson_step(st, a, m, fa, flm, fm, left, tol / 2.0, depth + 1) +
         simpson_step(st, m, b, fm, frm, fb, right, tol / 2.0, depth + 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& g, double lo, double hi,
                        QuadratureOptions options) {
  if (lo == hi) return 0.0;
  if (hi < lo) return -adaptive_simpson(g, hi, lo, options);
  SimpsonState st{g, options.max_depth};
  // Four initial panels so that symmetric integrands cannot fool the first test.
  const int panels = 4;
  const double width = (hi - lo) / panels;
  double total = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double a = lo + i * width;
    const double b = (i + 1 == panels) ? hi : a + width;
    const double fa = g(a);
    const double fb = g(b);
    const double fm = g(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    total += simpson_step(st, a, b, fa, fm, fb, whole, options.tolerance / panels, 0);
  }
  if (st.exhausted) {
    throw AccuracyError("adaptive_simpson: tolerance not reached, estimate " + format_real(total) +
                            " with local error " + format_real(st.worst),
                        total);
  }
  return total;
}

MNum star_integral_definite(const ScalarMapJet& f, MNum a, MNum b, QuadratureOptions options) {
  const double value =
      adaptive_simpson([&f](double u) { return f.bridge_value(u); }, a.log(), b.log(), options);
  return MNum::from_log(value);
}

ScalarMapJet star_antiderivative(ScalarMapJet f, MNum base, QuadratureOptions options) {
  return ScalarMapJet::from_eval(
      [f = std::move(f), base, options](MNum s) { return star_integral_definite(f, base, s, options); });
}

MNum star_arclength(const CurveJet& curve, MNum a, MNum b, QuadratureOptions options) {
  const auto speed = [&curve](double u) {
    const SeriesVec3 x = curve.bridge(u, 1);
    const double dx = x[0].coeff(1);
    const double dy = x[1].coeff(1);
    const double dz = x[2].coeff(1);
    return std::sqrt(dx * dx + dy * dy + dz * dz);
  };
  return MNum::from_log(adaptive_simpson(speed, a.log(), b.log(), options));
}

}  // namespace mulgeo
