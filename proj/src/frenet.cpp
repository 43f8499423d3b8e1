#include "mulgeo/frenet.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

namespace mulgeo {

namespace {

double norm3(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

Vec3 first_derivative(const SeriesVec3& f) { return {f[0].coeff(1), f[1].coeff(1), f[2].coeff(1)}; }

double bridge_speed(const CurveJet& curve, double u) { return norm3(first_derivative(curve.bridge(u, 1))); }

void require_order(const SeriesVec3& f, int needed, double u) {
  for (const Series& c : f) {
    if (c.order() < needed) {
      throw DomainError("frame at log s = " + format_real(u) + " needs " + std::to_string(needed) +
                        " derivative orders, the curve provides " + std::to_string(c.order()));
    }
  }
}

}  // namespace

FrenetApparatus FrenetLocal::apparatus() const {
  return FrenetApparatus{MVec3::from_logs(t), MVec3::from_logs(n),      MVec3::from_logs(b),
                         MNum::from_log(kappa), MNum::from_log(tau), MNum::from_log(u)};
}

MNum speed_star(const CurveJet& curve, MNum s, const FrenetOptions& options) {
  const double v = bridge_speed(curve, s.log());
  if (v < options.speed_floor) {
    throw SingularCurveError("curve '" + curve.label() + "' is singular at log s = " + format_real(s.log()),
                             s.log());
  }
  return MNum::from_log(v);
}

NaturalReport is_natural(const CurveJet& curve, int samples, double tol) {
  NaturalReport r;
  for (MNum s : log_uniform_samples(curve.domain(), samples)) {
    const double v = bridge_speed(curve, s.log());
    r.deviation = std::max(r.deviation, std::abs(v - 1.0));
    r.literal_deviation = std::max(r.literal_deviation, std::abs(v));
    ++r.samples;
  }
  r.natural = r.deviation <= tol;
  r.literal_reading = r.literal_deviation <= tol;
  return r;
}

FrenetLocal frenet_from_natural_jet(const SeriesVec3& x, double u, const FrenetOptions& options) {
  require_order(x, 3, u);
  FrenetLocal fl;
  fl.u = u;
  fl.x = values(x);
  const SeriesVec3 t = derivative(x);
  const SeriesVec3 a = derivative(t);
  const Series k2 = dot(a, a);
  if (!(std::sqrt(k2.value()) > options.kappa_floor)) {
    throw FrameUndefinedError("curvature vanishes at log s = " + format_real(u) +
                                  ", the principal normal is undefined",
                              u);
  }
  const Series kappa = sqrt(k2);
  const SeriesVec3 n{a[0] / kappa, a[1] / kappa, a[2] / kappa};
  const SeriesVec3 b = cross(t, n);
  const SeriesVec3 dn = derivative(n);
  const Series tau = dot(dn, b);
  const SeriesVec3 db = derivative(b);

  fl.speed = norm3(values(t));
  fl.t = values(t);
  fl.n = values(n);
  fl.b = values(b);
  fl.kappa = kappa.value();
  fl.tau = tau.value();
  fl.kappa_series = kappa;
  fl.tau_series = tau;
  Vec3 r0{};
  Vec3 r1{};
  Vec3 r2{};
  for (std::size_t i = 0; i < 3; ++i) {
    r0[i] = a[i].value() - fl.kappa * fl.n[i];
    r1[i] = dn[i].value() + fl.kappa * fl.t[i] - fl.tau * fl.b[i];
    r2[i] = db[i].value() + fl.tau * fl.n[i];
  }
  fl.residuals = {norm3(r0), norm3(r1), norm3(r2)};
  return fl;
}

SeriesVec3 to_arclength(const SeriesVec3& f, double u, const FrenetOptions& options) {
  const SeriesVec3 df = derivative(f);
  const Series v2 = dot(df, df);
  if (!(std::sqrt(v2.value()) > options.speed_floor)) {
    throw SingularCurveError("curve is singular (zero log-speed) at log s = " + format_real(u), u);
  }
  const Series sigma = sqrt(v2).integral(0.0);
  const Series h = revert(sigma);
  return {compose(f[0], h), compose(f[1], h), compose(f[2], h)};
}

SeriesVec3 principal_normal_jet(const SeriesVec3& f, double u, const FrenetOptions& options) {
  require_order(f, 2, u);
  const SeriesVec3 df = derivative(f);
  const Series v2 = dot(df, df);
  if (!(std::sqrt(v2.value()) > options.speed_floor)) {
    throw SingularCurveError("curve is singular (zero log-speed) at log s = " + format_real(u), u);
  }
  const Series v = sqrt(v2);
  const SeriesVec3 t{df[0] / v, df[1] / v, df[2] / v};
  const SeriesVec3 a = derivative(df);
  const Series along = dot(a, t);
  const SeriesVec3 p = sub(a, scale(along, t));
  const Series len = sqrt(dot(p, p));
  if (!(len.value() / v2.value() > options.kappa_floor)) {
    throw FrameUndefinedError("curvature vanishes at log s = " + format_real(u), u);
  }
  return {p[0] / len, p[1] / len, p[2] / len};
}

FrenetApparatus frenet(const CurveJet& curve, MNum s, const FrenetOptions& options) {
  const double u = s.log();
  const SeriesVec3 f = curve.bridge(u);
  const double v = norm3(first_derivative(f));
  if (v < options.speed_floor) {
    throw SingularCurveError("curve '" + curve.label() + "' is singular at log s = " + format_real(u), u);
  }
  if (std::abs(v - 1.0) > options.natural_tol) {
    throw NotNaturalError("curve '" + curve.label() + "' is not naturally parametrized (log-speed " +
                              format_real(v) + "); reparametrize first",
                          std::abs(v - 1.0));
  }
  return frenet_from_natural_jet(f, u, options).apparatus();
}

FrenetLocal frenet_local(const CurveJet& curve, MNum s, const FrenetOptions& options) {
  const double u = s.log();
  const SeriesVec3 f = curve.bridge(u);
  const double v = norm3(first_derivative(f));
  FrenetLocal fl = frenet_from_natural_jet(to_arclength(f, u, options), u, options);
  fl.speed = v;
  return fl;
}

namespace {

// 8-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 4> kGaussX{0.1834346424956498, 0.5255324099163290, 0.7966664774136267,
                                        0.9602898564975363};
constexpr std::array<double, 4> kGaussW{0.3626837833783620, 0.3137066458778873, 0.2223810344533745,
                                        0.1012285362903763};

template <class G>
double gauss8(const G& g, double a, double b) {
  const double m = 0.5 * (a + b);
  const double r = 0.5 * (b - a);
  double acc = 0.0;
  for (std::size_t i = 0; i < kGaussX.size(); ++i) {
    acc += kGaussW[i] * (g(m - r * kGaussX[i]) + g(m + r * kGaussX[i]));
  }
  return acc * r;
}

struct ArcTable {
  CurveJet curve;
  double u0;
  double width;
  std::vector<double> cum;

  double speed(double u) const { return bridge_speed(curve, u); }

  double sigma(double u) const {
    const int last = static_cast<int>(cum.size()) - 2;
    const int k = std::clamp(static_cast<int>(std::floor((u - u0) / width)), 0, last);
    const double start = u0 + k * width;
    return cum[static_cast<std::size_t>(k)] + gauss8([this](double x) { return speed(x); }, start, u);
  }

  double invert(double target) const {
    const auto it = std::upper_bound(cum.begin(), cum.end(), target);
    const int k = std::clamp(static_cast<int>(it - cum.begin()) - 1, 0, static_cast<int>(cum.size()) - 2);
    const double c0 = cum[static_cast<std::size_t>(k)];
    const double c1 = cum[static_cast<std::size_t>(k) + 1];
    const double lo = u0 + k * width;
    double u = lo + width * (c1 > c0 ? (target - c0) / (c1 - c0) : 0.0);
    for (int iter = 0; iter < 30; ++iter) {
      const double step = (sigma(u) - target) / speed(u);
      u -= step;
      if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(u))) break;
    }
    return u;
  }
};

}  // namespace

CurveJet reparametrize_natural(const CurveJet& curve, const ReparamOptions& options) {
  if (options.panels < 1) throw DomainError("reparametrize_natural: panels must be positive");
  auto table = std::make_shared<ArcTable>(ArcTable{curve, curve.domain().lo.log(), 0.0, {}});
  const double u1 = curve.domain().hi.log();
  table->width = (u1 - table->u0) / options.panels;
  table->cum.assign(static_cast<std::size_t>(options.panels) + 1, 0.0);
  const FrenetOptions fo;
  for (int k = 0; k < options.panels; ++k) {
    const double a = table->u0 + k * table->width;
    const double b = (k + 1 == options.panels) ? u1 : a + table->width;
    const double piece = gauss8(
        [&](double x) {
          const double v = table->speed(x);
          if (v < fo.speed_floor) {
            throw SingularCurveError("curve '" + curve.label() + "' is singular near log s = " + format_real(x),
                                     x);
          }
          return v;
        },
        a, b);
    table->cum[static_cast<std::size_t>(k) + 1] = table->cum[static_cast<std::size_t>(k)] + piece;
  }
  const double length = table->cum.back();
  const double v0 = table->u0;
  CurveJet::Bridge bridge = [table, v0](double v, int order) {
    const double u = table->invert(v - v0);
    return to_arclength(table->curve.bridge(u, order), u);
  };
  CurveJet out(std::move(bridge), ParamRange{MNum::from_log(v0), MNum::from_log(v0 + length)},
               Provenance::Reparametrized, "natural(" + curve.label() + ")");
  const NaturalReport check = is_natural(out, 16, options.tol);
  if (!check.natural) {
    throw AccuracyError("reparametrize_natural: log-speed deviates by " + format_real(check.deviation),
                        check.deviation);
  }
  return out;
}

}  // namespace mulgeo
