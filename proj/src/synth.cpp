#include "mulgeo/synth.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

namespace mulgeo {

namespace {

using State = std::array<double, 12>;  // X, T, N, B

constexpr int kX = 0;
constexpr int kT = 3;
constexpr int kN = 6;
constexpr int kB = 9;

struct Synthesis {
  CurvatureProfile kappa;
  CurvatureProfile tau;
  double u0 = 0.0;
  double u1 = 0.0;
  double h = 0.0;
  std::vector<State> nodes;

  double kappa_at(double u) const {
    const double k = kappa(u, 0).value();
    if (!(k > 0.0)) {
      throw DomainError("curve_from_curvatures: log kappa must be positive, got " + format_real(k) +
                        " at U = " + format_real(u));
    }
    return k;
  }

  State rhs(double u, const State& s) const {
    const double k = kappa_at(u);
    const double t = tau(u, 0).value();
    State d{};
    for (int i = 0; i < 3; ++i) {
      d[kX + i] = s[kT + i];
      d[kT + i] = k * s[kN + i];
      d[kN + i] = -k * s[kT + i] + t * s[kB + i];
      d[kB + i] = -t * s[kN + i];
    }
    return d;
  }

  // Taylor coefficients of the Frenet system started from s at u.
  std::vector<State> taylor(double u, const State& s, int order) const {
    const Series k = kappa(u, std::max(order - 1, 0));
    const Series t = tau(u, std::max(order - 1, 0));
    const int kmax = k.order();
    const int tmax = t.order();
    std::vector<State> c(static_cast<std::size_t>(order) + 1, State{});
    c[0] = s;
    for (int j = 0; j < order; ++j) {
      State next{};
      for (int i = 0; i < 3; ++i) {
        double kn = 0.0;
        double kt = 0.0;
        double tb = 0.0;
        double tn = 0.0;
        for (int m = 0; m <= j; ++m) {
          const State& cm = c[static_cast<std::size_t>(j - m)];
          if (m <= kmax) {
            kn += k.coeff(m) * cm[kN + i];
            kt += k.coeff(m) * cm[kT + i];
          }
          if (m <= tmax) {
            tb += t.coeff(m) * cm[kB + i];
            tn += t.coeff(m) * cm[kN + i];
          }
        }
        const double inv = 1.0 / (j + 1);
        next[kX + i] = c[static_cast<std::size_t>(j)][kT + i] * inv;
        next[kT + i] = kn * inv;
        next[kN + i] = (tb - kt) * inv;
        next[kB + i] = -tn * inv;
      }
      c[static_cast<std::size_t>(j) + 1] = next;
    }
    return c;
  }

  State state_at(double u) const {
    const int last = static_cast<int>(nodes.size()) - 1;
    const int k = std::clamp(static_cast<int>(std::lround((u - u0) / h)), 0, last);
    const double base = (k == last) ? u1 : u0 + k * h;
    const double delta = u - base;
    const auto c = taylor(base, nodes[static_cast<std::size_t>(k)], Series::kMaxOrder);
    State out{};
    for (int j = Series::kMaxOrder; j >= 0; --j) {
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = out[i] * delta + c[static_cast<std::size_t>(j)][i];
    }
    return out;
  }

  SeriesVec3 bridge(double u, int order) const {
    if (u < u0 - h || u > u1 + h) {
      throw DomainError("synthesized curve evaluated outside its range at U = " + format_real(u));
    }
    order = std::clamp(order, 0, Series::kMaxOrder);
    const State s = state_at(u);
    const auto c = taylor(u, s, order);
    SeriesVec3 x{Series::constant(0.0, order), Series::constant(0.0, order), Series::constant(0.0, order)};
    for (int j = 0; j <= order; ++j) {
      for (int i = 0; i < 3; ++i) x[static_cast<std::size_t>(i)].set_coeff(j, c[static_cast<std::size_t>(j)][kX + i]);
    }
    return x;
  }
};

double dot3(const State& s, int a, int b) {
  return s[a] * s[b] + s[a + 1] * s[b + 1] + s[a + 2] * s[b + 2];
}

double drift(const State& s) {
  const double cross0 = s[kT + 1] * s[kN + 2] - s[kT + 2] * s[kN + 1];
  const double cross1 = s[kT + 2] * s[kN + 0] - s[kT + 0] * s[kN + 2];
  const double cross2 = s[kT + 0] * s[kN + 1] - s[kT + 1] * s[kN + 0];
  double d = std::max({std::abs(dot3(s, kT, kT) - 1.0), std::abs(dot3(s, kN, kN) - 1.0),
                       std::abs(dot3(s, kB, kB) - 1.0), std::abs(dot3(s, kT, kN)),
                       std::abs(dot3(s, kT, kB)), std::abs(dot3(s, kN, kB))});
  d = std::max({d, std::abs(cross0 - s[kB]), std::abs(cross1 - s[kB + 1]), std::abs(cross2 - s[kB + 2])});
  return d;
}

void reorthonormalize(State& s) {
  const double lt = std::sqrt(dot3(s, kT, kT));
  for (int i = 0; i < 3; ++i) s[kT + i] /= lt;
  const double p = dot3(s, kN, kT);
  for (int i = 0; i < 3; ++i) s[kN + i] -= p * s[kT + i];
  const double ln = std::sqrt(dot3(s, kN, kN));
  for (int i = 0; i < 3; ++i) s[kN + i] /= ln;
  s[kB + 0] = s[kT + 1] * s[kN + 2] - s[kT + 2] * s[kN + 1];
  s[kB + 1] = s[kT + 2] * s[kN + 0] - s[kT + 0] * s[kN + 2];
  s[kB + 2] = s[kT + 0] * s[kN + 1] - s[kT + 1] * s[kN + 0];
}

}  // namespace

CurveJet curve_from_curvatures(CurvatureProfile kappa_log, CurvatureProfile tau_log, ParamRange range,
                               const SynthOptions& options) {
  if (!kappa_log || !tau_log) throw DomainError("curve_from_curvatures: missing curvature profile");
  if (!(options.step > 0.0)) throw DomainError("curve_from_curvatures: step must be positive");
  range = make_range(range.lo, range.hi);
  auto syn = std::make_shared<Synthesis>();
  syn->kappa = std::move(kappa_log);
  syn->tau = std::move(tau_log);
  syn->u0 = range.lo.log();
  syn->u1 = range.hi.log();
  const int steps = std::max(1, static_cast<int>(std::ceil((syn->u1 - syn->u0) / options.step)));
  syn->h = (syn->u1 - syn->u0) / steps;
  syn->nodes.reserve(static_cast<std::size_t>(steps) + 1);

  State s{};
  s[kT] = 1.0;
  s[kN + 1] = 1.0;
  s[kB + 2] = 1.0;
  syn->nodes.push_back(s);
  const double h = syn->h;
  for (int i = 0; i < steps; ++i) {
    const double u = syn->u0 + i * h;
    const State k1 = syn->rhs(u, s);
    State tmp{};
    for (std::size_t j = 0; j < s.size(); ++j) tmp[j] = s[j] + 0.5 * h * k1[j];
    const State k2 = syn->rhs(u + 0.5 * h, tmp);
    for (std::size_t j = 0; j < s.size(); ++j) tmp[j] = s[j] + 0.5 * h * k2[j];
    const State k3 = syn->rhs(u + 0.5 * h, tmp);
    for (std::size_t j = 0; j < s.size(); ++j) tmp[j] = s[j] + h * k3[j];
    const State k4 = syn->rhs(u + h, tmp);
    for (std::size_t j = 0; j < s.size(); ++j) s[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    const double d = drift(s);
    if (!(d <= options.drift_tol)) {
      throw AccuracyError("curve_from_curvatures: frame drift " + format_real(d) + " at U = " +
                              format_real(u + h) + " exceeds " + format_real(options.drift_tol) +
                              "; reduce the step",
                          d);
    }
    reorthonormalize(s);
    syn->nodes.push_back(s);
  }
  syn->kappa_at(syn->u1);
  return CurveJet([syn](double u, int order) { return syn->bridge(u, order); }, range,
                  Provenance::Synthesized, "synthesized");
}

}  // namespace mulgeo
