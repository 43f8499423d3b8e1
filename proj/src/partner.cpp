#include "mulgeo/partner.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace mulgeo {

std::string_view to_string(PartnerKind k) { return k == PartnerKind::Bertrand ? "bertrand" : "mannheim"; }

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

const IdentityResult& PartnerReport::identity(std::string_view name) const {
  for (const auto& id : identities) {
    if (id.name == name) return id;
  }
  throw DomainError("partner report has no identity '" + std::string(name) + "'");
}

bool PartnerReport::passed() const {
  return std::all_of(identities.begin(), identities.end(), [](const IdentityResult& id) {
    return id.verdict == Verdict::Pass || (id.verdict == Verdict::Indeterminate && id.may_be_indeterminate);
  });
}

nlohmann::json to_json(const PartnerReport& r) {
  const auto constant = [](const ConstantReport& c) {
    return nlohmann::json{{"value", render(c.value, Style::Log)}, {"log", c.value.log()}, {"constancy", c.constancy}};
  };
  nlohmann::json j;
  j["kind"] = std::string(to_string(r.kind));
  j["lambda"] = constant(r.lambda);
  j["mu"] = constant(r.mu);
  j["theta"] = constant(r.theta);
  j["samples"] = r.samples;
  j["tol"] = r.tol;
  j["passed"] = r.passed();
  j["identities"] = nlohmann::json::array();
  for (const auto& id : r.identities) {
    nlohmann::json e{{"name", id.name},
                     {"verdict", std::string(to_string(id.verdict))},
                     {"max_residual", id.max_residual},
                     {"mean_residual", id.mean_residual},
                     {"samples_used", id.samples_used},
                     {"skipped_samples", id.skipped_samples}};
    if (id.theta_sign != 0) e["theta_sign"] = id.theta_sign;
    if (!id.notice.empty()) e["notice"] = id.notice;
    j["identities"].push_back(e);
  }
  return j;
}

namespace {

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
Vec3 combo(double p, const Vec3& a, double q, const Vec3& b) {
  return {p * a[0] + q * b[0], p * a[1] + q * b[1], p * a[2] + q * b[2]};
}
Vec3 minus(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Vec3 scaled(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

ConstantReport constant_of(const std::vector<double>& logs) {
  ConstantReport c;
  if (logs.empty()) return c;
  const double m = median(logs);
  c.value = MNum::from_log(m);
  for (double x : logs) c.constancy = std::max(c.constancy, std::abs(x - m));
  return c;
}

// Residuals of one identity, kept for both signs of theta when it matters.
struct Accum {
  explicit Accum(std::string n) : name(std::move(n)) {}

  std::string name;
  bool signed_theta = false;
  bool may_be_indeterminate = false;
  std::vector<double> plus;
  std::vector<double> minus;
  int skipped = 0;
  std::string notice;

  void add(double r) { plus.push_back(r); }
  void add(double rp, double rm) {
    plus.push_back(rp);
    minus.push_back(rm);
  }

  IdentityResult finish(double tol) const {
    IdentityResult out;
    out.name = name;
    out.skipped_samples = skipped;
    out.may_be_indeterminate = may_be_indeterminate;
    out.notice = notice;
    const auto stats = [](const std::vector<double>& v) {
      double mx = 0.0;
      double sum = 0.0;
      for (double x : v) {
        mx = std::max(mx, std::isfinite(x) ? x : INFINITY);
        sum += x;
      }
      return std::pair{mx, v.empty() ? 0.0 : sum / static_cast<double>(v.size())};
    };
    const std::vector<double>* chosen = &plus;
    if (signed_theta) {
      out.theta_sign = 1;
      if (!minus.empty() && stats(minus).first < stats(plus).first) {
        chosen = &minus;
        out.theta_sign = -1;
      }
    }
    out.samples_used = static_cast<int>(chosen->size());
    if (chosen->empty()) {
      out.verdict = Verdict::Indeterminate;
      if (out.notice.empty()) out.notice = "no sample could be evaluated";
      return out;
    }
    const auto [mx, mean] = stats(*chosen);
    out.max_residual = mx;
    out.mean_residual = mean;
    out.verdict = mx <= tol ? Verdict::Pass : Verdict::Fail;
    return out;
  }
};

struct Pair {
  double u;
  FrenetLocal fx;
  Vec3 y;
  std::optional<FrenetLocal> fy;
};

std::vector<Pair> collect(const CurveJet& x, const CurveJet& y, const PartnerOptions& options, int& skipped_x,
                          int& skipped_y) {
  const auto close = [](MNum a, MNum b) { return std::abs(a.log() - b.log()) <= 1e-12 * std::max(1.0, std::abs(b.log())); };
  if (!close(x.domain().lo, y.domain().lo) || !close(x.domain().hi, y.domain().hi)) {
    throw DimensionError("partner curves must share their parameter domain (correspondence by equal s)");
  }
  std::vector<Pair> out;
  skipped_x = 0;
  skipped_y = 0;
  for (MNum s : log_uniform_samples(x.domain(), options.samples)) {
    Pair p;
    p.u = s.log();
    try {
      p.fx = frenet_local(x, s, options.frenet);
    } catch (const FrameUndefinedError&) {
      ++skipped_x;
      continue;
    }
    p.y = values(y.bridge(p.u, 0));
    try {
      p.fy = frenet_local(y, s, options.frenet);
    } catch (const FrameUndefinedError&) {
      ++skipped_y;
    } catch (const SingularCurveError&) {
      ++skipped_y;
    }
    out.push_back(std::move(p));
  }
  return out;
}

double angle(const Vec3& a, const Vec3& b) { return std::atan2(norm(cross(a, b)), dot(a, b)); }

std::string skipped_notice(int skipped_y) {
  return skipped_y > 0 ? std::to_string(skipped_y) + " samples skipped: partner frame undefined (zero curvature)"
                       : std::string();
}

CurveJet offset_curve(const CurveJet& x, double c, std::string label) {
  const FrenetOptions fo;
  return CurveJet(
      [x, c, fo](double u, int order) {
        const SeriesVec3 f = x.bridge(u, std::min(order + 2, Series::kMaxOrder));
        const SeriesVec3 n = principal_normal_jet(f, u, fo);
        const SeriesVec3 y = add(f, scale(Series::constant(c, n[0].order()), n));
        return SeriesVec3{y[0].truncated(order), y[1].truncated(order), y[2].truncated(order)};
      },
      x.domain(), Provenance::Partner, std::move(label));
}

}  // namespace

CurveJet bertrand_partner(const CurveJet& x, MNum lambda) {
  return offset_curve(x, lambda.log(), "bertrand(" + x.label() + ", " + render(lambda, Style::Log) + ")");
}

MNum bertrand_natural_lambda(const CurveJet& x, const PartnerOptions& options) {
  std::vector<double> c;
  for (MNum s : log_uniform_samples(x.domain(), options.samples)) {
    const FrenetLocal f = frenet_local(x, s, options.frenet);
    c.push_back(2.0 * f.kappa / (f.kappa * f.kappa + f.tau * f.tau));
  }
  const ConstantReport r = constant_of(c);
  if (r.constancy > options.tol) {
    throw InadmissibleError("bertrand_natural_lambda: 2 kappa / (kappa^2 + tau^2) varies by " +
                                format_real(r.constancy),
                            r.constancy);
  }
  return r.value;
}

PartnerReport bertrand_verify(const CurveJet& x, const CurveJet& y, const PartnerOptions& options) {
  int skipped_x = 0;
  int skipped_y = 0;
  const std::vector<Pair> pairs = collect(x, y, options, skipped_x, skipped_y);
  const double tol = options.tol;

  PartnerReport rep;
  rep.kind = PartnerKind::Bertrand;
  rep.samples = static_cast<int>(pairs.size());
  rep.tol = tol;

  // Offset and angle first: the other identities use their constant values.
  std::vector<double> lambdas;
  std::vector<double> thetas;
  Accum a{"a_normal_collinear"};
  Accum b{"b_lambda_constant"};
  Accum c{"c_theta_constant"};
  std::vector<double> offsets;
  std::vector<int> eps(pairs.size(), 0);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const Pair& p = pairs[i];
    const Vec3 d = minus(p.y, p.fx.x);
    const double lam = dot(d, p.fx.n);
    lambdas.push_back(lam);
    offsets.push_back(norm(minus(d, scaled(lam, p.fx.n))));
    if (!p.fy) continue;
    a.add(norm(cross(p.fx.n, p.fy->n)));
    eps[i] = dot(p.fx.n, p.fy->n) >= 0.0 ? 1 : -1;
    thetas.push_back(angle(p.fx.t, p.fy->t));
  }
  rep.lambda = constant_of(lambdas);
  rep.theta = constant_of(thetas);
  const double lam = rep.lambda.value.log();
  const double th = rep.theta.value.log();
  for (std::size_t i = 0; i < lambdas.size(); ++i) b.add(std::max(offsets[i], std::abs(lambdas[i] - lam)));
  for (double t : thetas) c.add(std::abs(t - th));
  a.skipped = c.skipped = skipped_y;
  a.notice = c.notice = skipped_notice(skipped_y);

  Accum d{"d_frame_relations"};
  d.signed_theta = true;
  Accum e{"e_offset_angle"};
  e.signed_theta = true;
  Accum f{"f_curvature_relations"};
  Accum g{"g_theorem"};
  g.signed_theta = true;
  const bool degenerate = std::abs(lam) <= tol;
  if (degenerate) {
    f.may_be_indeterminate = g.may_be_indeterminate = true;
    f.notice = g.notice = "lambda = 0*: the partner coincides with the curve, identity not applicable";
  }
  int poles = 0;
  std::vector<double> mus_plus;
  std::vector<double> mus_minus;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const Pair& p = pairs[i];
    const double kap = p.fx.kappa;
    const double tau = p.fx.tau;
    // (e) does not need the partner frame.
    const auto e_res = [&](double sgn) {
      return std::max(std::abs(1.0 - lam * kap - std::cos(sgn * th)), std::abs(-lam * tau - std::sin(sgn * th)));
    };
    e.add(e_res(1.0), e_res(-1.0));
    if (!degenerate && std::abs(std::sin(th)) > tol) {
      const auto g_res = [&](double sgn) { return std::abs(lam * kap + lam * tau / std::tan(sgn * th) - 1.0); };
      g.add(g_res(1.0), g_res(-1.0));
      mus_plus.push_back(lam / std::tan(th));
      mus_minus.push_back(-lam / std::tan(th));
    } else if (!degenerate) {
      ++g.skipped;
    }
    if (!p.fy) {
      ++d.skipped;
      ++f.skipped;
      continue;
    }
    const FrenetLocal& q = *p.fy;
    const Vec3 b_or = scaled(eps[i], q.b);
    const auto d_res = [&](double sgn) {
      const double co = std::cos(sgn * th);
      const double si = std::sin(sgn * th);
      return std::max(norm(minus(q.t, combo(co, p.fx.t, -si, p.fx.b))), norm(minus(b_or, combo(si, p.fx.t, co, p.fx.b))));
    };
    d.add(d_res(1.0), d_res(-1.0));
    if (degenerate) continue;
    const double kbar = eps[i] * q.kappa;
    const double s2 = std::sin(th) * std::sin(th);
    const double pole = lam - lam * lam * kap;
    if (std::abs(pole) <= tol || std::abs(tau) <= options.frenet.kappa_floor) {
      ++poles;
      ++f.skipped;
      continue;
    }
    const double kbar_pred = (lam * kap - s2) / pole;
    const double tbar_pred = s2 / (lam * lam * tau);
    const double cos_product = std::cos(th) * std::cos(th) - (1.0 - lam * kap) * (1.0 + lam * kbar);
    f.add(std::max({std::abs(kbar - kbar_pred), std::abs(q.tau - tbar_pred), std::abs(cos_product)}));
  }
  if (poles > 0) {
    f.notice = std::to_string(poles) + " samples excluded at the pole c = c^2 log kappa or where tau = 0*";
  }
  if (skipped_y > 0 && d.notice.empty()) d.notice = skipped_notice(skipped_y);

  std::vector<IdentityResult> ids{a.finish(tol), b.finish(tol), c.finish(tol), d.finish(tol),
                                  e.finish(tol), f.finish(tol), g.finish(tol)};
  const int gsign = ids.back().theta_sign;
  rep.mu = constant_of(gsign < 0 ? mus_minus : mus_plus);
  if (skipped_x > 0) {
    for (auto& id : ids) id.skipped_samples += skipped_x;
  }
  rep.identities = std::move(ids);
  return rep;
}

MannheimLambda mannheim_lambda(const CurveJet& x, const PartnerOptions& options) {
  std::vector<double> logs;
  for (MNum s : log_uniform_samples(x.domain(), options.samples)) {
    const FrenetLocal f = frenet_local(x, s, options.frenet);
    const double den = f.kappa * f.kappa + f.tau * f.tau;
    if (den == 0.0) throw DivisionByZeroError("mannheim_lambda: (log kappa)^2 + (log tau)^2 vanishes");
    logs.push_back(f.kappa / den);
  }
  const ConstantReport c = constant_of(logs);
  MannheimLambda out;
  out.lambda = c.value;
  out.deviation = c.constancy;
  out.admissible = c.constancy <= options.tol;
  out.samples = static_cast<int>(logs.size());
  return out;
}

CurveJet mannheim_partner(const CurveJet& x, const PartnerOptions& options) {
  const MannheimLambda ml = mannheim_lambda(x, options);
  if (!ml.admissible) {
    throw InadmissibleError("curve '" + x.label() + "' is not Mannheim-admissible: lambda varies by " +
                                format_real(ml.deviation),
                            ml.deviation);
  }
  return offset_curve(x, ml.lambda.log(), "mannheim(" + x.label() + ")");
}

PartnerReport mannheim_verify(const CurveJet& x, const CurveJet& y, const PartnerOptions& options) {
  int skipped_x = 0;
  int skipped_y = 0;
  const std::vector<Pair> pairs = collect(x, y, options, skipped_x, skipped_y);
  const double tol = options.tol;

  PartnerReport rep;
  rep.kind = PartnerKind::Mannheim;
  rep.samples = static_cast<int>(pairs.size());
  rep.tol = tol;

  Accum a{"a_normal_binormal_collinear"};
  Accum bl{"b_offset_lambda"};
  Accum bm{"b_offset_mu"};
  std::vector<double> lambdas;
  std::vector<double> mus;
  std::vector<double> thetas;
  std::vector<double> offsets;
  std::vector<double> mu_offsets;
  std::vector<int> eps(pairs.size(), 0);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const Pair& p = pairs[i];
    const Vec3 d = minus(p.y, p.fx.x);
    const double lam = dot(d, p.fx.n);
    lambdas.push_back(lam);
    offsets.push_back(norm(minus(d, scaled(lam, p.fx.n))));
    if (!p.fy) continue;
    const FrenetLocal& q = *p.fy;
    a.add(norm(cross(p.fx.n, q.b)));
    eps[i] = dot(p.fx.n, q.b) >= 0.0 ? 1 : -1;
    const Vec3 back = minus(p.fx.x, p.y);
    const double mu = dot(back, q.b);
    mus.push_back(mu);
    mu_offsets.push_back(norm(minus(back, scaled(mu, q.b))));
    thetas.push_back(angle(p.fx.t, q.t));
  }
  rep.lambda = constant_of(lambdas);
  rep.mu = constant_of(mus);
  rep.theta = constant_of(thetas);
  const double lam = rep.lambda.value.log();
  const double th = rep.theta.value.log();
  for (std::size_t i = 0; i < lambdas.size(); ++i) bl.add(std::max(offsets[i], std::abs(lambdas[i] - lam)));
  for (std::size_t i = 0; i < mus.size(); ++i) {
    bm.add(std::max(mu_offsets[i], std::abs(mus[i] - rep.mu.value.log())));
  }

  Accum c{"c_theta_frame_relations"};
  c.signed_theta = true;
  Accum d{"d_curvature_relations"};
  d.signed_theta = true;
  Accum e{"e_theorem_derivative_ratio"};
  e.signed_theta = true;
  e.may_be_indeterminate = true;
  Accum f{"f_theorem_curvature"};
  int flat = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const Pair& p = pairs[i];
    const double kap = p.fx.kappa;
    const double tau = p.fx.tau;
    f.add(std::abs(kap - lam * (kap * kap + tau * tau)));
    const double dk = p.fx.kappa_series.order() >= 1 ? p.fx.kappa_series.coeff(1) : 0.0;
    const double dt = p.fx.tau_series.order() >= 1 ? p.fx.tau_series.coeff(1) : 0.0;
    if (std::abs(dk) <= tol || std::abs(dt) <= tol || std::abs(std::sin(th)) <= tol) {
      ++flat;
      ++e.skipped;
    } else {
      const auto e_res = [&](double sgn) { return std::abs(dt / dk + 1.0 / std::tan(sgn * th)); };
      e.add(e_res(1.0), e_res(-1.0));
    }
    if (!p.fy) {
      ++c.skipped;
      ++d.skipped;
      continue;
    }
    const FrenetLocal& q = *p.fy;
    const Vec3 n_or = scaled(eps[i], q.n);
    const double theta_i = angle(p.fx.t, q.t);
    const auto c_res = [&](double sgn) {
      const double co = std::cos(sgn * th);
      const double si = std::sin(sgn * th);
      return std::max({std::abs(theta_i - th), norm(minus(q.t, combo(co, p.fx.t, -si, p.fx.b))),
                       norm(minus(n_or, combo(si, p.fx.t, co, p.fx.b)))});
    };
    c.add(c_res(1.0), c_res(-1.0));
    const auto d_res = [&](double sgn) {
      const double co = std::cos(sgn * th);
      const double si = std::sin(sgn * th);
      const double kbar = std::sqrt(kap * kap * co * co + tau * tau * si * si);
      const double tbar = kap * si - tau * co;
      return std::max(std::abs(q.kappa - kbar), std::abs(q.tau - tbar));
    };
    d.add(d_res(1.0), d_res(-1.0));
  }
  if (flat > 0) {
    e.notice = std::to_string(flat) + " samples skipped where kappa* or tau* is 0* (constant curvature)";
  }
  const std::string ny = skipped_notice(skipped_y);
  for (Accum* acc : {&a, &bm, &c, &d}) {
    acc->skipped = skipped_y;
    acc->notice = ny;
  }
  std::vector<IdentityResult> ids{a.finish(tol), bl.finish(tol), bm.finish(tol), c.finish(tol),
                                  d.finish(tol), e.finish(tol), f.finish(tol)};
  if (skipped_x > 0) {
    for (auto& id : ids) id.skipped_samples += skipped_x;
  }
  rep.identities = std::move(ids);
  return rep;
}

}  // namespace mulgeo
