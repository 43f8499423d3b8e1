#include "mulgeo/classify.hpp"

#include <algorithm>
#include <cmath>

namespace mulgeo {

std::string_view to_string(CurveKind k) {
  switch (k) {
    case CurveKind::Helix: return "helix";
    case CurveKind::SlantHelix: return "slant_helix";
    case CurveKind::Spherical: return "spherical";
    case CurveKind::Rectifying: return "rectifying";
    case CurveKind::None: return "none";
  }
  return "none";
}

nlohmann::json to_json(const ClassificationReport& r) {
  nlohmann::json j;
  j["test"] = r.test;
  j["kind"] = std::string(to_string(r.kind));
  j["constants"] = nlohmann::json::object();
  for (const auto& [name, value] : r.constants) j["constants"][name] = render(value, Style::Log);
  j["residual"] = r.residual;
  j["samples"] = r.samples;
  j["excluded"] = r.excluded;
  j["notices"] = r.notices;
  return j;
}

namespace {

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

double max_deviation(const std::vector<double>& v, double centre) {
  double d = 0.0;
  for (double x : v) d = std::max(d, std::abs(x - centre));
  return d;
}

struct Sample {
  double u;
  FrenetLocal frame;
};

// Frames at the sample points; zero-curvature samples are excluded.
std::vector<Sample> frames(const CurveJet& curve, const ClassifyOptions& options, ClassificationReport& report) {
  std::vector<Sample> out;
  for (MNum s : log_uniform_samples(curve.domain(), options.samples)) {
    try {
      out.push_back({s.log(), frenet_local(curve, s, options.frenet)});
    } catch (const FrameUndefinedError&) {
      ++report.excluded;
    }
  }
  if (report.excluded > 0) {
    report.notices.push_back(std::to_string(report.excluded) + " samples with kappa = 0* excluded");
  }
  report.samples = static_cast<int>(out.size());
  return out;
}

double sigma_of(const FrenetLocal& f) {
  const double k2 = f.kappa * f.kappa;
  const double sum = k2 + f.tau * f.tau;
  if (sum == 0.0) throw DivisionByZeroError("slant helix sigma: kappa^2* +* tau^2* is 0*");
  if (f.tau_series.order() < 1) {
    throw DomainError("slant helix sigma needs the derivative of tau; the curve provides too few orders");
  }
  const Series ratio = f.tau_series / f.kappa_series.truncated(f.tau_series.order());
  return k2 / std::pow(sum, 1.5) * ratio.coeff(1);
}

}  // namespace

ClassificationReport classify_helix(const CurveJet& curve, const ClassifyOptions& options) {
  ClassificationReport r;
  r.test = "helix";
  std::vector<double> ratios;
  for (const Sample& s : frames(curve, options, r)) ratios.push_back(s.frame.tau / s.frame.kappa);
  if (ratios.empty()) {
    r.notices.push_back("no usable samples");
    return r;
  }
  const double c = median(ratios);
  r.residual = max_deviation(ratios, c);
  r.constants["c"] = MNum::from_log(c);
  if (r.residual <= options.tol) r.kind = CurveKind::Helix;
  return r;
}

MNum slant_helix_sigma(const CurveJet& curve, MNum s, const FrenetOptions& options) {
  return MNum::from_log(sigma_of(frenet_local(curve, s, options)));
}

ClassificationReport classify_slant_helix(const CurveJet& curve, const ClassifyOptions& options) {
  ClassificationReport r;
  r.test = "slant_helix";
  std::vector<double> sigmas;
  for (const Sample& s : frames(curve, options, r)) sigmas.push_back(sigma_of(s.frame));
  if (sigmas.empty()) {
    r.notices.push_back("no usable samples");
    return r;
  }
  const double sigma = median(sigmas);
  r.residual = max_deviation(sigmas, sigma);
  r.constants["sigma"] = MNum::from_log(sigma);
  if (r.residual <= options.tol) {
    if (std::abs(sigma) <= options.tol) {
      r.kind = CurveKind::Helix;
      r.notices.push_back("sigma = 0* throughout: a general helix, the degenerate slant helix");
    } else {
      r.kind = CurveKind::SlantHelix;
    }
  }
  return r;
}

ClassificationReport spherical_check(const CurveJet& curve, std::optional<SphereCandidate> sphere,
                                     const ClassifyOptions& options) {
  ClassificationReport r;
  r.test = "spherical";
  int flat = 0;
  double sphere_res = 0.0;
  double radius_res = 0.0;
  double dist = 0.0;
  for (const Sample& s : frames(curve, options, r)) {
    const FrenetLocal& f = s.frame;
    if (std::abs(f.tau) <= options.frenet.kappa_floor) {
      ++flat;
      continue;
    }
    if (f.tau_series.order() < 1) {
      throw DomainError("spherical check needs the derivative of tau; the curve provides too few orders");
    }
    const int n = f.tau_series.order();
    const Series p = Series::constant(1.0, n + 1) / f.kappa_series.truncated(n + 1);
    const Series q = Series::constant(1.0, n) / f.tau_series;
    const Series pq = p.derivative() * q;
    const double lhs = pq.coeff(1) + p.value() / q.value();
    sphere_res = std::max(sphere_res, std::abs(lhs));
    if (sphere) {
      const double r2 = sphere->radius.log() * sphere->radius.log();
      radius_res = std::max(radius_res, std::abs(r2 - (p.value() * p.value() + pq.value() * pq.value())));
      MVec3 x = MVec3::from_logs(f.x);
      dist = std::max(dist, log_distance(mdistance(x, sphere->center), sphere->radius));
    }
  }
  if (flat > 0) {
    r.excluded += flat;
    r.samples -= flat;
    r.notices.push_back(std::to_string(flat) + " samples with tau = 0* excluded");
  }
  if (r.samples <= 0) {
    r.samples = 0;
    r.notices.push_back("no usable samples");
    return r;
  }
  r.residual = std::max({sphere_res, radius_res, dist});
  r.constants["sphere_residual"] = MNum::from_log(sphere_res);
  if (sphere) {
    r.constants["radius_residual"] = MNum::from_log(radius_res);
    r.constants["center_distance_residual"] = MNum::from_log(dist);
    r.constants["r"] = sphere->radius;
  }
  if (r.residual <= options.tol) r.kind = CurveKind::Spherical;
  return r;
}

ClassificationReport rectifying_fit(const CurveJet& curve, const ClassifyOptions& options) {
  ClassificationReport r;
  r.test = "rectifying";
  std::vector<double> us;
  std::vector<double> ratios;
  for (const Sample& s : frames(curve, options, r)) {
    us.push_back(s.u);
    ratios.push_back(s.frame.tau / s.frame.kappa);
  }
  if (us.size() < 2) {
    r.notices.push_back("too few usable samples for a fit");
    return r;
  }
  const double n = static_cast<double>(us.size());
  double mu = 0.0;
  double mr = 0.0;
  for (std::size_t i = 0; i < us.size(); ++i) {
    mu += us[i] / n;
    mr += ratios[i] / n;
  }
  double suu = 0.0;
  double sur = 0.0;
  for (std::size_t i = 0; i < us.size(); ++i) {
    suu += (us[i] - mu) * (us[i] - mu);
    sur += (us[i] - mu) * (ratios[i] - mr);
  }
  const double slope = sur / suu;
  const double intercept = mr - slope * mu;
  for (std::size_t i = 0; i < us.size(); ++i) {
    r.residual = std::max(r.residual, std::abs(ratios[i] - (slope * us[i] + intercept)));
  }
  r.constants["a"] = MNum::from_log(slope);
  r.constants["b"] = MNum::from_log(intercept);
  const NaturalReport nat = is_natural(curve, options.samples, options.tol);
  if (!nat.natural) r.notices.push_back("curve is not naturally parametrized; the fit uses its own parameter");
  if (r.residual <= options.tol) {
    if (std::abs(slope) <= options.tol) {
      r.notices.push_back("slope 0: constant ratio, a helix rather than a rectifying curve");
    } else {
      r.kind = CurveKind::Rectifying;
    }
  }
  return r;
}

std::vector<ClassificationReport> classify_all(const CurveJet& curve, const ClassifyOptions& options) {
  return {classify_helix(curve, options), classify_slant_helix(curve, options), spherical_check(curve, std::nullopt, options),
          rectifying_fit(curve, options)};
}

}  // namespace mulgeo
