#pragma once

// Characterizations of helices, slant helices, spherical and rectifying
// curves, evaluated on log-uniform samples of the curve's domain.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mulgeo/frenet.hpp"

namespace mulgeo {

enum class CurveKind { Helix, SlantHelix, Spherical, Rectifying, None };

std::string_view to_string(CurveKind k);

struct ClassificationReport {
  /// Which characterization was tested.
  std::string test;
  CurveKind kind = CurveKind::None;
  std::map<std::string, MNum> constants;
  /// Max deviation in log space over the samples used.
  double residual = 0.0;
  int samples = 0;
  int excluded = 0;
  std::vector<std::string> notices;
};

nlohmann::json to_json(const ClassificationReport& r);

struct ClassifyOptions {
  int samples = 64;
  double tol = 1e-6;
  FrenetOptions frenet;
};

/// tau /* kappa constant; constant "c".
ClassificationReport classify_helix(const CurveJet& curve, const ClassifyOptions& options = {});

/// sigma = (kappa^{2*} /* (kappa^{2*} +* tau^{2*})^{3/2*}) .* (tau /* kappa)*.
/// Throws DivisionByZeroError when log kappa = log tau = 0.
MNum slant_helix_sigma(const CurveJet& curve, MNum s, const FrenetOptions& options = {});
/// sigma constant; constant "sigma". A curve with sigma = 0* throughout is a
/// general helix and is reported as such.
ClassificationReport classify_slant_helix(const CurveJet& curve, const ClassifyOptions& options = {});

struct SphereCandidate {
  MVec3 center;
  MNum radius;
};

/// p = e /* kappa, q = e /* tau; residual of (p* .* q)* +* p /* q = 0*, and
/// with a candidate sphere also of r^{2*} = p^{2*} +* (p* .* q)^{2*} and of
/// the distance to the center. Samples with tau = 0* are excluded.
ClassificationReport spherical_check(const CurveJet& curve, std::optional<SphereCandidate> sphere = std::nullopt,
                                     const ClassifyOptions& options = {});

/// Least-squares fit log(tau /* kappa) = slope * log s + intercept;
/// constants "a" = e^slope and "b" = e^intercept.
ClassificationReport rectifying_fit(const CurveJet& curve, const ClassifyOptions& options = {});

/// All four tests.
std::vector<ClassificationReport> classify_all(const CurveJet& curve, const ClassifyOptions& options = {});

}  // namespace mulgeo
