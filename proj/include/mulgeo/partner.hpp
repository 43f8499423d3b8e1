#pragma once

// Bertrand and Mannheim partner curves: y = x +* lambda .* n, built on the
// shared parameter, and verifiers that test the frame, offset, angle and
// curvature identities sample by sample.

#include <string>
#include <vector>

#include "json.hpp"
#include "mulgeo/frenet.hpp"

namespace mulgeo {

enum class PartnerKind { Bertrand, Mannheim };
enum class Verdict { Pass, Fail, Indeterminate };

std::string_view to_string(PartnerKind k);
std::string_view to_string(Verdict v);

struct IdentityResult {
  std::string name;
  Verdict verdict = Verdict::Indeterminate;
  double max_residual = 0.0;
  double mean_residual = 0.0;
  int samples_used = 0;
  int skipped_samples = 0;
  /// +1 or -1: the sign of theta that minimized the residuals (0 if unused).
  int theta_sign = 0;
  /// Indeterminate is acceptable for this identity (degenerate geometry).
  bool may_be_indeterminate = false;
  std::string notice;
};

struct ConstantReport {
  MNum value;
  /// Max deviation of the per-sample logs from the reported value.
  double constancy = 0.0;
};

struct PartnerReport {
  PartnerKind kind = PartnerKind::Bertrand;
  ConstantReport lambda;
  ConstantReport mu;
  ConstantReport theta;
  std::vector<IdentityResult> identities;
  int samples = 0;
  double tol = 0.0;

  const IdentityResult& identity(std::string_view name) const;
  /// No identity failed and every indeterminate one was allowed to be.
  bool passed() const;
};

nlohmann::json to_json(const PartnerReport& r);

struct PartnerOptions {
  int samples = 64;
  double tol = 1e-6;
  FrenetOptions frenet;
};

/// y = x +* lambda .* n on the domain of x.
CurveJet bertrand_partner(const CurveJet& x, MNum lambda);

/// The offset e^{2 kappa / (kappa^2 + tau^2)} (logs) for which the partner of
/// a curve with constant curvatures is traced at unit speed on the shared
/// parameter. Throws InadmissibleError when it is not constant.
MNum bertrand_natural_lambda(const CurveJet& x, const PartnerOptions& options = {});

PartnerReport bertrand_verify(const CurveJet& x, const CurveJet& y, const PartnerOptions& options = {});

struct MannheimLambda {
  MNum lambda;
  double deviation = 0.0;
  bool admissible = false;
  int samples = 0;
};

/// log lambda = log kappa / ((log kappa)^2 + (log tau)^2) per sample.
MannheimLambda mannheim_lambda(const CurveJet& x, const PartnerOptions& options = {});

/// y = x +* lambda .* n with lambda from mannheim_lambda; throws
/// InadmissibleError when lambda is not constant.
CurveJet mannheim_partner(const CurveJet& x, const PartnerOptions& options = {});

PartnerReport mannheim_verify(const CurveJet& x, const CurveJet& y, const PartnerOptions& options = {});

}  // namespace mulgeo
