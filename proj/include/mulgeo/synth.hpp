#pragma once

// Curves with prescribed curvature and torsion (fundamental theorem in the
// bridge): the classical Frenet system is integrated in U = log s.

#include <functional>

#include "mulgeo/curve.hpp"

namespace mulgeo {

/// U -> Taylor expansion of log kappa (or log tau) at U.
using CurvatureProfile = std::function<Series(double u, int order)>;

template <class F>
CurvatureProfile make_profile(F f) {
  return [f](double u, int order) { return Series(f(Series::variable(u, order))); };
}

struct SynthOptions {
  double step = 1e-3;
  /// Largest departure from orthonormality tolerated within one step.
  double drift_tol = 1e-6;
};

/// Natural curve with log kappa = kappa_log(U), log tau = tau_log(U) on the
/// range, starting at the bridge origin with frame (e1, e2, e3) at s_min.
/// Throws DomainError for kappa_log <= 0 and AccuracyError when the step is
/// too coarse to keep the frame orthonormal.
CurveJet curve_from_curvatures(CurvatureProfile kappa_log, CurvatureProfile tau_log, ParamRange range,
                               const SynthOptions& options = {});

}  // namespace mulgeo
