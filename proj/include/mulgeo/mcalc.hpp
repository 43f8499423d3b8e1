#pragma once

// Multiplicative derivative and integral, computed in bridge coordinates.
//
// For f: R* -> R* the bridge function is F(U) = log f(e^U). The limit that
// defines f* steps h -> 0* multiplicatively, which is a classical step in U,
// so log f^{(k)*}(s) = F^{(k)}(log s) and log of the *-integral of f over
// [a, b] is the classical integral of F over [log a, log b].

#include <functional>

#include "mulgeo/mnum.hpp"
#include "mulgeo/series.hpp"

namespace mulgeo {

class CurveJet;

/// A multiplicative scalar map with optional exact bridge jets.
struct ScalarMapJet {
  /// s -> f(s).
  using Eval = std::function<MNum(MNum)>;
  /// U -> Taylor expansion of F at U to the requested order.
  using Bridge = std::function<Series(double u, int order)>;

  Eval eval;
  Bridge bridge;

  bool has_jets() const noexcept { return static_cast<bool>(bridge); }

  /// F(U) = log f(e^U).
  double bridge_value(double u) const;
  /// Expansion of F at U. Without jets this falls back to finite differences
  /// and carries at most three orders.
  Series bridge_derivs(double u, int order = 3) const;

  static ScalarMapJet from_eval(Eval eval);
  static ScalarMapJet from_bridge(Bridge bridge);

  /// Wraps a callable usable both on double and on Series, interpreted as
  /// the bridge function U -> F(U).
  template <class F>
  static ScalarMapJet from_generic_bridge(F f) {
    return from_bridge([f](double u, int order) { return Series(f(Series::variable(u, order))); });
  }
};

/// Classical central differences of g at x with one Richardson level.
/// Steps: h = eps^{1/3} (order 1), eps^{1/5} (order 2), eps^{1/6} (order 3),
/// each scaled by max(1, |x|). Orders 2 and 3 trade truncation for roundoff.
double central_difference(const std::function<double(double)>& g, double x, int order);

/// f^{(order)*}(s) for order in {1, 2, 3}.
MNum star_derivative(const ScalarMapJet& f, MNum s, int order = 1);

struct QuadratureOptions {
  double tolerance = 1e-10;
  int max_depth = 48;
};

/// Adaptive Simpson with Richardson correction; throws AccuracyError.
double adaptive_simpson(const std::function<double(double)>& g, double lo, double hi,
                        QuadratureOptions options = {});

/// *-integral of f over the multiplicative interval [a, b].
MNum star_integral_definite(const ScalarMapJet& f, MNum a, MNum b, QuadratureOptions options = {});

/// s -> *-integral of f over [base, s], without jets.
ScalarMapJet star_antiderivative(ScalarMapJet f, MNum base, QuadratureOptions options = {});

/// Multiplicative arc length e^{L}, L the classical length of the bridge
/// curve over [log a, log b].
MNum star_arclength(const CurveJet& curve, MNum a, MNum b, QuadratureOptions options = {});

}  // namespace mulgeo
