#pragma once

// Multiplicative Frenet apparatus. Everything is computed on the bridge
// curve F(U) = log x(e^U), whose classical frame, curvature and torsion are
// the logs of the multiplicative ones.

#include <array>

#include "mulgeo/curve.hpp"

namespace mulgeo {

/// {t, n, b, kappa, tau} at one parameter value.
struct FrenetApparatus {
  MVec3 t;
  MVec3 n;
  MVec3 b;
  MNum kappa;
  MNum tau;
  MNum at_s;
};

using Vec3 = std::array<double, 3>;

/// Classical frame of the bridge curve at U, together with the expansions of
/// kappa and tau in the arc length measured from U.
struct FrenetLocal {
  double u = 0.0;
  /// |F'(U)|, the log of the multiplicative speed.
  double speed = 0.0;
  Vec3 x{};
  Vec3 t{};
  Vec3 n{};
  Vec3 b{};
  double kappa = 0.0;
  double tau = 0.0;
  Series kappa_series;
  Series tau_series;
  /// |t' - kappa n|, |n' + kappa t - tau b|, |b' + tau n|.
  std::array<double, 3> residuals{};

  FrenetApparatus apparatus() const;
};

struct FrenetOptions {
  /// Largest |log speed - 1| accepted as natural.
  double natural_tol = 1e-6;
  /// Curvatures below this are treated as zero.
  double kappa_floor = 1e-9;
  /// Log-speeds below this are treated as singular.
  double speed_floor = 1e-12;
};

/// ||x*(s)||*.
MNum speed_star(const CurveJet& curve, MNum s, const FrenetOptions& options = {});

struct NaturalReport {
  /// Unit multiplicative speed ||x*|| = 1* = e, i.e. log-speed 1.
  bool natural = false;
  double deviation = 0.0;
  /// The literal reading ||x*|| = 1 = 0*, i.e. log-speed 0.
  bool literal_reading = false;
  double literal_deviation = 0.0;
  int samples = 0;
};

NaturalReport is_natural(const CurveJet& curve, int samples = 64, double tol = 1e-6);

/// Frame of a naturally parametrized curve straight from the definitions
/// t = x*, n = x** /* ||x**||*, b = t x* n, tau = <n*, b>*.
/// Throws NotNaturalError, SingularCurveError or FrameUndefinedError.
FrenetApparatus frenet(const CurveJet& curve, MNum s, const FrenetOptions& options = {});

/// Frame of any regular curve: the bridge jet is re-expanded in local arc
/// length before the definitions are applied. Same error contract as frenet
/// apart from NotNaturalError.
FrenetLocal frenet_local(const CurveJet& curve, MNum s, const FrenetOptions& options = {});

/// Frame of the bridge jet f taken as already unit speed.
FrenetLocal frenet_from_natural_jet(const SeriesVec3& f, double u, const FrenetOptions& options = {});

/// Expansion of the jet f in the arc length measured from its base point.
SeriesVec3 to_arclength(const SeriesVec3& f, double u, const FrenetOptions& options = {});

/// Unit principal normal of the bridge jet in its own parameter:
/// (F'' - (F''.T)T) / |F'' - (F''.T)T| with T = F'/|F'|. Two orders are lost.
SeriesVec3 principal_normal_jet(const SeriesVec3& f, double u, const FrenetOptions& options = {});

struct ReparamOptions {
  int panels = 512;
  double tol = 1e-6;
};

/// The same image traced at unit multiplicative speed. The new parameter
/// starts at the old s_min: log s_new = log s_min + (bridge arc length).
CurveJet reparametrize_natural(const CurveJet& curve, const ReparamOptions& options = {});

}  // namespace mulgeo
