#pragma once

// Multiplicative curves in E*^3 and the built-in curve catalog.

#include <array>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "mulgeo/mcalc.hpp"
#include "mulgeo/mvec.hpp"
#include "mulgeo/series.hpp"

namespace mulgeo {

/// Positive parameter interval [lo, hi] with lo < hi.
struct ParamRange {
  MNum lo;
  MNum hi;
};

ParamRange make_range(MNum lo, MNum hi);

/// n parameter values with uniformly spaced logs, endpoints included.
std::vector<MNum> log_uniform_samples(const ParamRange& range, int n);

enum class Provenance { Catalog, Dsl, Synthesized, Partner, Reparametrized };

std::string_view to_string(Provenance p);

/// A curve x(s) together with access to its bridge curve F(U) = log x(e^U)
/// and the derivatives of F.
class CurveJet {
 public:
  /// U -> Taylor expansion of the bridge curve at U.
  using Bridge = std::function<SeriesVec3(double u, int order)>;

  CurveJet(Bridge bridge, ParamRange domain, Provenance provenance, std::string label);
  /// Component-wise construction; components without jets fall back to
  /// finite differences (three orders at most).
  CurveJet(std::array<ScalarMapJet, 3> components, ParamRange domain, Provenance provenance,
           std::string label);

  const ParamRange& domain() const noexcept { return domain_; }
  Provenance provenance() const noexcept { return provenance_; }
  const std::string& label() const noexcept { return label_; }
  bool has_jets() const noexcept { return has_jets_; }

  SeriesVec3 bridge(double u, int order = Series::kMaxOrder) const;
  MVec3 at(MNum s) const;
  ScalarMapJet component(std::size_t i) const;

  CurveJet with_domain(ParamRange domain) const;
  CurveJet with_label(std::string label) const;

 private:
  Bridge bridge_;
  ParamRange domain_;
  Provenance provenance_;
  std::string label_;
  bool has_jets_ = true;
};

/// Builds a curve from a callable that maps U (double or Series) to the three
/// bridge components.
template <class F>
CurveJet make_bridge_curve(F f, ParamRange domain, Provenance provenance, std::string label) {
  return CurveJet(
      [f](double u, int order) {
        const auto v = f(Series::variable(u, order));
        return SeriesVec3{Series(v[0]), Series(v[1]), Series(v[2])};
      },
      domain, provenance, std::move(label));
}

/// [e^{-pi}, e^{pi}].
ParamRange default_range();

/// Circular helix of radius a and pitch b in bridge space, parametrized by
/// multiplicative arc length: log-components
/// (-a sin(U/c), a cos(U/c), b U/c), c = sqrt(a^2 + b^2).
CurveJet helix(double a, double b, ParamRange domain = default_range());
/// The same helix traversed at bridge rate w: (-a sin(wU), a cos(wU), b w U).
CurveJet helix_raw(double a, double b, double rate, ParamRange domain = default_range());
/// The set C = {(log x)^2 + (log y)^2 = 1} parametrized by t -> (e^{cos log t},
/// e^{sin log t}), extended to E*^3 by the constant third component 0*.
CurveJet mcircle(ParamRange domain = default_range());
MVec2 mcircle_point(MNum t);
/// Curve on the multiplicative unit sphere: latitude amp * sin(freq * U),
/// longitude U.
CurveJet sphere_curve(double amp, double freq, ParamRange domain = default_range());
/// x(s) = (s^slope, 1, 1), a multiplicative straight line of log-speed |slope|.
CurveJet power_line(double slope, ParamRange domain = default_range());

/// Catalog lookup: `helix:a=0.7071,b=0.7071`, `helix:a=1.6,b=0.8,rate=1`,
/// `circle`, `sphcurve:amp=0.5,freq=1`, `line:slope=2`.
CurveJet catalog_curve(std::string_view id);

}  // namespace mulgeo
