#include "mulgeo/curve.hpp"

#include <cmath>
#include <map>
#include <numbers>

namespace mulgeo {

ParamRange make_range(MNum lo, MNum hi) {
  if (!(lo < hi)) throw DomainError("parameter range needs s_min < s_max");
  return ParamRange{lo, hi};
}

std::vector<MNum> log_uniform_samples(const ParamRange& range, int n) {
  if (n < 2) throw DomainError("sampling needs at least two parameter values");
  std::vector<MNum> out;
  out.reserve(static_cast<std::size_t>(n));
  const double lo = range.lo.log();
  const double hi = range.hi.log();
  for (int i = 0; i < n; ++i) {
    const double u = (i + 1 == n) ? hi : lo + (hi - lo) * i / (n - 1);
    out.push_back(MNum::from_log(u));
  }
  return out;
}

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::Catalog: return "catalog";
    case Provenance::Dsl: return "dsl";
    case Provenance::Synthesized: return "synthesized";
    case Provenance::Partner: return "partner";
    case Provenance::Reparametrized: return "reparametrized";
  }
  return "unknown";
}

CurveJet::CurveJet(Bridge bridge, ParamRange domain, Provenance provenance, std::string label)
    : bridge_(std::move(bridge)),
      domain_(make_range(domain.lo, domain.hi)),
      provenance_(provenance),
      label_(std::move(label)) {}

CurveJet::CurveJet(std::array<ScalarMapJet, 3> components, ParamRange domain,
                   Provenance provenance, std::string label)
    : domain_(make_range(domain.lo, domain.hi)), provenance_(provenance), label_(std::move(label)) {
  has_jets_ = components[0].has_jets() && components[1].has_jets() && components[2].has_jets();
  bridge_ = [c = std::move(components)](double u, int order) {
    return SeriesVec3{c[0].bridge_derivs(u, order), c[1].bridge_derivs(u, order),
                      c[2].bridge_derivs(u, order)};
  };
}

SeriesVec3 CurveJet::bridge(double u, int order) const {
  SeriesVec3 v = bridge_(u, order);
  for (const Series& c : v) {
    if (!std::isfinite(c.value())) {
      throw DomainError("curve '" + label_ + "' is not finite at log s = " + format_real(u));
    }
  }
  return v;
}

MVec3 CurveJet::at(MNum s) const { return MVec3::from_logs(values(bridge(s.log(), 0))); }

ScalarMapJet CurveJet::component(std::size_t i) const {
  if (i >= 3) throw DimensionError("curve component index out of range");
  auto bridge = bridge_;
  if (has_jets_) {
    return ScalarMapJet::from_bridge([bridge, i](double u, int order) { return bridge(u, order)[i]; });
  }
  return ScalarMapJet::from_eval(
      [bridge, i](MNum s) { return MNum::from_log(bridge(s.log(), 0)[i].value()); });
}

CurveJet CurveJet::with_domain(ParamRange domain) const {
  CurveJet c = *this;
  c.domain_ = make_range(domain.lo, domain.hi);
  return c;
}

CurveJet CurveJet::with_label(std::string label) const {
  CurveJet c = *this;
  c.label_ = std::move(label);
  return c;
}

ParamRange default_range() {
  return ParamRange{MNum::from_log(-std::numbers::pi), MNum::from_log(std::numbers::pi)};
}

CurveJet helix(double a, double b, ParamRange domain) {
  const double c = std::hypot(a, b);
  if (c == 0.0) throw DomainError("helix: a and b cannot both vanish");
  auto curve = helix_raw(a, b, 1.0 / c, domain);
  return curve.with_label("helix:a=" + format_real(a) + ",b=" + format_real(b));
}

CurveJet helix_raw(double a, double b, double rate, ParamRange domain) {
  return make_bridge_curve(
      [a, b, rate](const auto& u) {
        using std::cos;
        using std::sin;
        const auto w = u * rate;
        return std::array{-a * sin(w), a * cos(w), b * w};
      },
      domain, Provenance::Catalog,
      "helix:a=" + format_real(a) + ",b=" + format_real(b) + ",rate=" + format_real(rate));
}

CurveJet mcircle(ParamRange domain) {
  return make_bridge_curve(
      [](const auto& u) {
        using std::cos;
        using std::sin;
        return std::array{cos(u), sin(u), 0.0 * u};
      },
      domain, Provenance::Catalog, "circle");
}

MVec2 mcircle_point(MNum t) {
  return MVec2::from_logs({std::cos(t.log()), std::sin(t.log())});
}

CurveJet sphere_curve(double amp, double freq, ParamRange domain) {
  return make_bridge_curve(
      [amp, freq](const auto& u) {
        using std::cos;
        using std::sin;
        const auto lat = amp * sin(freq * u);
        return std::array{cos(lat) * cos(u), cos(lat) * sin(u), sin(lat)};
      },
      domain, Provenance::Catalog,
      "sphcurve:amp=" + format_real(amp) + ",freq=" + format_real(freq));
}

CurveJet power_line(double slope, ParamRange domain) {
  return make_bridge_curve(
      [slope](const auto& u) { return std::array{slope * u, 0.0 * u, 0.0 * u}; }, domain,
      Provenance::Catalog, "line:slope=" + format_real(slope));
}

namespace {

std::map<std::string, double> parse_params(std::string_view text, std::string_view id) {
  std::map<std::string, double> out;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view item = text.substr(start, end - start);
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw ParseError("catalog parameter must be name=value in '" + std::string(id) + "'", start,
                       {"name=value"});
    }
    out[std::string(item.substr(0, eq))] = parse_real(item.substr(eq + 1));
    start = end + 1;
  }
  return out;
}

double take(std::map<std::string, double>& params, const std::string& key, double fallback,
            bool required, std::string_view id) {
  auto it = params.find(key);
  if (it == params.end()) {
    if (required) throw ParseError("catalog curve '" + std::string(id) + "' needs " + key, 0, {key});
    return fallback;
  }
  const double v = it->second;
  params.erase(it);
  return v;
}

}  // namespace

CurveJet catalog_curve(std::string_view id) {
  const std::size_t colon = id.find(':');
  const std::string name(id.substr(0, colon));
  auto params = parse_params(colon == std::string_view::npos ? std::string_view{} : id.substr(colon + 1), id);
  CurveJet curve = [&]() {
    if (name == "helix") {
      const double a = take(params, "a", 0, true, id);
      const double b = take(params, "b", 0, true, id);
      if (params.count("rate")) {
        const double rate = take(params, "rate", 1, false, id);
        return helix_raw(a, b, rate);
      }
      return helix(a, b);
    }
    if (name == "circle") return mcircle();
    if (name == "sphcurve") {
      const double amp = take(params, "amp", 0.5, false, id);
      const double freq = take(params, "freq", 1.0, false, id);
      return sphere_curve(amp, freq);
    }
    if (name == "line") return power_line(take(params, "slope", 1.0, false, id));
    throw UnknownIdentifierError("unknown catalog curve '" + name + "'", 0,
                                 {"helix", "circle", "sphcurve", "line"});
  }();
  if (!params.empty()) {
    throw ParseError("unknown parameter '" + params.begin()->first + "' for catalog curve '" + name + "'",
                     0);
  }
  return curve;
}

}  // namespace mulgeo
