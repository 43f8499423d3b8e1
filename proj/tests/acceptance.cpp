// One line per acceptance criterion; exit status 1 if any criterion fails.

#include <algorithm>
#include <cmath>
#include <functional>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cli/cli.hpp"
#include "expr_gen.hpp"
#include "families.hpp"
#include "gen.hpp"
#include "mulgeo/classify.hpp"
#include "mulgeo/mexpr.hpp"
#include "mulgeo/partner.hpp"
#include "mulgeo/synth.hpp"
#include "xml_check.hpp"

using namespace mulgeo;
using testgen::Gen;
using testgen::rel_err;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects sub-checks; the criterion passes when all of them do.
class Checks {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  void bound(const std::string& what, double measured, double limit) {
    std::ostringstream s;
    s << what << " " << measured << " > " << limit;
    require(measured <= limit, s.str());
  }
  void note(const std::string& text) { notes_.push_back(text); }

  Outcome outcome() const {
    Outcome o;
    o.pass = failures_.empty();
    const auto& items = o.pass ? notes_ : failures_;
    for (std::size_t i = 0; i < items.size(); ++i) o.detail += (i ? "; " : "") + items[i];
    return o;
  }

 private:
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

std::string sci(double v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

using Vec = std::array<double, 3>;
double dot(const Vec& a, const Vec& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
Vec cross(const Vec& a, const Vec& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double gap(const Vec& a, const Vec& b) {
  return std::max({std::abs(a[0] - b[0]), std::abs(a[1] - b[1]), std::abs(a[2] - b[2])});
}

Outcome arithmetic() {
  Checks c;
  Gen g(101);
  bool exact = true;
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const MNum a = g.mnum(-20, 20);
    const MNum b = g.mnum(-20, 20);
    const double x = a.log();
    const double y = b.log();
    exact = exact && madd(a, b).log() == x + y && msub(a, b).log() == x - y;
    worst = std::max({worst, rel_err(mmul(a, b).log(), x * y), rel_err(mdiv(a, b).log(), x / y),
                      rel_err(mneg(a).log(), -x), rel_err(minv(a).log(), 1.0 / x), rel_err(mpow(a, 3).log(), x * x * x),
                      rel_err(msqrt(mabs(a)).log(), std::sqrt(std::abs(x))),
                      rel_err(mabs(a).log(), x >= 0 ? x : -x),
                      rel_err(square_of_sum(a, b).log(), mpow(madd(a, b), 2).log()),
                      rel_err(diff_of_squares(a, b).log(), mmul(madd(a, b), msub(a, b)).log())});
  }
  c.require(exact, "madd/msub not bit-exact log addition");
  c.bound("max relative log error", worst, 1e-12);
  c.require(MNum::zero().value() == 1.0 && MNum::one().value() == std::numbers::e, "units 0* = 1, 1* = e");
  c.require(mabs(MNum::from_value(0.5)).value() == 2.0 && mabs(MNum::from_value(3.0)).log() == std::log(3.0),
            "mabs branches");
  c.note("1000 cases, madd/msub bit-exact, max relative log error " + sci(worst));
  return c.outcome();
}

Outcome trigonometry() {
  Checks c;
  Gen g(102);
  double worst = 0.0;
  double inverse = 0.0;
  double excess = -1.0;
  for (int i = 0; i < 1000; ++i) {
    const MNum t = g.mnum(-10, 10);
    worst = std::max(worst, std::abs(madd(mpow(msin(t), 2), mpow(mcos(t), 2)).log() - 1.0));
    worst = std::max(worst, std::abs(mcos(mneg(t)).log() - mcos(t).log()));
    worst = std::max(worst, std::abs(msin(mneg(t)).log() - mneg(msin(t)).log()));
    // cos rounds to within eps, so no arccos can beat eps / sin a.
    const MNum a = g.mnum(0, std::numbers::pi);
    const double err = std::abs(marccos(mcos(a)).log() - a.log());
    const double floor = 4 * std::numeric_limits<double>::epsilon() / std::sin(a.log());
    inverse = std::max(inverse, err);
    excess = std::max(excess, err - std::max(1e-12, floor));
  }
  c.bound("max log error", worst, 1e-12);
  c.require(excess <= 0, "arccos error above conditioning bound by " + sci(excess));
  c.note("1000 cases, max log error " + sci(worst) + ", arccos(cos) max " + sci(inverse) +
         " within max(1e-12, 4 eps / sin a)");
  return c.outcome();
}

Outcome vectors() {
  Checks c;
  Gen g(103);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const MVec3 u = g.mvec();
    const MVec3 v = g.mvec();
    const Vec a = u.logs();
    const Vec b = v.logs();
    const double na = std::sqrt(dot(a, a));
    const double nb = std::sqrt(dot(b, b));
    const Vec w = mcross(u, v).logs();
    worst = std::max({worst, std::abs(dot(w, a)) / (na * na * nb), std::abs(dot(w, b)) / (na * nb * nb)});
    const Vec par = mcross(u, smul(MNum::from_log(g.real(-3, 3)), u)).logs();
    worst = std::max(worst, std::sqrt(dot(par, par)) / (3 * na * na));
    worst = std::max(worst, rel_err(mnorm(u).log(), na));
    const double angle = std::atan2(std::sqrt(dot(cross(a, b), cross(a, b))), dot(a, b));
    worst = std::max(worst, std::abs(mangle(u, v).log() - angle));
  }
  const Vec fig = mcross(MVec3::from_logs({5, 3, -2}), MVec3::from_logs({4, 2, 13})).logs();
  c.require(fig == Vec{43, -73, -2}, "cross product example");
  c.bound("max error", worst, 1e-12);
  c.note("1000 cases, example (e^43, e^-73, e^-2) exact, max error " + sci(worst));
  return c.outcome();
}

Outcome calculus() {
  Checks c;
  Gen g(104);
  double closed = 0.0;
  double ftc = 0.0;
  double fd = 0.0;
  for (const auto& fam : testgen::families()) {
    const ScalarMapJet jet = testgen::with_jets(fam);
    auto value = fam.value;
    const ScalarMapJet plain =
        ScalarMapJet::from_eval([value](MNum s) { return MNum::from_value(value(s.value())); });
    for (int i = 0; i < 10; ++i) {
      const double s = g.real(0.5, 3.0);
      const MNum m = MNum::from_value(s);
      closed = std::max(closed, std::abs(star_derivative(jet, m).log() - s * fam.slope(s) / fam.value(s)));
      for (int order = 1; order <= 2; ++order) {
        fd = std::max(fd, std::abs(star_derivative(jet, m, order).log() - star_derivative(plain, m, order).log()));
      }
    }
    auto f = fam.f;
    const auto deriv = ScalarMapJet::from_bridge([f](double u, int order) {
      const int k = std::min(order + 1, Series::kMaxOrder);
      return log(f(exp(Series::variable(u, k)))).derivative().truncated(std::min(order, k - 1));
    });
    const MNum a = MNum::from_value(g.real(0.5, 1.5));
    const MNum b = MNum::from_value(g.real(1.6, 3.0));
    const MNum want = msub(MNum::from_value(fam.value(b.value())), MNum::from_value(fam.value(a.value())));
    ftc = std::max(ftc, std::abs(star_integral_definite(deriv, a, b).log() - want.log()));
  }
  c.bound("closed form", closed, 1e-8);
  c.bound("fundamental theorem", ftc, 1e-8);
  c.bound("jets vs finite differences", fd, 1e-5);
  c.note("20 functions: closed form " + sci(closed) + ", fundamental theorem " + sci(ftc) +
         ", jets vs finite differences " + sci(fd));
  return c.outcome();
}

Outcome circle() {
  Checks c;
  const NaturalReport nat = is_natural(mcircle(), 256);
  c.bound("speed deviation", nat.deviation, 1e-9);
  Gen g(105);
  double dist = 0.0;
  for (int i = 0; i < 1000; ++i) {
    dist = std::max(dist, std::abs(mdistance(mcircle_point(g.mnum(-10, 10)), MVec2{}).log() - 1.0));
  }
  c.bound("distance from (1, 1)", dist, 1e-12);
  c.note("speed deviation " + sci(nat.deviation) + ", distance from (1, 1) off e by " + sci(dist));
  return c.outcome();
}

Outcome frenet_suite() {
  Checks c;
  double frame = 0.0;
  double residual = 0.0;
  double curv = 0.0;
  const double r = 1.0 / std::sqrt(2.0);
  for (auto [a, b] : {std::pair{r, r}, std::pair{1.6, 0.8}}) {
    const CurveJet h = helix(a, b);
    for (MNum s : log_uniform_samples(h.domain(), 64)) {
      const FrenetLocal f = frenet_local(h, s);
      frame = std::max({frame, std::abs(dot(f.t, f.t) - 1), std::abs(dot(f.n, f.n) - 1), std::abs(dot(f.b, f.b) - 1),
                        std::abs(dot(f.t, f.n)), std::abs(dot(f.t, f.b)), std::abs(dot(f.n, f.b)),
                        gap(cross(f.t, f.n), f.b), gap(cross(f.n, f.b), f.t), gap(cross(f.b, f.t), f.n)});
      for (double x : f.residuals) residual = std::max(residual, x);
      const FrenetApparatus strict = frenet(h, s);
      curv = std::max({curv, std::abs(strict.kappa.log() - a / (a * a + b * b)),
                       std::abs(strict.tau.log() - b / (a * a + b * b))});
    }
  }
  c.bound("frame", frame, 1e-8);
  c.bound("Frenet formulae residual", residual, 1e-8);
  c.bound("curvature and torsion", curv, 1e-9);
  c.note("frame " + sci(frame) + ", formulae residual " + sci(residual) + ", kappa/tau " + sci(curv));
  return c.outcome();
}

Outcome classifiers() {
  Checks c;
  const double r = 1.0 / std::sqrt(2.0);
  double helix_err = 0.0;
  double sigma = 0.0;
  for (auto [a, b] : {std::pair{r, r}, std::pair{1.6, 0.8}}) {
    const CurveJet h = helix(a, b);
    const ClassificationReport hr = classify_helix(h);
    c.require(hr.kind == CurveKind::Helix, "helix not detected");
    helix_err = std::max(helix_err, std::abs(hr.constants.at("c").log() - b / a));
    sigma = std::max(sigma, std::abs(classify_slant_helix(h).constants.at("sigma").log()));
    c.require(spherical_check(h).kind == CurveKind::None, "helix classified spherical");
  }
  const ClassificationReport sph =
      spherical_check(sphere_curve(0.5, 1.0, make_range(MNum::from_log(-0.5), MNum::from_log(0.5))));
  c.require(sph.kind == CurveKind::Spherical, "spherical curve not detected");
  const CurveJet rect = curve_from_curvatures(make_profile([](const auto&) { return 1.0; }),
                                              make_profile([](const auto& u) { return u; }),
                                              make_range(MNum::from_log(-1), MNum::from_log(1)));
  const ClassificationReport rr = rectifying_fit(rect);
  const double slope = std::abs(rr.constants.at("a").log() - 1.0);
  const double intercept = std::abs(rr.constants.at("b").log());
  c.bound("helix constant", helix_err, 1e-9);
  c.bound("slant sigma on helices", sigma, 1e-9);
  c.bound("spherical residual", sph.residual, 1e-6);
  c.bound("rectifying slope", slope, 1e-3);
  c.bound("rectifying intercept", intercept, 1e-3);
  c.note("helix c " + sci(helix_err) + ", sigma " + sci(sigma) + ", spherical residual " + sci(sph.residual) +
         ", rectifying slope/intercept " + sci(slope) + "/" + sci(intercept));
  return c.outcome();
}

Outcome bertrand() {
  Checks c;
  const CurveJet x = helix(1.6, 0.8);
  const PartnerReport r = bertrand_verify(x, bertrand_partner(x, bertrand_natural_lambda(x)));
  double worst = 0.0;
  for (const auto& id : r.identities) {
    c.require(id.verdict == Verdict::Pass, id.name + " " + std::string(to_string(id.verdict)));
    worst = std::max(worst, id.max_residual);
  }
  c.bound("identity residual", worst, 1e-6);
  c.bound("lambda constancy", r.lambda.constancy, 1e-9);
  c.bound("theorem residual", r.identity("g_theorem").max_residual, 1e-8);
  c.require(!bertrand_verify(x, mcircle()).passed(), "negative control (circle) passed");
  c.require(!bertrand_verify(x, helix(1.0, 0.5)).passed(), "negative control (other helix) passed");
  c.note("7 identities, max residual " + sci(worst) + ", lambda e^" + sci(r.lambda.value.log()) + " constancy " +
         sci(r.lambda.constancy) + ", negative controls fail");
  return c.outcome();
}

Outcome mannheim() {
  Checks c;
  const CurveJet x = helix(1.6, 0.8);
  const MannheimLambda m = mannheim_lambda(x);
  c.bound("lambda error", std::abs(m.lambda.log() - 1.6), 1e-12);
  const PartnerReport r = mannheim_verify(x, mannheim_partner(x));
  for (const char* name : {"a_normal_binormal_collinear", "b_offset_lambda", "b_offset_mu", "c_theta_frame_relations",
                           "d_curvature_relations", "f_theorem_curvature"}) {
    const IdentityResult& id = r.identity(name);
    c.require(id.verdict == Verdict::Pass && id.max_residual <= 1e-6,
              std::string(name) + " " + std::string(to_string(id.verdict)));
  }
  c.require(r.identity("e_theorem_derivative_ratio").verdict == Verdict::Indeterminate, "(e) not indeterminate");
  const PartnerReport control = mannheim_verify(x, bertrand_partner(x, bertrand_natural_lambda(x)));
  c.require(control.identity("a_normal_binormal_collinear").verdict == Verdict::Fail, "Bertrand control passed (a)");
  c.note("lambda e^" + sci(m.lambda.log()) + ", checks (a)-(d),(f) pass, (e) indeterminate, control fails (a)");
  Outcome o = c.outcome();
  if (!o.pass) o.detail += " [partner of the helix is its axis, whose frame is undefined]";
  return o;
}

Outcome parser() {
  Checks c;
  Gen g(110);
  int round_trip = 0;
  for (int i = 0; i < 1000; ++i) {
    const MExpr e = testgen::random_mexpr(g, 5);
    if (structurally_equal(parse_mexpr(render_mexpr(e)), e)) ++round_trip;
  }
  c.require(round_trip == 1000, "round trip " + std::to_string(round_trip) + "/1000");

  const MExpr s = m_var();
  c.require(structurally_equal(parse_mexpr("s +* s .* s"), m_binary(MOp::Add, s, m_binary(MOp::Mul, s, s))) &&
                structurally_equal(parse_mexpr("s -* s -* s"), m_binary(MOp::Sub, m_binary(MOp::Sub, s, s), s)) &&
                structurally_equal(parse_mexpr("s .* s^*2"), m_binary(MOp::Mul, s, m_pow(s, 2))),
            "precedence");
  auto offset = [](std::string_view text) -> std::size_t {
    try {
      parse_mexpr(text);
    } catch (const ParseError& e) {
      return e.offset();
    }
    return std::string_view::npos;
  };
  c.require(offset("s +* ") == 5 && offset("s .* (s +* )") == 11 && offset("s s") == 2, "error offsets");

  double worst = 0.0;
  int compared = 0;
  int mismatched = 0;
  for (int i = 0; i < 1000; ++i) {
    const MExpr e = testgen::random_mexpr(g, 4);
    const MNum at = g.mnum(-1.5, 1.5);
    double direct = 0.0;
    double bridged = 0.0;
    bool direct_ok = true;
    bool bridged_ok = true;
    try {
      direct = eval(e, at).log();
    } catch (const Error&) {
      direct_ok = false;
    }
    try {
      bridged = evaluate(bridge(e), at.log());
    } catch (const Error&) {
      bridged_ok = false;
    }
    if (direct_ok != bridged_ok) ++mismatched;
    if (direct_ok && bridged_ok) {
      ++compared;
      worst = std::max(worst, rel_err(direct, bridged));
    }
  }
  c.require(mismatched == 0, std::to_string(mismatched) + " domain mismatches");
  c.bound("eval vs bridge", worst, 1e-12);
  c.note("1000 round trips, " + std::to_string(compared) + " of 1000 evaluations compared (rest outside domain), max " +
         sci(worst));
  return c.outcome();
}

struct Run {
  int code;
  std::string out;
};

Run cli_run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str()};
}

Outcome cli_suite() {
  Checks c;
  const std::string fixtures = MULGEO_FIXTURES;
  c.require(cli_run({"eval", "e^2 .* s", "--at", "e^3"}).code == 0, "eval exit 0");
  c.require(cli_run({"eval", "s +*", "--at", "2"}).code == 2, "parse error exit 2");
  c.require(cli_run({"frame", "--curve", "line:slope=2"}).code == 1, "singular frame exit 1");
  c.require(cli_run({"plot"}).code == 2, "empty plot exit 2");
  c.require(cli_run({"verify", "bertrand", "--curve", "helix:a=1.6,b=0.8", "--with-spec",
                     fixtures + "/bertrand_pair.json"})
                    .code == 0,
            "verify bertrand exit 0");
  c.require(cli_run({"verify", "mannheim", "--curve", "helix:a=1.6,b=0.8", "--with-spec",
                     fixtures + "/bertrand_pair.json"})
                    .code == 1,
            "verify mannheim on a Bertrand pair exit 1");

  const CurveJet h = helix(1.6, 0.8);
  int mismatches = 0;
  for (const char* flag : {"", "--log-form"}) {
    std::vector<std::string> args{"frame", "--curve", "helix:a=1.6,b=0.8", "-n", "32"};
    if (*flag) args.push_back(flag);
    const Run r = cli_run(args);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    for (MNum s : log_uniform_samples(h.domain(), 32)) {
      std::getline(in, line);
      const FrenetLocal f = frenet_local(h, s);
      std::vector<double> want{s.log()};
      for (const Vec* v : {&f.x, &f.t, &f.n, &f.b}) want.insert(want.end(), v->begin(), v->end());
      want.push_back(f.kappa);
      want.push_back(f.tau);
      std::istringstream cells(line);
      std::string cell;
      for (double w : want) {
        std::getline(cells, cell, ',');
        if (parse_mnum(cell).log() != w) ++mismatches;
      }
    }
  }
  c.require(mismatches == 0, "CSV round trip: " + std::to_string(mismatches) + " values changed");

  const std::vector<std::vector<std::string>> plots{
      {"plot", "--curve", "circle", "--projection", "xy"},
      {"plot", "--curve", "helix:a=1.6,b=0.8", "--spec", fixtures + "/bertrand_pair.json"},
      {"plot", "--plane", "(e^3, e^2, e):e^5", "--vector", "(e^5, e^3, e^-2)", "--raw-axes"},
  };
  for (const auto& p : plots) {
    const Run a = cli_run(p);
    const Run b = cli_run(p);
    std::string why;
    c.require(a.code == 0 && a.out == b.out, "plot not deterministic");
    c.require(xml_well_formed(a.out, why), "SVG: " + why);
  }
  c.note("exit codes, lossless CSV (32 rows, both number forms), 3 deterministic well-formed SVG plots");
  return c.outcome();
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"arithmetic", arithmetic}, {"trigonometry", trigonometry}, {"vectors", vectors},
      {"calculus", calculus},     {"circle", circle},             {"frenet", frenet_suite},
      {"classifiers", classifiers}, {"bertrand", bertrand},       {"mannheim", mannheim},
      {"parser", parser},         {"cli", cli_suite},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << "criterion " << (i + 1) << " " << criteria[i].first << ": " << (o.pass ? "PASS" : "FAIL") << " ("
              << o.detail << ")\n";
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria pass\n";
  return failed ? 1 : 0;
}
