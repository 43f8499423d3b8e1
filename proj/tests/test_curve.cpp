#include <cmath>
#include <numbers>

#include "doctest.h"
#include "gen.hpp"
#include "mulgeo/classify.hpp"
#include "mulgeo/mexpr.hpp"
#include "mulgeo/synth.hpp"

using namespace mulgeo;

namespace {

const double kRootHalf = 1.0 / std::sqrt(2.0);

Vec3 cross3(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double dot3(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
double norm3(const Vec3& a) { return std::sqrt(dot3(a, a)); }
double gap(const Vec3& a, const Vec3& b) { return std::max({std::abs(a[0] - b[0]), std::abs(a[1] - b[1]), std::abs(a[2] - b[2])}); }

// Classical apparatus of the bridge curve from its first three derivatives.
struct Classical {
  Vec3 t, n, b;
  double kappa, tau;
};

Classical classical(const CurveJet& c, double u) {
  const SeriesVec3 f = c.bridge(u, 3);
  Vec3 d1, d2, d3;
  for (int i = 0; i < 3; ++i) {
    d1[i] = f[i].derivative(1);
    d2[i] = f[i].derivative(2);
    d3[i] = f[i].derivative(3);
  }
  const Vec3 c12 = cross3(d1, d2);
  const double speed = norm3(d1);
  Classical out;
  for (int i = 0; i < 3; ++i) {
    out.t[i] = d1[i] / speed;
    out.b[i] = c12[i] / norm3(c12);
  }
  out.n = cross3(out.b, out.t);
  out.kappa = norm3(c12) / (speed * speed * speed);
  out.tau = dot3(c12, d3) / dot3(c12, c12);
  return out;
}

CurveJet without_jets(const CurveJet& c) {
  std::array<ScalarMapJet, 3> comps;
  for (std::size_t i = 0; i < 3; ++i) {
    comps[i] = ScalarMapJet::from_eval([c, i](MNum s) { return c.at(s)[i]; });
  }
  return CurveJet(comps, c.domain(), Provenance::Catalog, c.label() + " (no jets)");
}

}  // namespace

TEST_CASE("catalog lookup") {
  CHECK(catalog_curve("helix:a=1.6,b=0.8").label() == "helix:a=1.6,b=0.8");
  CHECK(catalog_curve("circle").has_jets());
  CHECK_THROWS_AS(catalog_curve("spiral"), UnknownIdentifierError);
  CHECK_THROWS_AS(catalog_curve("helix:a=1"), ParseError);
  CHECK_THROWS_AS(catalog_curve("helix:a=1,b=1,q=2"), ParseError);
  CHECK_THROWS_AS(make_range(MNum::from_log(1), MNum::from_log(1)), DomainError);
  const auto s = log_uniform_samples(default_range(), 5);
  REQUIRE(s.size() == 5);
  CHECK(s.front().log() == doctest::Approx(-std::numbers::pi));
  CHECK(s.back().log() == doctest::Approx(std::numbers::pi));
}

TEST_CASE("the multiplicative circle: unit speed and radius e about (1, 1)") {
  const CurveJet c = mcircle();
  const NaturalReport nat = is_natural(c, 256);
  CHECK(nat.natural);
  CHECK(nat.deviation <= 1e-9);
  CHECK_FALSE(nat.literal_reading);
  testgen::Gen g(51);
  const MVec2 centre = MVec2::from_logs({0.0, 0.0});
  for (int i = 0; i < 500; ++i) {
    const MNum t = g.mnum(-10, 10);
    CHECK(std::abs(mdistance(mcircle_point(t), centre).log() - 1.0) <= 1e-12);
  }
}

TEST_CASE("bridge oracle: frenet_local is the classical apparatus of the bridge curve") {
  testgen::Gen g(52);
  const CurveJet curves[] = {helix(kRootHalf, kRootHalf), helix(1.6, 0.8), helix_raw(1.0, 0.5, 2.0),
                             sphere_curve(0.5, 1.0), curve_from_spec(parse_curve_spec(nlohmann::json::parse(
                                                         R"({"components": ["s", "s^*2", "s^*3"]})")))};
  for (const CurveJet& c : curves) {
    CAPTURE(c.label());
    for (int i = 0; i < 20; ++i) {
      const double u = g.real(0.2, 0.6);
      const FrenetLocal f = frenet_local(c, MNum::from_log(u));
      const Classical want = classical(c, u);
      CHECK(gap(f.t, want.t) <= 1e-9);
      CHECK(gap(f.n, want.n) <= 1e-9);
      CHECK(gap(f.b, want.b) <= 1e-9);
      CHECK(std::abs(f.kappa - want.kappa) <= 1e-9 * std::max(1.0, want.kappa));
      CHECK(std::abs(f.tau - want.tau) <= 1e-9 * std::max(1.0, std::abs(want.tau)));
      const FrenetApparatus a = f.apparatus();
      CHECK(a.kappa.log() == f.kappa);
      CHECK(a.t.logs() == f.t);
    }
  }
}

TEST_CASE("finite-difference fallback agrees with analytic jets") {
  testgen::Gen g(53);
  for (const CurveJet& c : {helix(1.6, 0.8), sphere_curve(0.5, 1.0)}) {
    const CurveJet fd = without_jets(c);
    CHECK_FALSE(fd.has_jets());
    for (int i = 0; i < 10; ++i) {
      const MNum s = MNum::from_log(g.real(0.1, 0.5));
      const FrenetLocal a = frenet_local(c, s);
      const FrenetLocal b = frenet_local(fd, s);
      CHECK(gap(a.t, b.t) <= 1e-5);
      CHECK(gap(a.n, b.n) <= 1e-5);
      CHECK(std::abs(a.kappa - b.kappa) <= 1e-5);
    }
  }
}

TEST_CASE("Frenet apparatus of the catalog helices") {
  for (auto [a, b] : {std::pair{kRootHalf, kRootHalf}, std::pair{1.6, 0.8}}) {
    const CurveJet h = helix(a, b);
    CAPTURE(h.label());
    const double kappa = a / (a * a + b * b);
    const double tau = b / (a * a + b * b);
    for (MNum s : log_uniform_samples(h.domain(), 64)) {
      const FrenetApparatus fa = frenet(h, s);
      const Vec3 t = fa.t.logs();
      const Vec3 n = fa.n.logs();
      const Vec3 bb = fa.b.logs();
      CHECK(std::abs(dot3(t, t) - 1) <= 1e-12);
      CHECK(std::abs(dot3(n, n) - 1) <= 1e-12);
      CHECK(std::abs(dot3(bb, bb) - 1) <= 1e-12);
      CHECK(std::abs(dot3(t, n)) <= 1e-12);
      CHECK(std::abs(dot3(t, bb)) <= 1e-12);
      CHECK(std::abs(dot3(n, bb)) <= 1e-12);
      CHECK(gap(cross3(t, n), bb) <= 1e-12);
      CHECK(gap(cross3(n, bb), t) <= 1e-12);
      CHECK(gap(cross3(bb, t), n) <= 1e-12);
      CHECK(std::abs(fa.kappa.log() - kappa) <= 1e-9);
      CHECK(std::abs(fa.tau.log() - tau) <= 1e-9);
      const FrenetLocal fl = frenet_local(h, s);
      for (double r : fl.residuals) CHECK(r <= 1e-8);
    }
  }
}

TEST_CASE("frame errors") {
  CHECK_THROWS_AS(frenet(helix_raw(1.0, 1.0, 2.0), MNum::one()), NotNaturalError);
  CHECK_NOTHROW(frenet_local(helix_raw(1.0, 1.0, 2.0), MNum::one()));
  CHECK_THROWS_AS(frenet_local(power_line(1.0), MNum::one()), FrameUndefinedError);
  const CurveJet constant =
      curve_from_spec(parse_curve_spec(nlohmann::json::parse(R"({"components": ["e^1", "e^2", "e^3"]})")));
  CHECK_THROWS_AS(frenet_local(constant, MNum::one()), SingularCurveError);
  CHECK(speed_star(helix_raw(1.0, 0.0, 3.0), MNum::one()).log() == doctest::Approx(3.0));
}

TEST_CASE("natural reparametrization") {
  const CurveJet fast = helix_raw(1.0, 1.0, 2.0);
  CHECK_FALSE(is_natural(fast).natural);
  const CurveJet nat = reparametrize_natural(fast);
  CHECK(nat.provenance() == Provenance::Reparametrized);
  const NaturalReport rep = is_natural(nat, 128);
  CHECK(rep.natural);
  CHECK(rep.deviation <= 1e-6);
  CHECK(nat.domain().hi.log() - nat.domain().lo.log() == doctest::Approx(2 * std::numbers::pi * 2 * std::sqrt(2.0)));
  for (MNum s : log_uniform_samples(nat.domain(), 16)) {
    const FrenetLocal f = frenet_local(nat, s);
    CHECK(f.kappa == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(f.tau == doctest::Approx(0.5).epsilon(1e-6));
  }
  CHECK(is_natural(reparametrize_natural(power_line(2.0))).deviation <= 1e-9);
}

TEST_CASE("curves from prescribed curvature and torsion") {
  const ParamRange range = make_range(MNum::from_log(-1), MNum::from_log(1));
  const CurveJet h = curve_from_curvatures(make_profile([](const auto&) { return kRootHalf; }),
                                           make_profile([](const auto&) { return kRootHalf; }), range);
  CHECK(h.provenance() == Provenance::Synthesized);
  CHECK(is_natural(h).natural);
  const CurveJet cat = helix(kRootHalf, kRootHalf);
  for (MNum s : log_uniform_samples(range, 16)) {
    const FrenetLocal a = frenet_local(h, s);
    const FrenetLocal b = frenet_local(cat, s);
    CHECK(std::abs(a.kappa - b.kappa) <= 1e-4);
    CHECK(std::abs(a.tau - b.tau) <= 1e-4);
  }
  const CurveJet planar = curve_from_curvatures(make_profile([](const auto&) { return 1.0; }),
                                                make_profile([](const auto&) { return 0.0; }), range);
  for (MNum s : log_uniform_samples(range, 8)) {
    CHECK(std::abs(frenet_local(planar, s).tau) <= 1e-4);
    CHECK(std::abs(planar.at(s)[2].log()) <= 1e-9);
  }
  const CurveJet start = curve_from_curvatures(make_profile([](const auto&) { return 1.0; }),
                                               make_profile([](const auto& u) { return u; }), range);
  for (double c : start.at(range.lo).logs()) CHECK(c == 0.0);
  CHECK_THROWS_AS(start.at(MNum::from_log(3)), DomainError);
  CHECK_THROWS_AS(curve_from_curvatures(make_profile([](const auto& u) { return u; }),
                                        make_profile([](const auto&) { return 1.0; }), range),
                  DomainError);
}

TEST_CASE("helix classification") {
  for (auto [a, b] : {std::pair{kRootHalf, kRootHalf}, std::pair{1.6, 0.8}}) {
    const CurveJet h = helix(a, b);
    const ClassificationReport r = classify_helix(h);
    CHECK(r.kind == CurveKind::Helix);
    CHECK(std::abs(r.constants.at("c").log() - b / a) <= 1e-9);
    const ClassificationReport slant = classify_slant_helix(h);
    CHECK(std::abs(slant.constants.at("sigma").log()) <= 1e-9);
    CHECK(slant.kind == CurveKind::Helix);
    CHECK_FALSE(slant.notices.empty());
    const ClassificationReport rect = rectifying_fit(h);
    CHECK(rect.kind == CurveKind::None);
    CHECK(std::abs(rect.constants.at("a").log()) <= 1e-9);
  }
  CHECK(classify_helix(sphere_curve(0.5, 1.0, make_range(MNum::from_log(-0.5), MNum::from_log(0.5)))).kind ==
        CurveKind::None);
}

TEST_CASE("slant helix") {
  // log kappa = 1, log tau = 0.1 U / sqrt(1 - 0.01 U^2) has sigma = 0.1.
  const ParamRange range = make_range(MNum::from_log(-2), MNum::from_log(2));
  const CurveJet c = curve_from_curvatures(
      make_profile([](const auto&) { return 1.0; }),
      make_profile([](const auto& u) { return 0.1 * u / sqrt(1.0 - 0.01 * u * u); }), range);
  const ClassificationReport r = classify_slant_helix(c);
  CHECK(r.kind == CurveKind::SlantHelix);
  CHECK(std::abs(r.constants.at("sigma").log() - 0.1) <= 1e-6);
  CHECK(classify_helix(c).kind == CurveKind::None);
}

TEST_CASE("spherical curves") {
  const ParamRange range = make_range(MNum::from_log(-0.5), MNum::from_log(0.5));
  const CurveJet c = sphere_curve(0.5, 1.0, range);
  const ClassificationReport r = spherical_check(c);
  CHECK(r.kind == CurveKind::Spherical);
  CHECK(r.residual <= 1e-6);
  const ClassificationReport with_sphere = spherical_check(c, SphereCandidate{MVec3{}, MNum::one()});
  CHECK(with_sphere.kind == CurveKind::Spherical);
  CHECK(with_sphere.constants.at("center_distance_residual").log() <= 1e-12);
  CHECK(spherical_check(c, SphereCandidate{MVec3{}, MNum::from_log(2)}).kind == CurveKind::None);
  CHECK(spherical_check(helix(1.6, 0.8)).kind == CurveKind::None);
  CHECK(spherical_check(helix(kRootHalf, kRootHalf)).residual > 0.1);
}

TEST_CASE("rectifying fit") {
  const ParamRange range = make_range(MNum::from_log(-1), MNum::from_log(1));
  const CurveJet c = curve_from_curvatures(make_profile([](const auto&) { return 1.0; }),
                                           make_profile([](const auto& u) { return u; }), range);
  const ClassificationReport r = rectifying_fit(c);
  CHECK(r.kind == CurveKind::Rectifying);
  CHECK(std::abs(r.constants.at("a").log() - 1.0) <= 1e-3);
  CHECK(std::abs(r.constants.at("b").log()) <= 1e-3);
  const CurveJet shifted = curve_from_curvatures(make_profile([](const auto&) { return 1.0; }),
                                                 make_profile([](const auto& u) { return u + 2.0; }), range);
  CHECK(std::abs(rectifying_fit(shifted).constants.at("b").log() - 2.0) <= 1e-3);
  const auto all = classify_all(c);
  REQUIRE(all.size() == 4);
  CHECK(all[3].kind == CurveKind::Rectifying);
  CHECK(to_json(r)["kind"] == "rectifying");
}

TEST_CASE("zero-curvature samples are excluded, not guessed") {
  const ClassificationReport r = classify_helix(power_line(2.0));
  CHECK(r.samples == 0);
  CHECK(r.excluded == 64);
  CHECK(r.kind == CurveKind::None);
}
