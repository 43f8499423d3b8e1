#include <cmath>
#include <numbers>

#include "doctest.h"
#include "expr_gen.hpp"
#include "mulgeo/mexpr.hpp"

using namespace mulgeo;
using testgen::random_mexpr;

namespace {

std::size_t error_offset(std::string_view text) {
  try {
    parse_mexpr(text);
  } catch (const ParseError& e) {
    return e.offset();
  }
  return std::string_view::npos;
}

}  // namespace

TEST_CASE("grammar examples") {
  const MExpr e = parse_mexpr("e^0.5 .* msin(s)");
  CHECK(structurally_equal(e, m_binary(MOp::Mul, m_literal(MNum::from_log(0.5)), m_unary(MOp::Sin, m_var()))));
  CHECK(error_offset("s +* ") == 5);
  const MExpr pyth = parse_mexpr("mcos(s)^*2 +* msin(s)^*2");
  testgen::Gen g(41);
  for (int i = 0; i < 100; ++i) CHECK(std::abs(eval(pyth, g.mnum()).log() - 1.0) <= 1e-12);
  CHECK(eval(parse_mexpr("s"), MNum::from_log(2)).log() == 2.0);
  CHECK(eval(parse_mexpr("e^2 .* s"), MNum::from_log(3)).log() == 6.0);
  CHECK(eval(parse_mexpr("s -* s"), MNum::from_value(5)).log() == 0.0);
  CHECK(eval(parse_mexpr("2.5"), MNum::one()).value() == doctest::Approx(2.5));
}

TEST_CASE("precedence and associativity") {
  const MExpr s = m_var();
  CHECK(structurally_equal(parse_mexpr("s +* s .* s"), m_binary(MOp::Add, s, m_binary(MOp::Mul, s, s))));
  CHECK(structurally_equal(parse_mexpr("s -* s -* s"), m_binary(MOp::Sub, m_binary(MOp::Sub, s, s), s)));
  CHECK(structurally_equal(parse_mexpr("s /* s .* s"), m_binary(MOp::Mul, m_binary(MOp::Div, s, s), s)));
  CHECK(structurally_equal(parse_mexpr("s .* s^*2"), m_binary(MOp::Mul, s, m_pow(s, 2))));
  CHECK(structurally_equal(parse_mexpr("(s +* s) .* s"), m_binary(MOp::Mul, m_binary(MOp::Add, s, s), s)));
  CHECK(structurally_equal(parse_mexpr("  s+*s  "), m_binary(MOp::Add, s, s)));
  CHECK(structurally_equal(parse_mexpr("mneg(s)^*-1"), m_pow(m_unary(MOp::Neg, s), -1)));
}

TEST_CASE("error offsets and expected tokens") {
  CHECK(error_offset("") == 0);
  CHECK(error_offset("s .* (s +* )") == 11);
  CHECK(error_offset("msin s") == 5);
  CHECK(error_offset("s s") == 2);
  CHECK(error_offset("s ^* x") == 5);
  CHECK(error_offset("e^") == 2);
  CHECK(error_offset("(s") == 2);
  CHECK_THROWS_AS(parse_mexpr("mfoo(s)"), UnknownIdentifierError);
  CHECK(error_offset("s +* mfoo(s)") == 5);
  try {
    parse_mexpr("s +* ");
  } catch (const ParseError& e) {
    CHECK_FALSE(e.expected().empty());
  }
}

TEST_CASE("render then parse is the identity on generated trees") {
  testgen::Gen g(42);
  for (int i = 0; i < 1000; ++i) {
    const MExpr e = random_mexpr(g, 5);
    const std::string text = render_mexpr(e);
    CAPTURE(text);
    CHECK(structurally_equal(parse_mexpr(text), e));
  }
}

TEST_CASE("evaluation equals the bridge expression on generated trees") {
  testgen::Gen g(43);
  int compared = 0;
  for (int i = 0; i < 1000; ++i) {
    const MExpr e = random_mexpr(g, 4);
    const MNum s = g.mnum(-1.5, 1.5);
    CAPTURE(render_mexpr(e));
    bool direct_failed = false;
    double direct = 0.0;
    try {
      direct = eval(e, s).log();
    } catch (const Error&) {
      direct_failed = true;
    }
    bool bridged_failed = false;
    double bridged = 0.0;
    try {
      bridged = evaluate(bridge(e), s.log());
    } catch (const Error&) {
      bridged_failed = true;
    }
    CHECK(direct_failed == bridged_failed);
    if (!direct_failed && !bridged_failed) {
      ++compared;
      CHECK(testgen::rel_err(direct, bridged) <= 1e-12);
    }
  }
  CHECK(compared >= 700);
}

TEST_CASE("symbolic derivatives match finite differences and series jets") {
  testgen::Gen g(44);
  const MExpr e = parse_mexpr("e^0.5 .* msin(s) +* s^*3 /* (e^2 +* mcos(s)^*2)");
  const BExpr b = bridge(e);
  for (int order = 1; order <= 3; ++order) {
    const BExpr d = bridge_diff(e, order);
    for (int i = 0; i < 100; ++i) {
      const double u = g.real(-1.5, 1.5);
      const double fd = central_difference([&](double x) { return evaluate(b, x); }, u, order);
      CHECK(std::abs(evaluate(d, u) - fd) <= 1e-6 * std::max(1.0, std::abs(fd)) * (order == 3 ? 100 : 1));
      const Series jet = evaluate(b, Series::variable(u, 5));
      CHECK(std::abs(evaluate(d, u) - jet.derivative(order)) <= 1e-10 * std::max(1.0, std::abs(jet.derivative(order))));
    }
  }
  CHECK(evaluate(bridge_diff(parse_mexpr("e^3"), 1), 0.7) == 0.0);
  CHECK(evaluate(bridge_diff(parse_mexpr("s^*2"), 2), 0.7) == 2.0);
}

TEST_CASE("differentiating through the kink of mabs") {
  const BExpr d = bridge_diff(parse_mexpr("mabs(s)"), 1);
  CHECK(evaluate(d, 0.5) == 1.0);
  CHECK(evaluate(d, -0.5) == -1.0);
  CHECK_THROWS_AS(evaluate(d, 0.0), NonDifferentiableError);
}

TEST_CASE("classical syntax") {
  const BExpr b = parse_classical("2*sin(u)^2 - u/3 + exp(-u) + pi");
  const double u = 0.4;
  CHECK(evaluate(b, u) == doctest::Approx(2 * std::pow(std::sin(u), 2) - u / 3 + std::exp(-u) + std::numbers::pi));
  CHECK(evaluate(parse_classical(render_classical(b)), 1.3) == doctest::Approx(evaluate(b, 1.3)).epsilon(1e-14));
  CHECK_THROWS_AS(parse_classical("foo(u)"), UnknownIdentifierError);
  CHECK_THROWS_AS(parse_classical("u +"), ParseError);
  CHECK_THROWS_AS(evaluate(parse_classical("log(u)"), -1.0), DomainError);
  CHECK_THROWS_AS(evaluate(parse_classical("1/u"), 0.0), Error);
}

TEST_CASE("curve specs") {
  const auto doc = nlohmann::json::parse(R"({"components": ["s", "e^2 .* s", "u^2"],
                                             "form": ["mult", "mult", "log"], "range": [0.5, "e^1"]})");
  const CurveSpec spec = parse_curve_spec(doc);
  CHECK(spec.components[2].log_form);
  REQUIRE(spec.range);
  CHECK(spec.range->hi.log() == 1.0);
  const CurveJet c = curve_from_spec(spec);
  const auto p = c.at(MNum::from_log(0.3)).logs();
  CHECK(p[0] == doctest::Approx(0.3));
  CHECK(p[1] == doctest::Approx(0.6));
  CHECK(p[2] == doctest::Approx(0.09));
  CHECK(parse_curve_spec(to_json(spec)).components[1].text == "e^2 .* s");

  CHECK_THROWS_AS(parse_curve_spec(nlohmann::json::parse(R"({"components": ["s", "s"]})")), DimensionError);
  CHECK_THROWS_AS(parse_curve_spec(nlohmann::json::parse(R"({"components": ["s", "s", "s"], "form": "x"})")),
                  ParseError);
  CHECK_THROWS_AS(parse_curve_spec(nlohmann::json::parse(R"({"components": ["s", "s", "s +*"]})")), ParseError);
  CHECK_THROWS_AS(parse_curve_spec(nlohmann::json::parse(R"({"components": ["s", "s", "s"], "range": [2, 1]})")),
                  Error);
  CHECK_THROWS_AS(parse_curve_spec(nlohmann::json::parse(R"({"form": "mult"})")), ParseError);
}
