#pragma once

// Expression language for multiplicative functions of s.
//
//   expr    := term { ("+*" | "-*") term }
//   term    := factor { (".*" | "/*") factor }
//   factor  := base [ "^*" real ]
//   base    := "(" expr ")" | func "(" expr ")" | literal | "s"
//   func    := msin | mcos | mtan | mcot | msqrt | mneg | mabs
//   literal := "e^" real | positive decimal
//
// An expression bridges to a classical expression in U = log s; the bridge
// drives evaluation, differentiation and jets. A second, classical syntax in
// the variable u describes log-form curve components directly.

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "mulgeo/curve.hpp"
#include "mulgeo/mcalc.hpp"
#include "mulgeo/mnum.hpp"
#include "mulgeo/series.hpp"

namespace mulgeo {

enum class MOp { Literal, Var, Neg, Abs, Sqrt, Sin, Cos, Tan, Cot, Add, Sub, Mul, Div, Pow };

struct MNode;
using MExpr = std::shared_ptr<const MNode>;

struct MNode {
  MOp op = MOp::Literal;
  MNum literal;
  double exponent = 1.0;
  MExpr lhs;
  MExpr rhs;
};

MExpr m_literal(MNum value);
MExpr m_var();
MExpr m_unary(MOp op, MExpr arg);
MExpr m_binary(MOp op, MExpr lhs, MExpr rhs);
MExpr m_pow(MExpr base, double exponent);

/// Throws ParseError (with offset and expected tokens) or UnknownIdentifierError.
MExpr parse_mexpr(std::string_view text);
/// Minimal parentheses; literals in e^<log> form so that parsing is lossless.
std::string render_mexpr(const MExpr& e);
bool structurally_equal(const MExpr& a, const MExpr& b);
/// Direct evaluation with the multiplicative operations.
MNum eval(const MExpr& e, MNum s);

enum class BOp { Const, Var, Add, Sub, Mul, Div, Neg, Pow, Sin, Cos, Tan, Cot, Abs, Sqrt, Exp, Log, Sign };

struct BNode;
using BExpr = std::shared_ptr<const BNode>;

/// Classical expression in the variable U.
struct BNode {
  BOp op = BOp::Const;
  double value = 0.0;
  double exponent = 1.0;
  BExpr a;
  BExpr b;
};

BExpr b_const(double v);
BExpr b_var();
BExpr b_unary(BOp op, BExpr a);
BExpr b_binary(BOp op, BExpr a, BExpr b);
BExpr b_pow(BExpr a, double k);

/// The classical counterpart B of a multiplicative expression.
BExpr bridge(const MExpr& e);
/// Symbolic d/dU with constant folding. Through |x| the result contains
/// sign(x), which refuses to evaluate at 0.
BExpr differentiate(const BExpr& e);
/// d^order B / dU^order.
BExpr bridge_diff(const MExpr& e, int order);

double evaluate(const BExpr& e, double u);
Series evaluate(const BExpr& e, const Series& u);
std::string render_classical(const BExpr& e);

/// Classical syntax in u: + - * / ^ (real exponent), unary minus,
/// sin cos tan cot sqrt abs exp log, constants pi and decimals.
BExpr parse_classical(std::string_view text);

/// f with F = B(e) and exact bridge jets.
ScalarMapJet scalar_from_bridge(BExpr b);
ScalarMapJet scalar_from_mexpr(const MExpr& e);

struct ComponentSpec {
  std::string text;
  /// true: classical log-form in u; false: multiplicative form in s.
  bool log_form = false;
  BExpr bridge;
};

struct CurveSpec {
  std::array<ComponentSpec, 3> components;
  std::optional<ParamRange> range;
};

/// [lo, hi] with numbers or MNum literals.
ParamRange parse_range(const nlohmann::json& r);
ComponentSpec make_component(std::string text, bool log_form);
/// {components: [3 strings], form: "mult" | "log" | [3 of those], range: [lo, hi]}.
/// Range ends are numbers or MNum literals such as "e^-2".
CurveSpec parse_curve_spec(const nlohmann::json& doc);
CurveSpec load_curve_spec(const std::string& path);
nlohmann::json to_json(const CurveSpec& spec);
CurveJet curve_from_spec(const CurveSpec& spec, std::optional<ParamRange> range = std::nullopt);

}  // namespace mulgeo
