#include "mulgeo/mexpr.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace mulgeo {

// ---------------------------------------------------------------- AST nodes

MExpr m_literal(MNum value) {
  auto n = std::make_shared<MNode>();
  n->op = MOp::Literal;
  n->literal = value;
  return n;
}

MExpr m_var() {
  auto n = std::make_shared<MNode>();
  n->op = MOp::Var;
  return n;
}

MExpr m_unary(MOp op, MExpr arg) {
  auto n = std::make_shared<MNode>();
  n->op = op;
  n->lhs = std::move(arg);
  return n;
}

MExpr m_binary(MOp op, MExpr lhs, MExpr rhs) {
  auto n = std::make_shared<MNode>();
  n->op = op;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

MExpr m_pow(MExpr base, double exponent) {
  auto n = std::make_shared<MNode>();
  n->op = MOp::Pow;
  n->lhs = std::move(base);
  n->exponent = exponent;
  return n;
}

namespace {

struct FuncName {
  std::string_view name;
  MOp op;
};

constexpr std::array<FuncName, 7> kFunctions{{{"msin", MOp::Sin},
                                              {"mcos", MOp::Cos},
                                              {"mtan", MOp::Tan},
                                              {"mcot", MOp::Cot},
                                              {"msqrt", MOp::Sqrt},
                                              {"mneg", MOp::Neg},
                                              {"mabs", MOp::Abs}}};

std::string_view func_name(MOp op) {
  for (const auto& f : kFunctions) {
    if (f.op == op) return f.name;
  }
  return "?";
}

const std::vector<std::string>& operand_tokens() {
  static const std::vector<std::string> tokens{"(", "e^<real>", "positive decimal", "s", "msin", "mcos",
                                               "mtan", "mcot", "msqrt", "mneg", "mabs"};
  return tokens;
}

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

// Shared lexing of real literals: [+-]? digits [. digits] [(e|E) [+-]? digits].
class Cursor {
 public:
  explicit Cursor(std::string_view src) : src_(src) {}

  std::size_t pos() const { return pos_; }
  bool at_end() {
    skip_ws();
    return pos_ >= src_.size();
  }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }
  void advance(std::size_t n) { pos_ += n; }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])) != 0) ++pos_;
  }

  bool match(std::string_view token) {
    skip_ws();
    if (src_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  double real(bool allow_sign) {
    skip_ws();
    const std::size_t start = pos_;
    std::size_t p = pos_;
    if (allow_sign && p < src_.size() && (src_[p] == '+' || src_[p] == '-')) ++p;
    const std::size_t digits_start = p;
    while (p < src_.size() && is_digit(src_[p])) ++p;
    if (p == digits_start) {
      throw ParseError("expected a real number at offset " + std::to_string(start), start,
                       {allow_sign ? "real" : "positive decimal"});
    }
    if (p + 1 < src_.size() && src_[p] == '.' && is_digit(src_[p + 1])) {
      ++p;
      while (p < src_.size() && is_digit(src_[p])) ++p;
    } else if (p < src_.size() && src_[p] == '.' && (p + 1 >= src_.size() || src_[p + 1] != '*')) {
      ++p;  // "2." is a complete literal
    }
    if (p < src_.size() && (src_[p] == 'e' || src_[p] == 'E')) {
      std::size_t q = p + 1;
      if (q < src_.size() && (src_[q] == '+' || src_[q] == '-')) ++q;
      if (q < src_.size() && is_digit(src_[q])) {
        while (q < src_.size() && is_digit(src_[q])) ++q;
        p = q;
      }
    }
    pos_ = p;
    return parse_real(src_.substr(start, p - start));
  }

  std::string_view identifier() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < src_.size() && is_ident_char(src_[pos_])) ++pos_;
    return src_.substr(start, pos_ - start);
  }

  std::string_view src() const { return src_; }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;
};

class MParser {
 public:
  explicit MParser(std::string_view src) : in_(src) {}

  MExpr parse() {
    MExpr e = expr();
    if (!in_.at_end()) {
      throw ParseError("unexpected input at offset " + std::to_string(in_.pos()), in_.pos(),
                       {"+*", "-*", ".*", "/*", "^*", "end of input"});
    }
    return e;
  }

 private:
  MExpr expr() {
    MExpr lhs = term();
    for (;;) {
      if (in_.match("+*")) {
        lhs = m_binary(MOp::Add, lhs, term());
      } else if (in_.match("-*")) {
        lhs = m_binary(MOp::Sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  MExpr term() {
    MExpr lhs = factor();
    for (;;) {
      if (in_.match(".*")) {
        lhs = m_binary(MOp::Mul, lhs, factor());
      } else if (in_.match("/*")) {
        lhs = m_binary(MOp::Div, lhs, factor());
      } else {
        return lhs;
      }
    }
  }

  MExpr factor() {
    MExpr b = base();
    if (in_.match("^*")) return m_pow(b, in_.real(true));
    return b;
  }

  void expect(std::string_view token) {
    if (!in_.match(token)) {
      throw ParseError("expected '" + std::string(token) + "' at offset " + std::to_string(in_.pos()),
                       in_.pos(), {std::string(token)});
    }
  }

  MExpr base() {
    in_.skip_ws();
    const std::size_t start = in_.pos();
    const char c = in_.peek();
    if (c == '(') {
      in_.advance(1);
      MExpr e = expr();
      expect(")");
      return e;
    }
    if (c == 'e' && in_.peek(1) == '^' && in_.peek(2) != '*') {
      in_.advance(2);
      return m_literal(MNum::from_log(in_.real(true)));
    }
    if (is_digit(c)) {
      const double v = in_.real(false);
      if (!(v > 0.0) || !std::isfinite(v)) {
        throw ParseError("literal must be a positive finite decimal at offset " + std::to_string(start), start,
                         {"positive decimal"});
      }
      return m_literal(MNum::from_value(v));
    }
    if (is_ident_start(c)) {
      const std::string_view id = in_.identifier();
      if (id == "s") return m_var();
      for (const auto& f : kFunctions) {
        if (id == f.name) {
          expect("(");
          MExpr arg = expr();
          expect(")");
          return m_unary(f.op, arg);
        }
      }
      throw UnknownIdentifierError("unknown identifier '" + std::string(id) + "' at offset " +
                                       std::to_string(start),
                                   start, operand_tokens());
    }
    throw ParseError(c == '\0' ? "unexpected end of input at offset " + std::to_string(start)
                               : "unexpected '" + std::string(1, c) + "' at offset " + std::to_string(start),
                     start, operand_tokens());
  }

  Cursor in_;
};

int m_prec(const MExpr& e) {
  switch (e->op) {
    case MOp::Add:
    case MOp::Sub: return 1;
    case MOp::Mul:
    case MOp::Div: return 2;
    case MOp::Pow: return 3;
    default: return 4;
  }
}

std::string wrap(const std::string& s, bool yes) { return yes ? "(" + s + ")" : s; }

}  // namespace

MExpr parse_mexpr(std::string_view text) { return MParser(text).parse(); }

std::string render_mexpr(const MExpr& e) {
  switch (e->op) {
    case MOp::Literal: return "e^" + format_real(e->literal.log());
    case MOp::Var: return "s";
    case MOp::Pow: return wrap(render_mexpr(e->lhs), m_prec(e->lhs) < 4) + "^*" + format_real(e->exponent);
    case MOp::Add:
    case MOp::Sub:
    case MOp::Mul:
    case MOp::Div: {
      const int p = m_prec(e);
      const char* op = e->op == MOp::Add ? " +* " : e->op == MOp::Sub ? " -* " : e->op == MOp::Mul ? " .* " : " /* ";
      return wrap(render_mexpr(e->lhs), m_prec(e->lhs) < p) + op + wrap(render_mexpr(e->rhs), m_prec(e->rhs) <= p);
    }
    default: return std::string(func_name(e->op)) + "(" + render_mexpr(e->lhs) + ")";
  }
}

bool structurally_equal(const MExpr& a, const MExpr& b) {
  if (!a || !b) return !a && !b;
  if (a->op != b->op) return false;
  switch (a->op) {
    case MOp::Literal: return a->literal.log() == b->literal.log();
    case MOp::Var: return true;
    case MOp::Pow: return a->exponent == b->exponent && structurally_equal(a->lhs, b->lhs);
    default: return structurally_equal(a->lhs, b->lhs) && structurally_equal(a->rhs, b->rhs);
  }
}

MNum eval(const MExpr& e, MNum s) {
  switch (e->op) {
    case MOp::Literal: return e->literal;
    case MOp::Var: return s;
    case MOp::Neg: return mneg(eval(e->lhs, s));
    case MOp::Abs: return mabs(eval(e->lhs, s));
    case MOp::Sqrt: return msqrt(eval(e->lhs, s));
    case MOp::Sin: return msin(eval(e->lhs, s));
    case MOp::Cos: return mcos(eval(e->lhs, s));
    case MOp::Tan: return mtan(eval(e->lhs, s));
    case MOp::Cot: return mcot(eval(e->lhs, s));
    case MOp::Add: return madd(eval(e->lhs, s), eval(e->rhs, s));
    case MOp::Sub: return msub(eval(e->lhs, s), eval(e->rhs, s));
    case MOp::Mul: return mmul(eval(e->lhs, s), eval(e->rhs, s));
    case MOp::Div: return mdiv(eval(e->lhs, s), eval(e->rhs, s));
    case MOp::Pow: return mpow(eval(e->lhs, s), e->exponent);
  }
  throw DomainError("eval: corrupt expression");
}

// ------------------------------------------------------ classical bridge

BExpr b_const(double v) {
  auto n = std::make_shared<BNode>();
  n->op = BOp::Const;
  n->value = v;
  return n;
}

BExpr b_var() {
  auto n = std::make_shared<BNode>();
  n->op = BOp::Var;
  return n;
}

BExpr b_unary(BOp op, BExpr a) {
  auto n = std::make_shared<BNode>();
  n->op = op;
  n->a = std::move(a);
  return n;
}

BExpr b_binary(BOp op, BExpr a, BExpr b) {
  auto n = std::make_shared<BNode>();
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

BExpr b_pow(BExpr a, double k) {
  auto n = std::make_shared<BNode>();
  n->op = BOp::Pow;
  n->a = std::move(a);
  n->exponent = k;
  return n;
}

BExpr bridge(const MExpr& e) {
  switch (e->op) {
    case MOp::Literal: return b_const(e->literal.log());
    case MOp::Var: return b_var();
    case MOp::Neg: return b_unary(BOp::Neg, bridge(e->lhs));
    case MOp::Abs: return b_unary(BOp::Abs, bridge(e->lhs));
    case MOp::Sqrt: return b_unary(BOp::Sqrt, bridge(e->lhs));
    case MOp::Sin: return b_unary(BOp::Sin, bridge(e->lhs));
    case MOp::Cos: return b_unary(BOp::Cos, bridge(e->lhs));
    case MOp::Tan: return b_unary(BOp::Tan, bridge(e->lhs));
    case MOp::Cot: return b_unary(BOp::Cot, bridge(e->lhs));
    case MOp::Add: return b_binary(BOp::Add, bridge(e->lhs), bridge(e->rhs));
    case MOp::Sub: return b_binary(BOp::Sub, bridge(e->lhs), bridge(e->rhs));
    case MOp::Mul: return b_binary(BOp::Mul, bridge(e->lhs), bridge(e->rhs));
    case MOp::Div: return b_binary(BOp::Div, bridge(e->lhs), bridge(e->rhs));
    case MOp::Pow: return b_pow(bridge(e->lhs), e->exponent);
  }
  throw DomainError("bridge: corrupt expression");
}

namespace {

bool is_const(const BExpr& e, double v) { return e->op == BOp::Const && e->value == v; }
bool is_const(const BExpr& e) { return e->op == BOp::Const; }

BExpr folded(double v, const BExpr& fallback) { return std::isfinite(v) ? b_const(v) : fallback; }

BExpr f_add(const BExpr& a, const BExpr& b) {
  if (is_const(a, 0.0)) return b;
  if (is_const(b, 0.0)) return a;
  const BExpr raw = b_binary(BOp::Add, a, b);
  return is_const(a) && is_const(b) ? folded(a->value + b->value, raw) : raw;
}

BExpr f_neg(const BExpr& a) {
  if (is_const(a)) return b_const(-a->value);
  if (a->op == BOp::Neg) return a->a;
  return b_unary(BOp::Neg, a);
}

BExpr f_sub(const BExpr& a, const BExpr& b) {
  if (is_const(b, 0.0)) return a;
  if (is_const(a, 0.0)) return f_neg(b);
  const BExpr raw = b_binary(BOp::Sub, a, b);
  return is_const(a) && is_const(b) ? folded(a->value - b->value, raw) : raw;
}

BExpr f_mul(const BExpr& a, const BExpr& b) {
  if (is_const(a, 0.0) || is_const(b, 0.0)) return b_const(0.0);
  if (is_const(a, 1.0)) return b;
  if (is_const(b, 1.0)) return a;
  const BExpr raw = b_binary(BOp::Mul, a, b);
  return is_const(a) && is_const(b) ? folded(a->value * b->value, raw) : raw;
}

BExpr f_div(const BExpr& a, const BExpr& b) {
  if (is_const(b, 1.0)) return a;
  if (is_const(a, 0.0) && !is_const(b, 0.0)) return b_const(0.0);
  const BExpr raw = b_binary(BOp::Div, a, b);
  return is_const(a) && is_const(b) ? folded(a->value / b->value, raw) : raw;
}

BExpr f_pow(const BExpr& a, double k) {
  if (k == 0.0) return b_const(1.0);
  if (k == 1.0) return a;
  const BExpr raw = b_pow(a, k);
  return is_const(a) ? folded(std::pow(a->value, k), raw) : raw;
}

[[noreturn]] void eval_error(const std::string& what, double u) {
  throw DomainError(what + " at U = " + format_real(u));
}

}  // namespace

BExpr differentiate(const BExpr& e) {
  const BExpr& a = e->a;
  switch (e->op) {
    case BOp::Const: return b_const(0.0);
    case BOp::Var: return b_const(1.0);
    case BOp::Add: return f_add(differentiate(a), differentiate(e->b));
    case BOp::Sub: return f_sub(differentiate(a), differentiate(e->b));
    case BOp::Mul: return f_add(f_mul(differentiate(a), e->b), f_mul(a, differentiate(e->b)));
    case BOp::Div:
      return f_div(f_sub(f_mul(differentiate(a), e->b), f_mul(a, differentiate(e->b))), f_pow(e->b, 2.0));
    case BOp::Neg: return f_neg(differentiate(a));
    case BOp::Pow: return f_mul(f_mul(b_const(e->exponent), f_pow(a, e->exponent - 1.0)), differentiate(a));
    case BOp::Sin: return f_mul(b_unary(BOp::Cos, a), differentiate(a));
    case BOp::Cos: return f_neg(f_mul(b_unary(BOp::Sin, a), differentiate(a)));
    case BOp::Tan: return f_div(differentiate(a), f_pow(b_unary(BOp::Cos, a), 2.0));
    case BOp::Cot: return f_neg(f_div(differentiate(a), f_pow(b_unary(BOp::Sin, a), 2.0)));
    case BOp::Abs: return f_mul(b_unary(BOp::Sign, a), differentiate(a));
    case BOp::Sqrt: return f_div(differentiate(a), f_mul(b_const(2.0), e));
    case BOp::Exp: return f_mul(e, differentiate(a));
    case BOp::Log: return f_div(differentiate(a), a);
    case BOp::Sign: return b_const(0.0);
  }
  throw DomainError("differentiate: corrupt expression");
}

BExpr bridge_diff(const MExpr& e, int order) {
  if (order < 0) throw DomainError("bridge_diff: negative order");
  BExpr b = bridge(e);
  for (int k = 0; k < order; ++k) b = differentiate(b);
  return b;
}

double evaluate(const BExpr& e, double u) {
  double r = 0.0;
  switch (e->op) {
    case BOp::Const: return e->value;
    case BOp::Var: return u;
    case BOp::Add: r = evaluate(e->a, u) + evaluate(e->b, u); break;
    case BOp::Sub: r = evaluate(e->a, u) - evaluate(e->b, u); break;
    case BOp::Mul: r = evaluate(e->a, u) * evaluate(e->b, u); break;
    case BOp::Div: {
      const double d = evaluate(e->b, u);
      if (d == 0.0) throw DivisionByZeroError("division by zero at U = " + format_real(u));
      r = evaluate(e->a, u) / d;
      break;
    }
    case BOp::Neg: return -evaluate(e->a, u);
    case BOp::Pow: {
      const double x = evaluate(e->a, u);
      if (x < 0.0 && std::floor(e->exponent) != e->exponent) eval_error("non-integer power of a negative value", u);
      if (x == 0.0 && e->exponent < 0.0) throw DivisionByZeroError("negative power of zero at U = " + format_real(u));
      r = std::pow(x, e->exponent);
      break;
    }
    case BOp::Sin: return std::sin(evaluate(e->a, u));
    case BOp::Cos: return std::cos(evaluate(e->a, u));
    case BOp::Tan: r = std::tan(evaluate(e->a, u)); break;
    case BOp::Cot: {
      const double x = evaluate(e->a, u);
      if (std::abs(std::sin(x)) < 1e-14) eval_error("cot pole", u);
      r = std::cos(x) / std::sin(x);
      break;
    }
    case BOp::Abs: return std::abs(evaluate(e->a, u));
    case BOp::Sqrt: {
      const double x = evaluate(e->a, u);
      if (x < 0.0) eval_error("square root of a negative value", u);
      return std::sqrt(x);
    }
    case BOp::Exp: r = std::exp(evaluate(e->a, u)); break;
    case BOp::Log: {
      const double x = evaluate(e->a, u);
      if (!(x > 0.0)) eval_error("log of a non-positive value", u);
      return std::log(x);
    }
    case BOp::Sign: {
      const double x = evaluate(e->a, u);
      if (x == 0.0) throw NonDifferentiableError("|x| is not differentiable at U = " + format_real(u));
      return x > 0.0 ? 1.0 : -1.0;
    }
  }
  if (!std::isfinite(r)) eval_error("non-finite value", u);
  return r;
}

Series evaluate(const BExpr& e, const Series& u) {
  switch (e->op) {
    case BOp::Const: return Series::constant(e->value, u.order());
    case BOp::Var: return u;
    case BOp::Add: return evaluate(e->a, u) + evaluate(e->b, u);
    case BOp::Sub: return evaluate(e->a, u) - evaluate(e->b, u);
    case BOp::Mul: return evaluate(e->a, u) * evaluate(e->b, u);
    case BOp::Div: return evaluate(e->a, u) / evaluate(e->b, u);
    case BOp::Neg: return -evaluate(e->a, u);
    case BOp::Pow: return pow(evaluate(e->a, u), e->exponent);
    case BOp::Sin: return sin(evaluate(e->a, u));
    case BOp::Cos: return cos(evaluate(e->a, u));
    case BOp::Tan: return tan(evaluate(e->a, u));
    case BOp::Cot: return cot(evaluate(e->a, u));
    case BOp::Abs: return abs(evaluate(e->a, u));
    case BOp::Sqrt: return sqrt(evaluate(e->a, u));
    case BOp::Exp: return exp(evaluate(e->a, u));
    case BOp::Log: return log(evaluate(e->a, u));
    case BOp::Sign: {
      const Series x = evaluate(e->a, u);
      if (x.value() == 0.0) {
        throw NonDifferentiableError("|x| is not differentiable at U = " + format_real(u.value()));
      }
      return Series::constant(x.value() > 0.0 ? 1.0 : -1.0, x.order());
    }
  }
  throw DomainError("evaluate: corrupt expression");
}

namespace {

int b_prec(const BExpr& e) {
  switch (e->op) {
    case BOp::Add:
    case BOp::Sub: return 1;
    case BOp::Mul:
    case BOp::Div: return 2;
    case BOp::Neg: return 3;
    case BOp::Pow: return 4;
    case BOp::Const: return e->value < 0.0 ? 3 : 5;
    default: return 5;
  }
}

std::string_view b_func(BOp op) {
  switch (op) {
    case BOp::Sin: return "sin";
    case BOp::Cos: return "cos";
    case BOp::Tan: return "tan";
    case BOp::Cot: return "cot";
    case BOp::Abs: return "abs";
    case BOp::Sqrt: return "sqrt";
    case BOp::Exp: return "exp";
    case BOp::Log: return "log";
    case BOp::Sign: return "sign";
    default: return "?";
  }
}

}  // namespace

std::string render_classical(const BExpr& e) {
  switch (e->op) {
    case BOp::Const: return format_real(e->value);
    case BOp::Var: return "u";
    case BOp::Neg: return "-" + wrap(render_classical(e->a), b_prec(e->a) <= 3);
    case BOp::Pow: return wrap(render_classical(e->a), b_prec(e->a) < 5) + "^" + format_real(e->exponent);
    case BOp::Add:
    case BOp::Sub:
    case BOp::Mul:
    case BOp::Div: {
      const int p = b_prec(e);
      const char* op = e->op == BOp::Add ? " + " : e->op == BOp::Sub ? " - " : e->op == BOp::Mul ? " * " : " / ";
      return wrap(render_classical(e->a), b_prec(e->a) < p) + op + wrap(render_classical(e->b), b_prec(e->b) <= p);
    }
    default: return std::string(b_func(e->op)) + "(" + render_classical(e->a) + ")";
  }
}

namespace {

class BParser {
 public:
  explicit BParser(std::string_view src) : in_(src) {}

  BExpr parse() {
    BExpr e = expr();
    if (!in_.at_end()) {
      throw ParseError("unexpected input at offset " + std::to_string(in_.pos()), in_.pos(),
                       {"+", "-", "*", "/", "^", "end of input"});
    }
    return e;
  }

 private:
  BExpr expr() {
    BExpr lhs = term();
    for (;;) {
      in_.skip_ws();
      if (in_.peek() == '+') {
        in_.advance(1);
        lhs = b_binary(BOp::Add, lhs, term());
      } else if (in_.peek() == '-') {
        in_.advance(1);
        lhs = b_binary(BOp::Sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  BExpr term() {
    BExpr lhs = unary();
    for (;;) {
      in_.skip_ws();
      if (in_.peek() == '*') {
        in_.advance(1);
        lhs = b_binary(BOp::Mul, lhs, unary());
      } else if (in_.peek() == '/') {
        in_.advance(1);
        lhs = b_binary(BOp::Div, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  BExpr unary() {
    in_.skip_ws();
    if (in_.peek() == '-') {
      in_.advance(1);
      return b_unary(BOp::Neg, unary());
    }
    if (in_.peek() == '+') {
      in_.advance(1);
      return unary();
    }
    BExpr a = atom();
    in_.skip_ws();
    if (in_.peek() == '^') {
      in_.advance(1);
      return b_pow(a, in_.real(true));
    }
    return a;
  }

  void expect(char c) {
    in_.skip_ws();
    if (in_.peek() != c) {
      throw ParseError("expected '" + std::string(1, c) + "' at offset " + std::to_string(in_.pos()), in_.pos(),
                       {std::string(1, c)});
    }
    in_.advance(1);
  }

  BExpr atom() {
    static const std::vector<std::string> expected{"(", "number", "u", "pi", "sin", "cos", "tan", "cot",
                                                   "sqrt", "abs", "exp", "log"};
    in_.skip_ws();
    const std::size_t start = in_.pos();
    const char c = in_.peek();
    if (c == '(') {
      in_.advance(1);
      BExpr e = expr();
      expect(')');
      return e;
    }
    if (is_digit(c) || (c == '.' && is_digit(in_.peek(1)))) return b_const(in_.real(false));
    if (is_ident_start(c)) {
      const std::string_view id = in_.identifier();
      if (id == "u") return b_var();
      if (id == "pi") return b_const(std::numbers::pi);
      static constexpr std::array<std::pair<std::string_view, BOp>, 8> funcs{{{"sin", BOp::Sin},
                                                                              {"cos", BOp::Cos},
                                                                              {"tan", BOp::Tan},
                                                                              {"cot", BOp::Cot},
                                                                              {"sqrt", BOp::Sqrt},
                                                                              {"abs", BOp::Abs},
                                                                              {"exp", BOp::Exp},
                                                                              {"log", BOp::Log}}};
      for (const auto& [name, op] : funcs) {
        if (id == name) {
          expect('(');
          BExpr arg = expr();
          expect(')');
          return b_unary(op, arg);
        }
      }
      throw UnknownIdentifierError("unknown identifier '" + std::string(id) + "' at offset " +
                                       std::to_string(start),
                                   start, expected);
    }
    throw ParseError(c == '\0' ? "unexpected end of input at offset " + std::to_string(start)
                               : "unexpected '" + std::string(1, c) + "' at offset " + std::to_string(start),
                     start, expected);
  }

  Cursor in_;
};

}  // namespace

BExpr parse_classical(std::string_view text) { return BParser(text).parse(); }

ScalarMapJet scalar_from_bridge(BExpr b) {
  return ScalarMapJet::from_bridge(
      [b = std::move(b)](double u, int order) { return evaluate(b, Series::variable(u, order)); });
}

ScalarMapJet scalar_from_mexpr(const MExpr& e) { return scalar_from_bridge(bridge(e)); }

// --------------------------------------------------------- curve specs

ComponentSpec make_component(std::string text, bool log_form) {
  ComponentSpec c;
  c.bridge = log_form ? parse_classical(text) : bridge(parse_mexpr(text));
  c.text = std::move(text);
  c.log_form = log_form;
  return c;
}

namespace {

bool parse_form(const nlohmann::json& j) {
  if (!j.is_string()) throw ParseError("curve spec: form must be \"mult\" or \"log\"", 0, {"mult", "log"});
  const auto s = j.get<std::string>();
  if (s == "mult") return false;
  if (s == "log") return true;
  throw ParseError("curve spec: unknown form '" + s + "'", 0, {"mult", "log"});
}

MNum parse_bound(const nlohmann::json& j) {
  if (j.is_number()) {
    const double v = j.get<double>();
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("curve spec: range ends must be positive");
    return MNum::from_value(v);
  }
  if (j.is_string()) return parse_mnum(j.get<std::string>());
  throw ParseError("curve spec: range ends must be numbers or MNum literals", 0, {"number", "e^<real>"});
}

}  // namespace

ParamRange parse_range(const nlohmann::json& r) {
  if (!r.is_array() || r.size() != 2) throw DimensionError("curve spec: range must be [s_min, s_max]");
  return make_range(parse_bound(r[0]), parse_bound(r[1]));
}

CurveSpec parse_curve_spec(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("components")) {
    throw ParseError("curve spec: missing 'components'", 0, {"components"});
  }
  const auto& comps = doc.at("components");
  if (!comps.is_array() || comps.size() != 3) {
    throw DimensionError("curve spec: exactly 3 components are required");
  }
  std::array<bool, 3> forms{false, false, false};
  if (doc.contains("form")) {
    const auto& f = doc.at("form");
    if (f.is_array()) {
      if (f.size() != 3) throw DimensionError("curve spec: form array needs 3 entries");
      for (std::size_t i = 0; i < 3; ++i) forms[i] = parse_form(f[i]);
    } else {
      const bool all = parse_form(f);
      forms = {all, all, all};
    }
  }
  CurveSpec spec;
  for (std::size_t i = 0; i < 3; ++i) {
    if (!comps[i].is_string()) throw ParseError("curve spec: components must be strings", 0, {"string"});
    spec.components[i] = make_component(comps[i].get<std::string>(), forms[i]);
  }
  if (doc.contains("range")) spec.range = parse_range(doc.at("range"));
  return spec;
}

CurveSpec load_curve_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open curve spec '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("curve spec '" + path + "' is not valid JSON: " + e.what(), e.byte);
  }
  return parse_curve_spec(doc);
}

nlohmann::json to_json(const CurveSpec& spec) {
  nlohmann::json j;
  j["components"] = nlohmann::json::array();
  j["form"] = nlohmann::json::array();
  for (const auto& c : spec.components) {
    j["components"].push_back(c.text);
    j["form"].push_back(c.log_form ? "log" : "mult");
  }
  if (spec.range) j["range"] = {render(spec.range->lo, Style::Log), render(spec.range->hi, Style::Log)};
  return j;
}

CurveJet curve_from_spec(const CurveSpec& spec, std::optional<ParamRange> range) {
  const ParamRange domain = range ? *range : spec.range ? *spec.range : default_range();
  std::array<BExpr, 3> b{spec.components[0].bridge, spec.components[1].bridge, spec.components[2].bridge};
  std::string label = "dsl(";
  for (std::size_t i = 0; i < 3; ++i) label += (i ? "; " : "") + spec.components[i].text;
  label += ")";
  return CurveJet(
      [b](double u, int order) {
        const Series x = Series::variable(u, order);
        return SeriesVec3{evaluate(b[0], x), evaluate(b[1], x), evaluate(b[2], x)};
      },
      domain, Provenance::Dsl, label);
}

}  // namespace mulgeo
