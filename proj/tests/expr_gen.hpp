#pragma once

// Random multiplicative expression trees.

#include "gen.hpp"
#include "mulgeo/mexpr.hpp"

namespace testgen {

using namespace mulgeo;

inline MExpr random_mexpr(testgen::Gen& g, int depth) {
  if (depth == 0 || g.integer(0, 4) == 0) {
    return g.coin() ? m_var() : m_literal(g.mnum(-2.0, 2.0));
  }
  static constexpr MOp kUnary[] = {MOp::Neg, MOp::Abs, MOp::Sqrt, MOp::Sin, MOp::Cos, MOp::Tan, MOp::Cot};
  static constexpr MOp kBinary[] = {MOp::Add, MOp::Sub, MOp::Mul, MOp::Div};
  static constexpr double kExponents[] = {2.0, 3.0, 0.5, -1.0, 1.5};
  const int pick = g.integer(0, 11);
  if (pick < 7) return m_unary(kUnary[pick], random_mexpr(g, depth - 1));
  if (pick < 11) return m_binary(kBinary[pick - 7], random_mexpr(g, depth - 1), random_mexpr(g, depth - 1));
  return m_pow(random_mexpr(g, depth - 1), kExponents[g.integer(0, 4)]);
}

}  // namespace testgen
