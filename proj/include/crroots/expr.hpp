// Copyright 2026 The crroots Authors
// SPDX-License-Identifier: Apache-2.0
//
// Expressions in one complex variable z: parsing, printing and evaluation
// with exact forward-mode derivatives. Grammar: docs/expression-grammar.md.

#ifndef CRROOTS_EXPR_HPP_
#define CRROOTS_EXPR_HPP_

#include <memory>
#include <string>
#include <string_view>

#include "crroots/analytic.hpp"
#include "crroots/dual.hpp"

namespace crroots {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind {
    kNumber,    // number
    kVariable,  // z
    kConstant,  // name in {i, pi, e}
    kNeg,       // -lhs
    kAdd,
    kSub,
    kMul,
    kDiv,
    kPowInt,    // lhs ^ exponent
    kCall,      // name(lhs)
  };

  Kind kind = Kind::kNumber;
  Complex number{0.0, 0.0};
  std::string name;
  long exponent = 0;
  ExprPtr lhs;
  ExprPtr rhs;
};

inline constexpr std::size_t kMaxExpressionBytes = 64 * 1024;

// Throws ParseError with the byte offset and the set of tokens that would
// have been accepted there.
ExprPtr ParseExpression(std::string_view text);

// Canonical text with minimal parentheses; parsing it back yields the same
// tree.
std::string PrettyPrint(const Expr& e);

bool StructurallyEqual(const Expr& a, const Expr& b);

// Throws EvaluationError(z) if any intermediate value is not finite.
Dual EvalDual(const Expr& e, Complex z);

// Value only, in extended precision; a non-finite intermediate yields NaN.
XComplex EvalExtended(const Expr& e, XComplex z);

// Evaluator wrapper; non-finite intermediates become NaN outputs instead of
// exceptions so callers can attribute them to a sample.
AnalyticFn MakeAnalyticFn(ExprPtr e, std::string name);

}  // namespace crroots

#endif  // CRROOTS_EXPR_HPP_
