// Copyright 2026 The crroots Authors
// SPDX-License-Identifier: Apache-2.0

#include "crroots/expr.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "crroots/errors.hpp"

namespace crroots {

namespace {

constexpr std::array<std::string_view, 9> kFunctions = {
    "sin", "cos", "tan", "sinh", "cosh", "tanh", "exp", "log", "sqrt"};

bool IsFunction(std::string_view name) {
  for (auto f : kFunctions)
    if (f == name) return true;
  return false;
}

bool IsConstant(std::string_view name) {
  return name == "i" || name == "pi" || name == "e";
}

Complex ConstantValue(const std::string& name) {
  if (name == "i") return {0.0, 1.0};
  if (name == "pi") return std::numbers::pi;
  return std::numbers::e;
}

ExprPtr Make(Expr::Kind kind, ExprPtr lhs = nullptr, ExprPtr rhs = nullptr) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->lhs = std::move(lhs);
  e->rhs = std::move(rhs);
  return e;
}

bool ContainsVariable(const Expr& e) {
  if (e.kind == Expr::Kind::kVariable) return true;
  return (e.lhs && ContainsVariable(*e.lhs)) || (e.rhs && ContainsVariable(*e.rhs));
}

bool IsIdentStart(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
bool IsIdentChar(char c) { return IsIdentStart(c) || (c >= '0' && c <= '9'); }
bool IsDigit(char c) { return c >= '0' && c <= '9'; }

const std::vector<std::string> kOperandStart = {"number", "identifier", "(",
                                                "-", "+"};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ExprPtr Parse() {
    ExprPtr e = ParseSum();
    SkipSpace();
    if (pos_ < text_.size())
      Fail("unexpected '" + std::string(1, text_[pos_]) + "'",
           {"+", "-", "*", "/", "^", ")", "end of input"});
    return e;
  }

 private:
  [[noreturn]] void Fail(const std::string& message,
                         std::vector<std::string> expected) {
    throw ParseError(pos_, message, std::move(expected));
  }

  void SkipSpace() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
            text_[pos_] == '\r'))
      ++pos_;
  }

  bool Accept(char c) {
    SkipSpace();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  ExprPtr ParseSum() {
    ExprPtr lhs = ParseProduct();
    for (;;) {
      if (Accept('+'))
        lhs = Make(Expr::Kind::kAdd, lhs, ParseProduct());
      else if (Accept('-'))
        lhs = Make(Expr::Kind::kSub, lhs, ParseProduct());
      else
        return lhs;
    }
  }

  ExprPtr ParseProduct() {
    ExprPtr lhs = ParseUnary();
    for (;;) {
      if (Accept('*'))
        lhs = Make(Expr::Kind::kMul, lhs, ParseUnary());
      else if (Accept('/'))
        lhs = Make(Expr::Kind::kDiv, lhs, ParseUnary());
      else
        return lhs;
    }
  }

  ExprPtr ParseUnary() {
    if (Accept('-')) return Make(Expr::Kind::kNeg, ParseUnary());
    if (Accept('+')) return ParseUnary();
    return ParsePower();
  }

  ExprPtr ParsePower() {
    ExprPtr base = ParsePrimary();
    SkipSpace();
    const std::size_t at = pos_;
    if (!Accept('^')) return base;
    ExprPtr exponent = ParseUnary();
    if (!ContainsVariable(*exponent)) {
      Complex v;
      try {
        v = EvalDual(*exponent, 0.0).value;
      } catch (const EvaluationError&) {
        pos_ = at;
        Fail("exponent is not finite", {});
      }
      if (v.imag() == 0.0 && std::abs(v.real()) <= 1e6 &&
          v.real() == std::nearbyint(v.real())) {
        auto e = std::make_shared<Expr>();
        e->kind = Expr::Kind::kPowInt;
        e->lhs = base;
        e->exponent = static_cast<long>(v.real());
        return e;
      }
    }
    // General powers: a^b = exp(b * log(a)) on the principal branch.
    auto log = Make(Expr::Kind::kCall, base);
    std::const_pointer_cast<Expr>(log)->name = "log";
    auto call = Make(Expr::Kind::kCall, Make(Expr::Kind::kMul, exponent, log));
    std::const_pointer_cast<Expr>(call)->name = "exp";
    return call;
  }

  ExprPtr ParsePrimary() {
    SkipSpace();
    if (pos_ >= text_.size()) Fail("unexpected end of input", kOperandStart);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      ExprPtr inner = ParseSum();
      if (!Accept(')'))
        Fail(pos_ < text_.size() ? "expected ')'" : "unexpected end of input",
             {")", "+", "-", "*", "/", "^"});
      return inner;
    }
    if (IsDigit(c) || (c == '.' && pos_ + 1 < text_.size() && IsDigit(text_[pos_ + 1])))
      return ParseNumber();
    if (IsIdentStart(c)) return ParseIdentifier();
    Fail("unexpected '" + std::string(1, c) + "'", kOperandStart);
  }

  ExprPtr ParseNumber() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && IsDigit(text_[pos_])) ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (pos_ < text_.size() && IsDigit(text_[pos_])) ++pos_;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
      if (p < text_.size() && IsDigit(text_[p])) {
        pos_ = p;
        while (pos_ < text_.size() && IsDigit(text_[pos_])) ++pos_;
      }
    }
    double value = 0.0;
    const auto res = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (res.ec != std::errc() || res.ptr != text_.data() + pos_ || !std::isfinite(value)) {
      pos_ = start;
      Fail("malformed number", {"number"});
    }
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::kNumber;
    // A trailing 'i' directly after the digits makes the literal imaginary.
    if (pos_ < text_.size() && text_[pos_] == 'i' &&
        !(pos_ + 1 < text_.size() && IsIdentChar(text_[pos_ + 1]))) {
      ++pos_;
      e->number = Complex(0.0, value);
    } else {
      e->number = Complex(value, 0.0);
    }
    if (pos_ < text_.size() && IsIdentChar(text_[pos_]))
      Fail("implicit multiplication is not supported", {"*"});
    return e;
  }

  ExprPtr ParseIdentifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && IsIdentChar(text_[pos_])) ++pos_;
    const std::string name(text_.substr(start, pos_ - start));
    if (name == "z") return Make(Expr::Kind::kVariable);
    if (IsConstant(name)) {
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::kConstant;
      e->name = name;
      return e;
    }
    if (IsFunction(name)) {
      if (!Accept('(')) Fail("expected '(' after " + name, {"("});
      ExprPtr arg = ParseSum();
      if (!Accept(')'))
        Fail(pos_ < text_.size() ? "expected ')'" : "unexpected end of input",
             {")", "+", "-", "*", "/", "^"});
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::kCall;
      e->name = name;
      e->lhs = arg;
      return e;
    }
    pos_ = start;
    std::vector<std::string> expected = {"z", "i", "pi", "e"};
    for (auto f : kFunctions) expected.emplace_back(f);
    Fail("unknown identifier '" + name + "'", expected);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

int Precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::kAdd:
    case Expr::Kind::kSub:
      return 1;
    case Expr::Kind::kMul:
    case Expr::Kind::kDiv:
      return 2;
    case Expr::Kind::kNeg:
      return 3;
    case Expr::Kind::kPowInt:
      return 4;
    case Expr::Kind::kNumber:
      return (e.number.real() != 0.0 && e.number.imag() != 0.0) ? 0 : 5;
    default:
      return 5;
  }
}

std::string FormatDouble(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string FormatNumber(Complex c) {
  if (c.imag() == 0.0) return FormatDouble(c.real());
  if (c.real() == 0.0) return FormatDouble(c.imag()) + "i";
  return FormatDouble(c.real()) + " + " + FormatDouble(c.imag()) + "i";
}

std::string Print(const Expr& e, int context) {
  std::string s;
  switch (e.kind) {
    case Expr::Kind::kNumber:
      s = FormatNumber(e.number);
      break;
    case Expr::Kind::kVariable:
      s = "z";
      break;
    case Expr::Kind::kConstant:
      s = e.name;
      break;
    case Expr::Kind::kNeg:
      s = "-" + Print(*e.lhs, 3);
      break;
    case Expr::Kind::kAdd:
      s = Print(*e.lhs, 1) + " + " + Print(*e.rhs, 2);
      break;
    case Expr::Kind::kSub:
      s = Print(*e.lhs, 1) + " - " + Print(*e.rhs, 2);
      break;
    case Expr::Kind::kMul:
      s = Print(*e.lhs, 2) + "*" + Print(*e.rhs, 3);
      break;
    case Expr::Kind::kDiv:
      s = Print(*e.lhs, 2) + "/" + Print(*e.rhs, 3);
      break;
    case Expr::Kind::kPowInt:
      s = Print(*e.lhs, 5) + "^" + std::to_string(e.exponent);
      break;
    case Expr::Kind::kCall:
      s = e.name + "(" + Print(*e.lhs, 0) + ")";
      break;
  }
  if (Precedence(e) < context) return "(" + s + ")";
  return s;
}

Dual Check(Dual d, Complex z) {
  if (!IsFinite(d.value) || !IsFinite(d.deriv)) throw EvaluationError(z);
  return d;
}

}  // namespace

ExprPtr ParseExpression(std::string_view text) {
  if (text.size() > kMaxExpressionBytes)
    throw ParseError(kMaxExpressionBytes, "expression longer than 64 KiB", {});
  return Parser(text).Parse();
}

std::string PrettyPrint(const Expr& e) { return Print(e, 0); }

bool StructurallyEqual(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::kNumber:
      return a.number == b.number;
    case Expr::Kind::kVariable:
      return true;
    case Expr::Kind::kConstant:
      return a.name == b.name;
    case Expr::Kind::kPowInt:
      return a.exponent == b.exponent && StructurallyEqual(*a.lhs, *b.lhs);
    case Expr::Kind::kCall:
      return a.name == b.name && StructurallyEqual(*a.lhs, *b.lhs);
    case Expr::Kind::kNeg:
      return StructurallyEqual(*a.lhs, *b.lhs);
    default:
      return StructurallyEqual(*a.lhs, *b.lhs) && StructurallyEqual(*a.rhs, *b.rhs);
  }
}

Dual EvalDual(const Expr& e, Complex z) {
  switch (e.kind) {
    case Expr::Kind::kNumber:
      return Dual::Constant(e.number);
    case Expr::Kind::kVariable:
      return Check(Dual::Variable(z), z);
    case Expr::Kind::kConstant:
      return Dual::Constant(ConstantValue(e.name));
    case Expr::Kind::kNeg:
      return -EvalDual(*e.lhs, z);
    case Expr::Kind::kAdd:
      return Check(EvalDual(*e.lhs, z) + EvalDual(*e.rhs, z), z);
    case Expr::Kind::kSub:
      return Check(EvalDual(*e.lhs, z) - EvalDual(*e.rhs, z), z);
    case Expr::Kind::kMul:
      return Check(EvalDual(*e.lhs, z) * EvalDual(*e.rhs, z), z);
    case Expr::Kind::kDiv:
      return Check(EvalDual(*e.lhs, z) / EvalDual(*e.rhs, z), z);
    case Expr::Kind::kPowInt:
      return Check(powi(EvalDual(*e.lhs, z), e.exponent), z);
    case Expr::Kind::kCall: {
      const Dual a = EvalDual(*e.lhs, z);
      const std::string& f = e.name;
      Dual r;
      if (f == "sin") r = sin(a);
      else if (f == "cos") r = cos(a);
      else if (f == "tan") r = tan(a);
      else if (f == "sinh") r = sinh(a);
      else if (f == "cosh") r = cosh(a);
      else if (f == "tanh") r = tanh(a);
      else if (f == "exp") r = exp(a);
      else if (f == "log") r = log(a);
      else r = sqrt(a);
      return Check(r, z);
    }
  }
  throw InvalidArgument("corrupt expression tree");
}

XComplex EvalExtended(const Expr& e, XComplex z) {
  const auto finite = [](XComplex v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  };
  XComplex r;
  switch (e.kind) {
    case Expr::Kind::kNumber:
      return XComplex(e.number.real(), e.number.imag());
    case Expr::Kind::kVariable:
      return z;
    case Expr::Kind::kConstant:
      if (e.name == "i") return XComplex(0.0L, 1.0L);
      if (e.name == "pi") return std::numbers::pi_v<long double>;
      return std::numbers::e_v<long double>;
    case Expr::Kind::kNeg:
      return -EvalExtended(*e.lhs, z);
    case Expr::Kind::kAdd:
      r = EvalExtended(*e.lhs, z) + EvalExtended(*e.rhs, z);
      break;
    case Expr::Kind::kSub:
      r = EvalExtended(*e.lhs, z) - EvalExtended(*e.rhs, z);
      break;
    case Expr::Kind::kMul:
      r = EvalExtended(*e.lhs, z) * EvalExtended(*e.rhs, z);
      break;
    case Expr::Kind::kDiv:
      r = EvalExtended(*e.lhs, z) / EvalExtended(*e.rhs, z);
      break;
    case Expr::Kind::kPowInt: {
      XComplex base = EvalExtended(*e.lhs, z);
      unsigned long k = e.exponent < 0 ? -static_cast<unsigned long>(e.exponent)
                                       : static_cast<unsigned long>(e.exponent);
      r = 1.0L;
      for (; k != 0; k >>= 1) {
        if (k & 1) r *= base;
        base *= base;
      }
      if (e.exponent < 0) r = 1.0L / r;
      break;
    }
    case Expr::Kind::kCall: {
      const XComplex a = EvalExtended(*e.lhs, z);
      const std::string& f = e.name;
      if (f == "sin") r = std::sin(a);
      else if (f == "cos") r = std::cos(a);
      else if (f == "tan") r = std::tan(a);
      else if (f == "sinh") r = std::sinh(a);
      else if (f == "cosh") r = std::cosh(a);
      else if (f == "tanh") r = std::tanh(a);
      else if (f == "exp") r = std::exp(a);
      else if (f == "log") r = std::log(a);
      else r = std::sqrt(a);
      break;
    }
  }
  if (!finite(r)) {
    const long double nan = std::numeric_limits<long double>::quiet_NaN();
    return {nan, nan};
  }
  return r;
}

AnalyticFn MakeAnalyticFn(ExprPtr e, std::string name) {
  auto eval = [e](Complex z) -> FnValue {
    try {
      const Dual d = EvalDual(*e, z);
      return {d.value, d.deriv};
    } catch (const EvaluationError&) {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      return {Complex(nan, nan), Complex(nan, nan)};
    }
  };
  auto local = [e](Complex c, double l, Complex t) {
    return FinishExtended(EvalExtended(*e, LocalPoint(c, l, t)));
  };
  return AnalyticFn(std::move(name), std::move(eval), std::move(local));
}

}  // namespace crroots
