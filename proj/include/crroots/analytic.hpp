// Copyright 2026 The crroots Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CRROOTS_ANALYTIC_HPP_
#define CRROOTS_ANALYTIC_HPP_

#include <cmath>
#include <complex>
#include <functional>
#include <string>
#include <utility>

#include "crroots/complex_core.hpp"

namespace crroots {

struct FnValue {
  Complex value;
  Complex deriv;
};

// z -> (f(z), f'(z)). Poles and overflow surface as non-finite values; the
// evaluator itself never throws for those.
//
// The optional local evaluator returns f(center + half_side * t) and may
// form that point in extended precision. Samples on tiny squares far from
// the origin otherwise carry a relative error of about u |center| /
// half_side in their position.
class AnalyticFn {
 public:
  using Evaluator = std::function<FnValue(Complex)>;
  using LocalEvaluator =
      std::function<Complex(Complex center, double half_side, Complex t)>;

  AnalyticFn() = default;
  AnalyticFn(std::string name, Evaluator eval, LocalEvaluator local = {})
      : name_(std::move(name)), eval_(std::move(eval)), local_(std::move(local)) {}

  FnValue operator()(Complex z) const { return eval_(z); }
  Complex EvalLocal(Complex center, double half_side, Complex t) const {
    if (local_) return local_(center, half_side, t);
    return eval_(half_side * t + center).value;
  }
  const std::string& name() const { return name_; }
  bool has_local() const { return static_cast<bool>(local_); }
  explicit operator bool() const { return static_cast<bool>(eval_); }

 private:
  std::string name_;
  Evaluator eval_;
  LocalEvaluator local_;
};

using XComplex = std::complex<long double>;

inline XComplex LocalPoint(Complex center, double half_side, Complex t) {
  return XComplex(center.real(), center.imag()) +
         static_cast<long double>(half_side) * XComplex(t.real(), t.imag());
}

// Rounds to double; anything non-finite there becomes NaN.
Complex FinishExtended(XComplex v);

// Square with center z0 and half-side l, i.e. side length 2l.
struct SquareDomain {
  Complex center{0.0, 0.0};
  double half_side = 1.0;

  // Throws GeometryError unless l > 0 and everything is finite.
  void Validate() const;
  Complex ToLocal(Complex z) const { return (z - center) / half_side; }
  Complex FromLocal(Complex t) const { return half_side * t + center; }
  bool ContainsExtended(Complex z, double delta) const;
};

inline bool IsFinite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace crroots

#endif  // CRROOTS_ANALYTIC_HPP_
