// Copyright 2026 The crroots Authors
// SPDX-License-Identifier: Apache-2.0

#include "crroots/analytic.hpp"

#include <limits>

#include "crroots/errors.hpp"

namespace crroots {

void SquareDomain::Validate() const {
  if (!IsFinite(center)) throw GeometryError("square center must be finite");
  if (!(half_side > 0.0) || !std::isfinite(half_side))
    throw GeometryError("square half-side must be positive and finite");
}

Complex FinishExtended(XComplex v) {
  const Complex r(static_cast<double>(v.real()), static_cast<double>(v.imag()));
  if (IsFinite(r)) return r;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  return {nan, nan};
}

bool SquareDomain::ContainsExtended(Complex z, double delta) const {
  const Complex t = ToLocal(z);
  return std::abs(t.real()) < 1.0 + delta && std::abs(t.imag()) < 1.0 + delta;
}

}  // namespace crroots
