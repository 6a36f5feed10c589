// Copyright 2026 The crroots Authors
// SPDX-License-Identifier: Apache-2.0

#include "crroots/complex_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "crroots/errors.hpp"

namespace crroots {

BilinearWeights::BilinearWeights(CVector w) : w_(std::move(w)) {
  if (w_.size() < 1) throw InvalidArgument("bilinear weights must be non-empty");
  for (Eigen::Index i = 0; i < w_.size(); ++i) {
    if (!std::isfinite(w_[i].real()) || !std::isfinite(w_[i].imag()))
      throw InvalidArgument("bilinear weight " + std::to_string(i) +
                            " is not finite");
  }
}

BilinearWeights BilinearWeights::FromReal(const RVector& w) {
  return BilinearWeights(w.cast<Complex>());
}

Complex InnerProduct(const CVector& u, const CVector& v,
                     const BilinearWeights& w) {
  if (u.size() != v.size() || u.size() != w.size())
    throw DimensionError("inner product: lengths " + std::to_string(u.size()) +
                         ", " + std::to_string(v.size()) + ", " +
                         std::to_string(w.size()) + " differ");
  Complex sum{0.0, 0.0};
  const CVector& wv = w.values();
  for (Eigen::Index j = 0; j < u.size(); ++j) sum += wv[j] * (u[j] * v[j]);
  return sum;
}

Complex ComplexNorm(const CVector& u, const BilinearWeights& w) {
  return std::sqrt(InnerProduct(u, u, w));
}

Rotation MakeRotation(Complex x1, Complex x2) {
  if (x1 == Complex{} && x2 == Complex{}) return Rotation::Identity();
  // Scale first so x^2 neither overflows nor underflows; the rotation is
  // invariant under scaling of x.
  const double scale = std::max({std::abs(x1.real()), std::abs(x1.imag()),
                                 std::abs(x2.real()), std::abs(x2.imag())});
  const Complex y1 = x1 / scale;
  const Complex y2 = x2 / scale;
  const Complex sum_sq = y1 * y1 + y2 * y2;
  const double mag_sq = std::norm(y1) + std::norm(y2);
  if (std::abs(sum_sq) <= kUnitRoundoff * kUnitRoundoff * mag_sq)
    throw IsotropicVector(x1, x2);
  const Complex r = std::sqrt(sum_sq);
  return Rotation{y2 / r, y1 / r};
}

double StableNorm(const CVector& v) {
  double scale = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    scale = std::max({scale, std::abs(v[i].real()), std::abs(v[i].imag())});
  if (scale == 0.0 || !std::isfinite(scale)) return scale;
  double sum = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) sum += std::norm(v[i] / scale);
  return scale * std::sqrt(sum);
}

}  // namespace crroots
