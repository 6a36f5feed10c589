// Copyright 2026 The crroots Authors
// SPDX-License-Identifier: Apache-2.0
//
// Unconjugated (bilinear) weighted inner products and the 2x2 complex
// orthogonal transforms used by the basis construction and the structured QR.
//
// Nothing in here conjugates. [u,v]_w = sum_j w_j u_j v_j, so [u]_w can be
// zero for nonzero u (e.g. u = (1, i) with unit weights).

#ifndef CRROOTS_COMPLEX_CORE_HPP_
#define CRROOTS_COMPLEX_CORE_HPP_

#include <complex>
#include <limits>
#include <utility>

#include <Eigen/Core>

namespace crroots {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
using RVector = Eigen::VectorXd;

// Unit roundoff of IEEE double.
inline constexpr double kUnitRoundoff =
    std::numeric_limits<double>::epsilon() / 2;

// Weights w_1..w_m of a bilinear inner product. Non-empty, all finite.
class BilinearWeights {
 public:
  explicit BilinearWeights(CVector w);
  static BilinearWeights FromReal(const RVector& w);

  Eigen::Index size() const { return w_.size(); }
  const CVector& values() const { return w_; }
  Complex operator[](Eigen::Index i) const { return w_[i]; }

 private:
  CVector w_;
};

// Returns sum_j w_j u_j v_j, accumulated left to right with no compensation.
// Throws DimensionError on length mismatch.
Complex InnerProduct(const CVector& u, const CVector& v,
                     const BilinearWeights& w);

// Principal square root of InnerProduct(u, u, w). Zero is a legal result.
Complex ComplexNorm(const CVector& u, const BilinearWeights& w);

// 2x2 complex orthogonal transform [[c, -s], [s, c]] with c^2 + s^2 = 1.
struct Rotation {
  Complex c{1.0, 0.0};
  Complex s{0.0, 0.0};

  static Rotation Identity() { return {}; }

  // sqrt(|c|^2 + |s|^2); equals 1 only for unitary rotations.
  double Size() const { return std::sqrt(std::norm(c) + std::norm(s)); }

  std::pair<Complex, Complex> Apply(Complex a, Complex b) const {
    return {c * a - s * b, s * a + c * b};
  }
};

// Builds the rotation that maps (x1, x2) to (0, sqrt(x1^2 + x2^2)).
// (0, 0) gives the identity. Throws IsotropicVector when
// |x1^2 + x2^2| <= u^2 (|x1|^2 + |x2|^2) for nonzero input.
Rotation MakeRotation(Complex x1, Complex x2);

inline std::pair<Complex, Complex> ApplyRotation(const Rotation& r, Complex a,
                                                 Complex b) {
  return r.Apply(a, b);
}

// Euclidean (conjugated) 2-norm, scaled so that it neither overflows nor
// underflows for entries near the limits of the double range.
double StableNorm(const CVector& v);

}  // namespace crroots

#endif  // CRROOTS_COMPLEX_CORE_HPP_
