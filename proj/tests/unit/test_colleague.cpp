// Copyright 2026 The crroots Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "crroots/colleague.hpp"
#include "crroots/errors.hpp"
#include "crroots/oracle.hpp"
#include "support.hpp"

using namespace crroots;
using crroots::testing::ExpansionWithDerivative;
using crroots::testing::RandomCoefficients;

namespace {

const Complex I{0.0, 1.0};

std::shared_ptr<const PrecomputedBasis> SharedBasis() {
  static const auto pb = PrecomputeSquareBasis(40, 30, 1);
  return pb;
}

// Aberth iteration on p = sum c_j P_j, normalized by its leading monomial
// coefficient c_n P_0 / (beta_1 ... beta_n).
CVector AberthRoots(const RecurrenceBasis& b, const CVector& c) {
  const int n = static_cast<int>(c.size()) - 1;
  CVector z(n);
  for (int k = 0; k < n; ++k)
    z[k] = std::polar(1.5, 2 * std::numbers::pi * (k + 0.25) / n);
  for (int it = 0; it < 500; ++it) {
    double move = 0.0;
    for (int k = 0; k < n; ++k) {
      const auto [v, dv] = ExpansionWithDerivative(b, c, z[k]);
      const Complex ratio = v / dv;
      Complex s = 0.0;
      for (int j = 0; j < n; ++j)
        if (j != k) s += 1.0 / (z[k] - z[j]);
      const Complex step = ratio / (1.0 - ratio * s);
      z[k] -= step;
      move = std::max(move, std::abs(step) / std::max(1.0, std::abs(z[k])));
    }
    if (move < 1e-15) break;
  }
  return z;
}

}  // namespace

TEST_CASE("dense materialization of a 2x2 example") {
  ColleagueGenerators g;
  g.d = CVector(2);
  g.d << 1.0, 2.0;
  g.beta = CVector(1);
  g.beta << 3.0;
  g.p = CVector(2);
  g.p << 0.0, 1.0;
  g.q = CVector(2);
  g.q << 5.0, 7.0;
  CMatrix expected(2, 2);
  expected << 1.0, 3.0, 8.0, 9.0;
  CHECK(MaterializeDense(g) == expected);
}

TEST_CASE("fresh colleague matrices are exactly lower Hessenberg") {
  std::mt19937_64 rng(3);
  const auto& b = SharedBasis()->basis;
  for (int n : {3, 7, 20}) {
    const ColleagueGenerators g = ColleagueFromCoeffs(RandomCoefficients(rng, n), b);
    const CMatrix c = MaterializeDense(g);
    for (int i = 0; i < n; ++i)
      for (int j = i + 2; j < n; ++j) CHECK(c(i, j) == Complex(0.0));
    CHECK(g.p == CVector::Unit(n, n - 1));
    for (int i = 0; i + 1 < n; ++i) CHECK(c(i, i + 1) == b.beta[i]);
  }
}

TEST_CASE("order one colleague matrix is the zero of the linear expansion") {
  const auto& b = SharedBasis()->basis;
  CVector c(2);
  c << Complex(0.4, -1.1), Complex(2.0, 0.5);
  const ColleagueGenerators g = ColleagueFromCoeffs(c, b);
  REQUIRE(g.size() == 1);
  const Complex lambda = MaterializeDense(g)(0, 0);
  CHECK(std::abs(lambda - (b.alpha[0] - b.beta[0] * c[0] / c[1])) < 1e-15);
  CHECK(std::abs(EvaluateExpansion(b, c, lambda)) < 1e-14);
}

TEST_CASE("quadratic with known roots") {
  const auto pb = SharedBasis();
  const BasisMatrix& bm = pb->matrix;
  const auto& bd = pb->basis.boundary;
  CVector g(bd.size());
  for (Eigen::Index i = 0; i < bd.size(); ++i)
    g[i] = std::sqrt(bd.w_quad[i]) * (bd.z[i] - 0.5) * (bd.z[i] + 0.3 * I);
  const CVector c = bm.Solve(g, 2);
  const CVector ev = DenseEigenvalues(MaterializeDense(ColleagueFromCoeffs(c, pb->basis)));
  CVector truth(2);
  truth << 0.5, -0.3 * I;
  CHECK(PairEigenvalues(ev, truth).max_distance < 1e-12);
}

TEST_CASE("eigenvalues are the zeros of the expansion") {
  std::mt19937_64 rng(17);
  const auto& b = SharedBasis()->basis;
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 11;
    const CVector c = RandomCoefficients(rng, n);
    const CVector ev = DenseEigenvalues(MaterializeDense(ColleagueFromCoeffs(c, b)));
    const CVector zeros = AberthRoots(b, c);
    CHECK(MaxRelativePairedError(ev, zeros) <= 1e-7);
  }
}

TEST_CASE("effective order drops negligible trailing coefficients") {
  CVector c(5);
  c << 1.0, 2.0, 3.0, 1e-40, 0.0;
  CHECK(EffectiveOrder(c) == 2);
  c[3] = 1e-20;
  CHECK(EffectiveOrder(c) == 3);
  CHECK(EffectiveOrder(CVector::Zero(3)) == -1);
}

TEST_CASE("colleague construction errors") {
  const auto& b = SharedBasis()->basis;
  CVector c(3);
  c << 1.0, 2.0, 0.0;
  CHECK_THROWS_AS(ColleagueFromCoeffs(c, b), DegenerateLeadingCoefficient);
  CHECK_THROWS_AS(ColleagueFromCoeffs(CVector::Ones(1), b), InvalidArgument);
  CHECK_THROWS_AS(ColleagueFromCoeffs(CVector::Ones(50), b), DimensionError);
}
