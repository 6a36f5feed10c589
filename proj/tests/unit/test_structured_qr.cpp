// Copyright 2026 The crroots Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "crroots/catalog.hpp"
#include "crroots/errors.hpp"
#include "crroots/oracle.hpp"
#include "crroots/rootfind.hpp"
#include "crroots/structured_qr.hpp"
#include "support.hpp"

using namespace crroots;
using crroots::testing::RandomCoefficients;
using crroots::testing::RandomGenerators;

namespace {

double MaxRotation(const std::vector<Rotation>& rs) {
  double m = 1.0;
  for (const Rotation& r : rs) m = std::max(m, r.Size());
  return m;
}

double MaxAbs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

// Generators of a colleague matrix from a random expansion in a square basis.
ColleagueGenerators RandomColleague(std::mt19937_64& rng, int n) {
  static const auto pb = PrecomputeSquareBasis(60, 40, 1);
  return ColleagueFromCoeffs(RandomCoefficients(rng, n), pb->basis);
}

}  // namespace

TEST_CASE("tridiagonal 2x2 elimination gives a lower triangular matrix") {
  ColleagueGenerators g;
  g.d = CVector(2);
  g.d << Complex(1.0, 0.5), Complex(-2.0, 1.0);
  g.beta = CVector(1);
  g.beta << Complex(0.7, -0.2);
  g.p = CVector::Unit(2, 1);
  g.q = CVector::Zero(2);
  const EliminationResult e = EliminateSuperdiagonal(g, false);
  REQUIRE(e.rotations.size() == 1);
  const CMatrix uc = AccumulateRotations(e.rotations, 2) * MaterializeDense(g);
  CHECK(std::abs(uc(0, 1)) < 1e-15);
}

TEST_CASE("elimination and rotate-back agree with dense application") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 6;
    const ColleagueGenerators g = RandomColleague(rng, n);
    const CMatrix c = MaterializeDense(g);
    const EliminationResult e = EliminateSuperdiagonal(g, false);
    const CMatrix u = AccumulateRotations(e.rotations, n);
    const double qmax = MaxRotation(e.rotations);
    const double tol = 1e-12 * MaxAbs(c) * qmax * qmax;

    const CMatrix uc = u * c;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) CHECK(std::abs(uc(i, j)) <= tol);

    const CMatrix dense = uc * u.transpose();
    const CMatrix structured = MaterializeDense(RotateBack(e, g));
    CHECK(MaxAbs(dense - structured) <= tol * qmax);
    CHECK(MaxAbs(u.transpose() * u - CMatrix::Identity(n, n)) <= 1e-13 * qmax * qmax);
  }
}

TEST_CASE("one sweep keeps generator structure and the spectrum") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 4 + trial % 7;
    const ColleagueGenerators g = RandomColleague(rng, n);
    const ColleagueGenerators h = QrSweep(g, true);
    CHECK(h.size() == n);
    const CMatrix ch = MaterializeDense(h);
    for (int i = 0; i < n; ++i)
      for (int j = i + 2; j < n; ++j)
        CHECK(std::abs(ch(i, j)) <= 1e-12 * MaxAbs(ch));
    const double qmax = MaxRotation(EliminateSuperdiagonal(g, true).rotations);
    const CVector before = DenseEigenvalues(MaterializeDense(g));
    const CVector after = DenseEigenvalues(ch);
    const double scale = std::max(1.0, before.cwiseAbs().maxCoeff());
    CHECK(PairEigenvalues(before, after).max_distance <= 1e-9 * scale * qmax * qmax);
  }
}

TEST_CASE("rotate back with identity rotations") {
  const int n = 5;
  std::mt19937_64 rng(2);
  CVector d = crroots::testing::RandomComplex(rng, n);
  const CVector d0 = d;
  const CVector gamma = crroots::testing::RandomComplex(rng, n - 1);
  const CVector p = crroots::testing::RandomComplex(rng, n);
  CVector q = crroots::testing::RandomComplex(rng, n);
  const CVector q0 = q;
  CVector beta(n - 1);
  std::vector<Rotation> rot(n - 1);
  RotateBack(rot, {d.data(), 5}, {gamma.data(), 4}, {p.data(), 5}, {q.data(), 5},
             {beta.data(), 4});
  CHECK(d == d0);
  CHECK(q == q0);
  for (int k = 1; k < n; ++k) CHECK(beta[k - 1] == -p[k - 1] * q0[k]);
}

TEST_CASE("trivial eigenvalue problems") {
  ColleagueGenerators g;
  g.d = CVector::Constant(1, Complex(2.0, 1.0));
  g.beta = CVector(0);
  g.p = CVector::Constant(1, 3.0);
  g.q = CVector::Constant(1, Complex(0.0, 1.0));
  QrResult r = QrEigenvalues(g);
  CHECK(r.eigenvalues[0] == Complex(2.0, 4.0));
  CHECK(r.stats.iterations == 0);

  g.d = CVector(4);
  g.d << 1.0, Complex(0, 2), -3.0, 4.5;
  g.beta = CVector::Zero(3);
  g.p = CVector::Unit(4, 3);
  g.q = CVector::Zero(4);
  r = QrEigenvalues(g);
  CHECK(r.eigenvalues == g.d);
  CHECK(r.stats.iterations == 0);
}

TEST_CASE("structured eigenvalues match the dense oracle") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 4 + trial % 17;
    const ColleagueGenerators g = RandomColleague(rng, n);
    const QrResult r = QrEigenvalues(g);
    CHECK(MaxRelativePairedError(r.eigenvalues, DenseEigenvalues(MaterializeDense(g))) <= 1e-8);
    CHECK(r.stats.rotations <= 3L * 80 * n * n);
  }
}

TEST_CASE("invalid generator sets") {
  ColleagueGenerators g;
  g.d = CVector::Ones(3);
  g.beta = CVector::Ones(1);
  g.p = CVector::Ones(3);
  g.q = CVector::Ones(3);
  CHECK_THROWS_AS(QrEigenvalues(g), DimensionError);
  g.beta = CVector::Ones(2);
  QrOptions o;
  o.eps = 0.0;
  CHECK_THROWS_AS(QrEigenvalues(g, o), InvalidArgument);
  CHECK_THROWS_AS(EliminateSuperdiagonal(ColleagueGenerators{CVector::Ones(1), CVector(0),
                                                             CVector::Ones(1), CVector::Ones(1)}),
                  InvalidArgument);
}

TEST_CASE("isotropic rotation surfaces as QrBreakdown") {
  // First rotation acts on (beta_1 + p_1 q_2, d_2 + p_2 q_2) = (1, i).
  ColleagueGenerators g;
  g.d = CVector(2);
  g.d << 0.0, Complex(0.0, 1.0);
  g.beta = CVector::Ones(1);
  g.p = CVector::Zero(2);
  g.q = CVector::Zero(2);
  CHECK_THROWS_AS(EliminateSuperdiagonal(g, false), QrBreakdown);
}

TEST_CASE("f_poly at n=40 records its rotations") {
  const auto pb = PrecomputeSquareBasis(40, 30, 1);
  const AnalyticFn f = CatalogFunction("f_poly");
  const Expansion ex = ExpandOnSquare(f, SquareDomain{}, *pb, 40);
  QrOptions o;
  o.record_rotations = true;
  const QrResult r = QrEigenvalues(ColleagueFromCoeffs(ex.c, pb->basis), o);
  REQUIRE(r.stats.rotation_sizes.size() == static_cast<size_t>(r.stats.rotations));
  std::vector<double> sizes = r.stats.rotation_sizes;
  std::sort(sizes.begin(), sizes.end());
  const double median = sizes[sizes.size() / 2];
  MESSAGE("f_poly n=40: " << sizes.size() << " rotations, median size " << median
                          << ", max " << sizes.back());
  CHECK(median < 2.0);
  CHECK(r.stats.rotations <= 3L * 80 * 40 * 40);
}

TEST_CASE("correction keeps roots accurate when q is huge") {
  const auto pb = PrecomputeSquareBasis(30, 25, 1);
  const auto& b = pb->basis;
  const Complex I{0.0, 1.0};
  const Complex roots[5] = {0.5, 0.9, -0.8, 0.7 * I, -0.1 * I};
  const auto poly = [&](Complex z) {
    Complex v = 1.0, dv = 0.0;
    for (Complex r : roots) {
      dv = dv * (z - r) + v;
      v *= z - r;
    }
    return std::pair<Complex, Complex>(v, dv);
  };
  CVector g(b.nodes());
  for (Eigen::Index i = 0; i < b.nodes(); ++i)
    g[i] = std::sqrt(b.boundary.w_quad[i]) * poly(b.boundary.z[i]).first;
  CVector c = pb->matrix.Solve(g, 30);
  c[30] = std::abs(b.beta[29]) * StableNorm(c.head(30)) / 1e15;
  const ColleagueGenerators gen = ColleagueFromCoeffs(c, b);
  CHECK(StableNorm(gen.q) == doctest::Approx(1e15).epsilon(1e-12));

  double eta[2] = {0.0, 0.0};
  for (int with = 0; with < 2; ++with) {
    QrOptions o;
    o.correction = with == 1;
    const QrResult r = QrEigenvalues(gen, o);
    for (Complex root : roots) {
      Eigen::Index k;
      (r.eigenvalues.array() - root).abs().minCoeff(&k);
      const auto [v, dv] = poly(r.eigenvalues[k]);
      eta[with] = std::max(eta[with], std::abs(v / dv));
    }
    if (with == 1) CHECK(r.stats.corrections > 0);
  }
  MESSAGE("max eta with correction " << eta[1] << ", without " << eta[0]);
  CHECK(eta[1] <= 1e-10);
}
