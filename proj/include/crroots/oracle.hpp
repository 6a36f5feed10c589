// Copyright 2026 The crroots Authors
// SPDX-License-Identifier: Apache-2.0
//
// Independent reference computations used to check the structured pipeline:
// a dense unitary eigensolver, an argument-principle root counter and direct
// evaluation of expansions.

#ifndef CRROOTS_ORACLE_HPP_
#define CRROOTS_ORACLE_HPP_

#include <vector>

#include "crroots/analytic.hpp"
#include "crroots/basis.hpp"
#include "crroots/complex_core.hpp"

namespace crroots {

// All eigenvalues of a dense matrix (Hessenberg reduction followed by shifted
// QR with unitary rotations). Throws OracleError on non-finite input, n > 64
// or non-convergence.
CVector DenseEigenvalues(const CMatrix& m);

struct WindingCount {
  int count = 0;
  Complex raw;              // (1 / 2 pi i) * contour integral before rounding
  int points_per_edge = 0;  // at which the count stabilized
};

// Number of zeros (with multiplicity) of f inside D, from
// (1 / 2 pi i) \oint f'/f dz over the square's boundary using composite
// 16-point Gauss-Legendre panels. Doubles the number of points per edge
// until two successive counts agree and the raw value is within 0.25 of an
// integer; throws ContourError after 12 doublings.
WindingCount ArgumentPrincipleCount(const AnalyticFn& f, const SquareDomain& d,
                                    int points_per_edge = 64);

// sum_j c_j P_j(z) with P_j from the basis recurrence.
Complex EvaluateExpansion(const RecurrenceBasis& basis, const CVector& c,
                          Complex z);

struct Pairing {
  std::vector<int> match;  // a[i] is paired with b[match[i]]
  double max_distance = 0.0;
  double total_cost = 0.0;
};

// Greedy nearest-neighbor matching of two equally sized point sets, followed
// by pairwise exchanges while they lower the total distance.
Pairing PairEigenvalues(const CVector& a, const CVector& b);

// max_i |a_i - b_match(i)| / max(1, |a_i|).
double MaxRelativePairedError(const CVector& a, const CVector& b);

}  // namespace crroots

#endif  // CRROOTS_ORACLE_HPP_
