// Copyright 2026 The crroots Authors
// SPDX-License-Identifier: Apache-2.0
//
// Generalized colleague matrices C = A + p q^T for an expansion
// sum_j c_j P_j in a recurrence basis. A is complex symmetric tridiagonal
// initially, p = e_n and q = -beta_n (c_0, ..., c_{n-1}) / c_n, so the
// eigenvalues of C are the roots of the expansion.
//
// During QR iterations A stops being tridiagonal, but its lower Hessenberg
// part and the upper triangle stay determined by (d, beta, p, q):
//
//   a_ij = -p_i q_j  (j > i+1)      a_ij = -q_i p_j  (j < i-1)
//   a_ij = beta_i    (j = i+1)      a_ij = beta_j    (j = i-1)
//   a_ii = d_i

#ifndef CRROOTS_COLLEAGUE_HPP_
#define CRROOTS_COLLEAGUE_HPP_

#include "crroots/basis.hpp"
#include "crroots/complex_core.hpp"

namespace crroots {

// Indices are 0-based: d[i] = a_ii, beta[i] = a_{i,i+1} = a_{i+1,i}.
struct ColleagueGenerators {
  CVector d;     // n
  CVector beta;  // n-1
  CVector p;     // n
  CVector q;     // n

  int size() const { return static_cast<int>(d.size()); }
};

// Trailing coefficients with |c_j| <= u^2 ||c|| count as zero; returns the
// index of the last coefficient that does not (or -1 if all are zero).
int EffectiveOrder(const CVector& c);

// Builds the generators from coefficients c_0..c_n (n = c.size() - 1 >= 1)
// and recurrence coefficients alpha, beta (at least n of each). Throws
// DegenerateLeadingCoefficient if c_n == 0.
ColleagueGenerators ColleagueFromCoeffs(const CVector& c, const CVector& alpha,
                                        const CVector& beta);
ColleagueGenerators ColleagueFromCoeffs(const CVector& c,
                                        const RecurrenceBasis& basis);

// Dense n x n matrix represented by the generators (formula above plus p q^T).
CMatrix MaterializeDense(const ColleagueGenerators& g);

}  // namespace crroots

#endif  // CRROOTS_COLLEAGUE_HPP_
