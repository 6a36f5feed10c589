// Copyright 2026 The crroots Authors
// SPDX-License-Identifier: Apache-2.0

#include "crroots/colleague.hpp"

#include <string>

#include "crroots/errors.hpp"

namespace crroots {

int EffectiveOrder(const CVector& c) {
  const double norm = StableNorm(c);
  const double cut = kUnitRoundoff * kUnitRoundoff * norm;
  int k = static_cast<int>(c.size()) - 1;
  while (k >= 0 && (c[k] == Complex{} || std::abs(c[k]) <= cut)) --k;
  return k;
}

ColleagueGenerators ColleagueFromCoeffs(const CVector& c, const CVector& alpha,
                                        const CVector& beta) {
  const int n = static_cast<int>(c.size()) - 1;
  if (n < 1) throw InvalidArgument("colleague matrix needs order >= 1");
  if (alpha.size() < n || beta.size() < n)
    throw DimensionError("recurrence has fewer than " + std::to_string(n) +
                         " coefficients");
  if (c[n] == Complex{}) throw DegenerateLeadingCoefficient();

  ColleagueGenerators g;
  g.d = alpha.head(n);
  g.beta = beta.head(n - 1);
  g.p = CVector::Zero(n);
  g.p[n - 1] = 1.0;
  g.q.resize(n);
  for (int j = 0; j < n; ++j) g.q[j] = -beta[n - 1] * (c[j] / c[n]);
  return g;
}

ColleagueGenerators ColleagueFromCoeffs(const CVector& c,
                                        const RecurrenceBasis& basis) {
  return ColleagueFromCoeffs(c, basis.alpha, basis.beta);
}

CMatrix MaterializeDense(const ColleagueGenerators& g) {
  const int n = g.size();
  CMatrix a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Complex v;
      if (j > i + 1)
        v = -g.p[i] * g.q[j];
      else if (j == i + 1)
        v = g.beta[i];
      else if (j == i)
        v = g.d[i];
      else if (j == i - 1)
        v = g.beta[j];
      else
        v = -g.q[i] * g.p[j];
      a(i, j) = v + g.p[i] * g.q[j];
    }
  }
  return a;
}

}  // namespace crroots
