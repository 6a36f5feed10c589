// Copyright 2026 The crroots Authors
// SPDX-License-Identifier: Apache-2.0
//
// Helpers shared by the unit tests.

#ifndef CRROOTS_TESTS_SUPPORT_HPP_
#define CRROOTS_TESTS_SUPPORT_HPP_

#include <random>
#include <utility>

#include "crroots/basis.hpp"
#include "crroots/colleague.hpp"

namespace crroots::testing {

inline CVector RandomComplex(std::mt19937_64& rng, int n, double sigma = 1.0) {
  std::normal_distribution<double> g(0.0, sigma);
  CVector v(n);
  for (int i = 0; i < n; ++i) v[i] = {g(rng), g(rng)};
  return v;
}

// Coefficients c_0..c_n with |c_n| >= 0.1.
inline CVector RandomCoefficients(std::mt19937_64& rng, int n) {
  CVector c = RandomComplex(rng, n + 1);
  if (std::abs(c[n]) < 0.1) c[n] = 0.1 * c[n] / std::abs(c[n]);
  return c;
}

inline ColleagueGenerators RandomGenerators(std::mt19937_64& rng, int n) {
  ColleagueGenerators g;
  g.d = RandomComplex(rng, n);
  g.beta = RandomComplex(rng, n - 1);
  g.p = RandomComplex(rng, n);
  g.q = RandomComplex(rng, n);
  return g;
}

// (p(z), p'(z)) for p = sum c_j P_j, with derivatives carried through the
// recurrence.
inline std::pair<Complex, Complex> ExpansionWithDerivative(const RecurrenceBasis& b,
                                                           const CVector& c, Complex z) {
  const int n = static_cast<int>(c.size()) - 1;
  Complex prev = 0.0, dprev = 0.0;
  Complex cur = b.P0(), dcur = 0.0;
  Complex value = c[0] * cur, deriv = 0.0;
  for (int j = 0; j < n; ++j) {
    const Complex back = j > 0 ? b.beta[j - 1] : Complex{};
    const Complex next = ((z - b.alpha[j]) * cur - back * prev) / b.beta[j];
    const Complex dnext = ((z - b.alpha[j]) * dcur + cur - back * dprev) / b.beta[j];
    prev = cur;
    dprev = dcur;
    cur = next;
    dcur = dnext;
    value += c[j + 1] * cur;
    deriv += c[j + 1] * dcur;
  }
  return {value, deriv};
}

}  // namespace crroots::testing

#endif  // CRROOTS_TESTS_SUPPORT_HPP_
