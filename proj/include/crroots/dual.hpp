// Copyright 2026 The crroots Authors
// SPDX-License-Identifier: Apache-2.0
//
// Forward-mode dual numbers over the complex field: (value, derivative).

#ifndef CRROOTS_DUAL_HPP_
#define CRROOTS_DUAL_HPP_

#include <complex>

namespace crroots {

struct Dual {
  std::complex<double> value;
  std::complex<double> deriv;

  static Dual Constant(std::complex<double> c) { return {c, 0.0}; }
  static Dual Variable(std::complex<double> z) { return {z, 1.0}; }
};

inline Dual operator+(const Dual& a, const Dual& b) {
  return {a.value + b.value, a.deriv + b.deriv};
}
inline Dual operator-(const Dual& a, const Dual& b) {
  return {a.value - b.value, a.deriv - b.deriv};
}
inline Dual operator-(const Dual& a) { return {-a.value, -a.deriv}; }
inline Dual operator*(const Dual& a, const Dual& b) {
  return {a.value * b.value, a.deriv * b.value + a.value * b.deriv};
}
inline Dual operator/(const Dual& a, const Dual& b) {
  const std::complex<double> q = a.value / b.value;
  return {q, (a.deriv - q * b.deriv) / b.value};
}

inline Dual sin(const Dual& a) {
  return {std::sin(a.value), std::cos(a.value) * a.deriv};
}
inline Dual cos(const Dual& a) {
  return {std::cos(a.value), -std::sin(a.value) * a.deriv};
}
inline Dual tan(const Dual& a) {
  const std::complex<double> c = std::cos(a.value);
  return {std::tan(a.value), a.deriv / (c * c)};
}
inline Dual sinh(const Dual& a) {
  return {std::sinh(a.value), std::cosh(a.value) * a.deriv};
}
inline Dual cosh(const Dual& a) {
  return {std::cosh(a.value), std::sinh(a.value) * a.deriv};
}
inline Dual tanh(const Dual& a) {
  const std::complex<double> c = std::cosh(a.value);
  return {std::tanh(a.value), a.deriv / (c * c)};
}
inline Dual exp(const Dual& a) {
  const std::complex<double> e = std::exp(a.value);
  return {e, e * a.deriv};
}
inline Dual log(const Dual& a) {
  return {std::log(a.value), a.deriv / a.value};
}
inline Dual sqrt(const Dual& a) {
  const std::complex<double> s = std::sqrt(a.value);
  return {s, a.deriv / (2.0 * s)};
}

// a^k for integer k by repeated squaring; d(a^k) = k a^(k-1) a'.
inline Dual powi(const Dual& a, long k) {
  if (k == 0) return Dual::Constant(1.0);
  const unsigned long m = k < 0 ? 0UL - static_cast<unsigned long>(k)
                                : static_cast<unsigned long>(k);
  // below = a^(m-1)
  std::complex<double> below = 1.0, b = a.value;
  for (unsigned long e = m - 1; e > 0; e >>= 1) {
    if (e & 1UL) below *= b;
    b *= b;
  }
  const Dual out{below * a.value, static_cast<double>(m) * below * a.deriv};
  if (k < 0) return Dual::Constant(1.0) / out;
  return out;
}

}  // namespace crroots

#endif  // CRROOTS_DUAL_HPP_
