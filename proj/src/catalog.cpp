// Copyright 2026 The crroots Authors
// SPDX-License-Identifier: Apache-2.0

#include "crroots/catalog.hpp"

#include <limits>
#include <numbers>

#include "crroots/dual.hpp"
#include "crroots/errors.hpp"

namespace crroots {

namespace {

constexpr double kPi = std::numbers::pi;

FnValue Finish(const Dual& d) {
  if (IsFinite(d.value) && IsFinite(d.deriv)) return {d.value, d.deriv};
  const double nan = std::numeric_limits<double>::quiet_NaN();
  return {Complex(nan, nan), Complex(nan, nan)};
}

FnValue Cosh(Complex z) {
  const Dual x = Dual::Variable(z);
  return Finish(cosh(Dual::Constant(1.5 * kPi) * x) / (x - Dual::Constant(2.0)));
}

FnValue Poly(Complex z) {
  const Dual x = Dual::Variable(z);
  return Finish((x - Dual::Constant(0.5)) * (x - Dual::Constant(0.9)) *
                (x + Dual::Constant(0.8)) *
                (x - Dual::Constant(Complex(0.0, 0.7))) *
                (x + Dual::Constant(Complex(0.0, 0.1))));
}

FnValue Mult(Complex z) {
  const Dual x = Dual::Variable(z);
  return Finish(powi(x - Dual::Constant(0.5), 5) *
                powi(x - Dual::Constant(0.9), 3) * (x + Dual::Constant(0.8)) *
                (x - Dual::Constant(Complex(0.0, 0.7))) *
                powi(x + Dual::Constant(Complex(0.0, 0.1)), 2));
}

FnValue Clust(Complex z) {
  const Dual x = Dual::Variable(z);
  const Dual rot = Dual::Constant(std::exp(Complex(0.0, kPi / 4.0)));
  return Finish(sin(Dual::Constant(100.0) / (rot * x - Dual::Constant(2.0))));
}

FnValue Entire(Complex z) {
  const Dual x = Dual::Variable(z);
  return Finish(sin(Dual::Constant(3.0 * kPi) * x) / (x - Dual::Constant(2.0)));
}

constexpr long double kPiX = std::numbers::pi_v<long double>;

Complex CoshLocal(Complex c, double l, Complex t) {
  const XComplex x = LocalPoint(c, l, t);
  return FinishExtended(std::cosh(1.5L * kPiX * x) / (x - 2.0L));
}

Complex PolyLocal(Complex c, double l, Complex t) {
  const XComplex x = LocalPoint(c, l, t);
  const XComplex i(0.0L, 1.0L);
  return FinishExtended((x - XComplex(0.5)) * (x - XComplex(0.9)) *
                        (x + XComplex(0.8)) * (x - XComplex(0.7) * i) *
                        (x + XComplex(0.1) * i));
}

Complex MultLocal(Complex c, double l, Complex t) {
  const XComplex x = LocalPoint(c, l, t);
  const XComplex i(0.0L, 1.0L);
  const XComplex a = x - XComplex(0.5);
  const XComplex b = x - XComplex(0.9);
  const XComplex d = x + XComplex(0.1) * i;
  return FinishExtended(a * a * a * a * a * b * b * b * (x + XComplex(0.8)) *
                        (x - XComplex(0.7) * i) * d * d);
}

Complex ClustLocal(Complex c, double l, Complex t) {
  const XComplex x = LocalPoint(c, l, t);
  const XComplex rot = std::exp(XComplex(0.0L, kPiX / 4.0L));
  return FinishExtended(std::sin(100.0L / (rot * x - 2.0L)));
}

Complex EntireLocal(Complex c, double l, Complex t) {
  const XComplex x = LocalPoint(c, l, t);
  return FinishExtended(std::sin(3.0L * kPiX * x) / (x - 2.0L));
}

}  // namespace

const std::vector<CatalogEntry>& Catalog() {
  static const std::vector<CatalogEntry> entries = {
      {"f_cosh", "cosh(3*pi*z/2)/(z-2)", "zeros at z = i(2k+1)/3"},
      {"f_poly", "(z-0.5)*(z-0.9)*(z+0.8)*(z-0.7*i)*(z+0.1*i)",
       "five simple zeros"},
      {"f_mult", "(z-0.5)^5*(z-0.9)^3*(z+0.8)*(z-0.7*i)*(z+0.1*i)^2",
       "degree 12 with zeros of multiplicity 5, 3 and 2"},
      {"f_clust", "sin(100/(exp(i*pi/4)*z-2))",
       "zeros accumulating at the essential singularity sqrt(2)-i*sqrt(2)"},
      {"f_entire", "sin(3*pi*z)/(z-2)", "zeros at k/3, k != 6"},
  };
  return entries;
}

const CatalogEntry& CatalogLookup(const std::string& name) {
  for (const auto& e : Catalog())
    if (e.name == name) return e;
  throw InvalidArgument("unknown catalog function '" + name +
                        "' (expected f_cosh|f_poly|f_mult|f_clust|f_entire)");
}

AnalyticFn CatalogFunction(const std::string& name) {
  CatalogLookup(name);
  if (name == "f_cosh") return AnalyticFn(name, Cosh, CoshLocal);
  if (name == "f_poly") return AnalyticFn(name, Poly, PolyLocal);
  if (name == "f_mult") return AnalyticFn(name, Mult, MultLocal);
  if (name == "f_clust") return AnalyticFn(name, Clust, ClustLocal);
  return AnalyticFn(name, Entire, EntireLocal);
}

}  // namespace crroots
