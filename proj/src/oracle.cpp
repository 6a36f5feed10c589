// Copyright 2026 The crroots Authors
// SPDX-License-Identifier: Apache-2.0

#include "crroots/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "crroots/errors.hpp"
#include "crroots/quadrature.hpp"

namespace crroots {

CVector DenseEigenvalues(const CMatrix& m) {
  if (m.rows() != m.cols()) throw OracleError("matrix is not square");
  if (m.rows() > 64) throw OracleError("dense oracle is limited to n <= 64");
  if (!m.allFinite()) throw OracleError("matrix has non-finite entries");
  if (m.rows() == 0) return CVector();
  Eigen::ComplexEigenSolver<CMatrix> solver;
  solver.setMaxIterations(30 * static_cast<int>(m.rows()));
  solver.compute(m, false);
  if (solver.info() != Eigen::Success)
    throw OracleError("dense eigensolver did not converge");
  return solver.eigenvalues();
}

namespace {

// Contour integral of f'/f over the square with `panels` 16-point panels
// per edge, divided by 2 pi i. Returns NaN when f or f' is not finite or f
// vanishes at a node.
Complex WindingIntegral(const AnalyticFn& f, const SquareDomain& d,
                        const GaussRule& rule, int panels) {
  const double l = d.half_side;
  const Complex corners[4] = {d.center + Complex(-l, -l), d.center + Complex(l, -l),
                              d.center + Complex(l, l), d.center + Complex(-l, l)};
  Complex sum{0.0, 0.0};
  for (int e = 0; e < 4; ++e) {
    const Complex a = corners[e];
    const Complex b = corners[(e + 1) % 4];
    const Complex step = (b - a) / static_cast<double>(panels);
    for (int p = 0; p < panels; ++p) {
      const Complex pa = a + static_cast<double>(p) * step;
      const Complex mid = pa + 0.5 * step;
      const Complex half = 0.5 * step;
      for (Eigen::Index j = 0; j < rule.nodes.size(); ++j) {
        const FnValue v = f(mid + rule.nodes[j] * half);
        if (!IsFinite(v.value) || !IsFinite(v.deriv) || v.value == Complex{})
          return {std::numeric_limits<double>::quiet_NaN(), 0.0};
        sum += rule.weights[j] * (v.deriv / v.value) * half;
      }
    }
  }
  return sum / Complex(0.0, 2.0 * std::numbers::pi);
}

}  // namespace

WindingCount ArgumentPrincipleCount(const AnalyticFn& f, const SquareDomain& d,
                                    int points_per_edge) {
  d.Validate();
  if (points_per_edge < 1) throw InvalidArgument("points_per_edge must be >= 1");
  const GaussRule rule = GaussLegendre(16);
  int panels = (points_per_edge + 15) / 16;
  bool have_prev = false;
  long prev = 0;
  Complex last{0.0, 0.0};
  for (int doubling = 0; doubling <= 12; ++doubling, panels *= 2) {
    const Complex v = WindingIntegral(f, d, rule, panels);
    last = v;
    if (!IsFinite(v)) {
      have_prev = false;
      continue;
    }
    const long rounded = std::lround(v.real());
    const bool near_integer =
        std::abs(v - Complex(static_cast<double>(rounded), 0.0)) < 0.25;
    if (have_prev && rounded == prev && near_integer)
      return {static_cast<int>(rounded), v, 16 * panels};
    have_prev = true;
    prev = rounded;
  }
  throw ContourError("argument-principle count did not stabilize (last value " +
                     std::to_string(last.real()) + " + " +
                     std::to_string(last.imag()) + "i); a zero may lie on the contour");
}

Complex EvaluateExpansion(const RecurrenceBasis& basis, const CVector& c,
                          Complex z) {
  if (c.size() < 1) return {0.0, 0.0};
  const int n = static_cast<int>(c.size()) - 1;
  const CVector p = basis.Evaluate(z, n);
  Complex sum{0.0, 0.0};
  for (int j = 0; j <= n; ++j) sum += c[j] * p[j];
  return sum;
}

Pairing PairEigenvalues(const CVector& a, const CVector& b) {
  if (a.size() != b.size())
    throw DimensionError("pairing needs equally sized sets (" +
                         std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()) + ")");
  const int n = static_cast<int>(a.size());
  Pairing out;
  out.match.assign(n, -1);
  std::vector<bool> used_a(n, false), used_b(n, false);
  for (int round = 0; round < n; ++round) {
    double best = std::numeric_limits<double>::infinity();
    int bi = -1, bj = -1;
    for (int i = 0; i < n; ++i) {
      if (used_a[i]) continue;
      for (int j = 0; j < n; ++j) {
        if (used_b[j]) continue;
        const double dist = std::abs(a[i] - b[j]);
        if (bi < 0 || dist < best) {
          best = dist;
          bi = i;
          bj = j;
        }
      }
    }
    used_a[bi] = used_b[bj] = true;
    out.match[bi] = bj;
  }

  bool improved = true;
  for (int pass = 0; improved && pass < 4 * n + 4; ++pass) {
    improved = false;
    for (int i = 0; i < n; ++i) {
      for (int k = i + 1; k < n; ++k) {
        const int ji = out.match[i], jk = out.match[k];
        const double now = std::abs(a[i] - b[ji]) + std::abs(a[k] - b[jk]);
        const double swapped = std::abs(a[i] - b[jk]) + std::abs(a[k] - b[ji]);
        if (swapped < now * (1.0 - 1e-14)) {
          std::swap(out.match[i], out.match[k]);
          improved = true;
        }
      }
    }
  }

  for (int i = 0; i < n; ++i) {
    const double dist = std::abs(a[i] - b[out.match[i]]);
    out.total_cost += dist;
    out.max_distance = std::max(out.max_distance, dist);
  }
  return out;
}

double MaxRelativePairedError(const CVector& a, const CVector& b) {
  const Pairing p = PairEigenvalues(a, b);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    worst = std::max(worst, std::abs(a[i] - b[p.match[i]]) /
                                std::max(1.0, std::abs(a[i])));
  return worst;
}

}  // namespace crroots
