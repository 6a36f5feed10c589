// Copyright 2026 The crroots Authors
// SPDX-License-Identifier: Apache-2.0

#include "crroots/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "crroots/errors.hpp"

namespace crroots {

namespace {

// (P_k(x), P_{k-1}(x)) by the Legendre three-term recurrence.
// Evaluated in long double so the rounded nodes and weights come out
// correct to about half an ulp even for k in the hundreds.
std::pair<long double, long double> LegendrePair(int k, long double x) {
  long double p0 = 1.0L, p1 = x;
  for (int j = 2; j <= k; ++j) {
    const long double p2 = ((2.0L * j - 1.0L) * x * p1 - (j - 1.0L) * p0) / j;
    p0 = p1;
    p1 = p2;
  }
  return {p1, p0};
}

}  // namespace

GaussRule GaussLegendre(int k) {
  if (k < 1) throw InvalidArgument("Gauss-Legendre rule needs k >= 1");
  GaussRule rule{RVector(k), RVector(k)};
  const int half = (k + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi's initial guess for the i-th largest root.
    long double x = std::cos(std::numbers::pi_v<long double> * (i + 0.75L) / (k + 0.5L));
    long double dp = 1.0L;
    for (int iter = 0; iter < 100; ++iter) {
      const auto [pk, pkm1] = LegendrePair(k, x);
      dp = k * (pkm1 - x * pk) / ((1.0L - x) * (1.0L + x));
      const long double dx = pk / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-19L && iter > 0) break;
    }
    const auto [pk, pkm1] = LegendrePair(k, x);
    dp = k * (pkm1 - x * pk) / ((1.0L - x) * (1.0L + x));
    const double w = static_cast<double>(2.0L / ((1.0L - x) * (1.0L + x) * dp * dp));
    rule.nodes[k - 1 - i] = static_cast<double>(x);
    rule.nodes[i] = -static_cast<double>(x);
    rule.weights[k - 1 - i] = w;
    rule.weights[i] = w;
  }
  if (k % 2 == 1) rule.nodes[k / 2] = 0.0;
  return rule;
}

const char* SpacingName(Spacing s) {
  return s == Spacing::kGauss ? "gauss" : "equispaced";
}

Spacing ParseSpacing(const std::string& name) {
  if (name == "gauss") return Spacing::kGauss;
  if (name == "equispaced") return Spacing::kEquispaced;
  throw InvalidArgument("unknown spacing '" + name +
                        "' (expected gauss|equispaced)");
}

double BoundaryShape::Scale() const {
  if (kind == Kind::kCircle) return std::abs(center) + radius;
  double s = 0.0;
  for (const Complex& v : vertices) s = std::max(s, std::abs(v));
  return s;
}

BoundaryShape BoundaryShape::CanonicalSquare() {
  return Polygon({{-1.0, -1.0}, {1.0, -1.0}, {1.0, 1.0}, {-1.0, 1.0}},
                 "square");
}

BoundaryShape BoundaryShape::Polygon(std::vector<Complex> vertices,
                                     std::string name) {
  BoundaryShape s;
  s.kind = Kind::kPolygon;
  s.name = std::move(name);
  s.vertices = std::move(vertices);
  return s;
}

BoundaryShape BoundaryShape::Circle(Complex center, double radius) {
  BoundaryShape s;
  s.kind = Kind::kCircle;
  s.name = "circle";
  s.center = center;
  s.radius = radius;
  return s;
}

BoundaryShape BoundaryShape::Triangle() {
  std::vector<Complex> v;
  for (int j = 0; j < 3; ++j)
    v.push_back(std::polar(1.0, std::numbers::pi / 2 +
                                    2.0 * std::numbers::pi * j / 3.0));
  // polar() leaves ~1e-17 noise in the apex's real part.
  v[0] = Complex(0.0, 1.0);
  return Polygon(std::move(v), "triangle");
}

BoundaryShape BoundaryShape::Snake() {
  // A zigzag band: lower chain left to right, upper chain (shifted up by
  // 0.3) right to left.
  BoundaryShape s = Polygon({{-1.0, 0.0},
                             {-0.5, -0.5},
                             {0.0, 0.0},
                             {0.5, -0.5},
                             {1.0, 0.0},
                             {1.0, 0.3},
                             {0.5, -0.2},
                             {0.0, 0.3},
                             {-0.5, -0.2},
                             {-1.0, 0.3}},
                            "snake");
  s.approximate = true;
  return s;
}

BoundaryShape BoundaryShape::Preset(const std::string& name) {
  if (name == "square") return CanonicalSquare();
  if (name == "triangle") return Triangle();
  if (name == "snake") return Snake();
  if (name == "circle") return Circle();
  throw InvalidArgument("unknown shape '" + name +
                        "' (expected square|triangle|snake|circle)");
}

BoundaryDiscretization BoundaryNodes(const BoundaryShape& shape,
                                     int k_per_edge, Spacing spacing) {
  if (k_per_edge < 1) throw InvalidArgument("need at least one node per edge");
  BoundaryDiscretization out;
  out.shape = shape;
  out.spacing = spacing;
  out.nodes_per_edge = k_per_edge;

  if (shape.kind == BoundaryShape::Kind::kCircle) {
    if (spacing != Spacing::kEquispaced)
      throw InvalidArgument("circle boundaries only support equispaced nodes");
    if (!(shape.radius > 0.0)) throw GeometryError("circle radius must be > 0");
    const int m = k_per_edge;
    out.z.resize(m);
    out.w_quad.resize(m);
    for (int j = 0; j < m; ++j) {
      out.z[j] = shape.center +
                 std::polar(shape.radius, 2.0 * std::numbers::pi * j / m);
      out.w_quad[j] = 2.0 * std::numbers::pi * shape.radius / m;
    }
    return out;
  }

  const auto& v = shape.vertices;
  const int edges = static_cast<int>(v.size());
  if (edges < 3) throw GeometryError("polygon needs at least 3 vertices");
  for (int e = 0; e < edges; ++e) {
    for (int f = e + 1; f < edges; ++f) {
      if (v[e] == v[f])
        throw GeometryError("polygon has repeated vertex " + std::to_string(e) +
                            " / " + std::to_string(f));
    }
  }

  RVector t(k_per_edge), wt(k_per_edge);
  if (spacing == Spacing::kGauss) {
    GaussRule rule = GaussLegendre(k_per_edge);
    t = rule.nodes;
    wt = rule.weights;
  } else {
    // Midpoint rule: no node lands on a vertex, so edges never share nodes.
    for (int j = 0; j < k_per_edge; ++j) {
      t[j] = -1.0 + (2.0 * j + 1.0) / k_per_edge;
      wt[j] = 2.0 / k_per_edge;
    }
  }

  const Eigen::Index m = static_cast<Eigen::Index>(edges) * k_per_edge;
  out.z.resize(m);
  out.w_quad.resize(m);
  for (int e = 0; e < edges; ++e) {
    const Complex a = v[e];
    const Complex b = v[(e + 1) % edges];
    const Complex mid = 0.5 * (a + b);
    const Complex half = 0.5 * (b - a);
    const double jac = std::abs(half);
    for (int j = 0; j < k_per_edge; ++j) {
      out.z[e * k_per_edge + j] = mid + t[j] * half;
      out.w_quad[e * k_per_edge + j] = wt[j] * jac;
    }
  }
  return out;
}

}  // namespace crroots
