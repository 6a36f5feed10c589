// Copyright 2026 The crroots Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CRROOTS_QUADRATURE_HPP_
#define CRROOTS_QUADRATURE_HPP_

#include <string>
#include <vector>

#include "crroots/complex_core.hpp"

namespace crroots {

struct GaussRule {
  RVector nodes;    // ascending, in (-1, 1)
  RVector weights;  // positive, summing to 2
};

// k-point Gauss-Legendre rule on [-1, 1] by Newton iteration on P_k.
GaussRule GaussLegendre(int k);

enum class Spacing { kGauss, kEquispaced };

const char* SpacingName(Spacing s);
Spacing ParseSpacing(const std::string& name);

// A closed boundary curve: either a polygon (vertices in traversal order,
// closing edge implied) or a circle.
struct BoundaryShape {
  enum class Kind { kPolygon, kCircle };

  Kind kind = Kind::kPolygon;
  std::string name;
  std::vector<Complex> vertices;  // polygon only
  Complex center{0.0, 0.0};       // circle only
  double radius = 1.0;            // circle only
  bool approximate = false;       // vertex list only reproduces a sketch

  int EdgeCount() const {
    return kind == Kind::kCircle ? 1 : static_cast<int>(vertices.size());
  }
  // Largest distance of a boundary point from the origin; used as the
  // length scale for geometric tolerances.
  double Scale() const;

  // Canonical square: center 0, side 2, vertices (-1-i, 1-i, 1+i, -1+i).
  static BoundaryShape CanonicalSquare();
  static BoundaryShape Polygon(std::vector<Complex> vertices,
                               std::string name = "polygon");
  static BoundaryShape Circle(Complex center = {}, double radius = 1.0);
  // Equilateral triangle inscribed in the unit circle, apex at +i.
  static BoundaryShape Triangle();
  // A winding, non-convex strip. Hand-drawn approximation of a snake-like
  // domain; only meant for the conditioning study.
  static BoundaryShape Snake();
  // "square" | "triangle" | "snake" | "circle".
  static BoundaryShape Preset(const std::string& name);
};

struct BoundaryDiscretization {
  CVector z;       // nodes, edge by edge, ascending parameter within an edge
  RVector w_quad;  // quadrature weights incl. the edge Jacobian
  BoundaryShape shape;
  Spacing spacing = Spacing::kGauss;
  int nodes_per_edge = 0;

  Eigen::Index size() const { return z.size(); }
};

// Discretizes each edge (mapped affinely from [-1, 1]) with `k_per_edge`
// nodes. For a circle, `k_per_edge` is the total node count and spacing must
// be equispaced. Throws GeometryError for repeated polygon vertices.
BoundaryDiscretization BoundaryNodes(const BoundaryShape& shape,
                                     int k_per_edge, Spacing spacing);

}  // namespace crroots

#endif  // CRROOTS_QUADRATURE_HPP_
