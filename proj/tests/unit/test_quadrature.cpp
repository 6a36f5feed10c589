// Copyright 2026 The crroots Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "crroots/errors.hpp"
#include "crroots/quadrature.hpp"

using namespace crroots;

namespace {
constexpr double u = kUnitRoundoff;
}

TEST_CASE("small Gauss-Legendre rules") {
  GaussRule r = GaussLegendre(1);
  REQUIRE(r.nodes.size() == 1);
  CHECK(std::abs(r.nodes[0]) < 1e-16);
  CHECK(std::abs(r.weights[0] - 2.0) < 4 * u);

  r = GaussLegendre(2);
  CHECK(std::abs(r.nodes[0] + 1.0 / std::sqrt(3.0)) < 4 * u);
  CHECK(std::abs(r.nodes[1] - 1.0 / std::sqrt(3.0)) < 4 * u);
  CHECK(std::abs(r.weights[0] - 1.0) < 4 * u);
  CHECK(std::abs(r.weights[1] - 1.0) < 4 * u);

  CHECK_THROWS_AS(GaussLegendre(0), InvalidArgument);
}

TEST_CASE("16-point rule integrates x^30") {
  const GaussRule r = GaussLegendre(16);
  double s = 0.0;
  for (int i = 0; i < 16; ++i) s += r.weights[i] * std::pow(r.nodes[i], 30);
  CHECK(std::abs(s - 2.0 / 31.0) < 1e-15);
}

TEST_CASE("Gauss rules are exact through degree 2k-1") {
  for (int k : {1, 2, 3, 5, 8, 13, 30, 60, 100}) {
    const GaussRule r = GaussLegendre(k);
    for (int i = 1; i < k; ++i) CHECK(r.nodes[i - 1] < r.nodes[i]);
    CHECK(std::abs(r.weights.sum() - 2.0) < 50 * u * 2.0);
    for (int p = 0; p <= 2 * k - 1; ++p) {
      double s = 0.0;
      for (int i = 0; i < k; ++i) s += r.weights[i] * std::pow(r.nodes[i], p);
      const double exact = p % 2 ? 0.0 : 2.0 / (p + 1);
      CHECK(std::abs(s - exact) <= 50 * u * std::max(exact, 1.0 / (p + 1)));
    }
  }
}

TEST_CASE("square with one node per edge sits at the midpoints") {
  const auto bd = BoundaryNodes(BoundaryShape::CanonicalSquare(), 1, Spacing::kGauss);
  REQUIRE(bd.size() == 4);
  const Complex expected[4] = {{0, -1}, {1, 0}, {0, 1}, {-1, 0}};
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(bd.z[i] - expected[i]) < 1e-16);
    CHECK(std::abs(bd.w_quad[i] - 2.0) < 4 * u);
  }
}

TEST_CASE("square with 60 Gauss nodes per edge") {
  const auto bd = BoundaryNodes(BoundaryShape::CanonicalSquare(), 60, Spacing::kGauss);
  REQUIRE(bd.size() == 240);
  CHECK(bd.nodes_per_edge == 60);
  for (int e = 0; e < 4; ++e) {
    CHECK(std::abs(bd.w_quad.segment(60 * e, 60).sum() - 2.0) < 1e-14);
    for (int j = 0; j < 60; ++j) {
      const Complex z = bd.z[60 * e + j];
      CHECK(std::max(std::abs(z.real()), std::abs(z.imag())) == doctest::Approx(1.0));
    }
  }
  // first edge runs left to right along Im z = -1
  CHECK(bd.z[0].real() < bd.z[1].real());
  CHECK(bd.z[0].imag() == doctest::Approx(-1.0));
}

TEST_CASE("equispaced circle") {
  const auto bd = BoundaryNodes(BoundaryShape::Circle(), 64, Spacing::kEquispaced);
  REQUIRE(bd.size() == 64);
  for (int j = 0; j < 64; ++j) {
    CHECK(std::abs(bd.z[j] - std::polar(1.0, 2 * std::numbers::pi * j / 64)) < 1e-15);
    CHECK(std::abs(bd.w_quad[j] - 2 * std::numbers::pi / 64) < 1e-16);
  }
  CHECK_THROWS_AS(BoundaryNodes(BoundaryShape::Circle(), 64, Spacing::kGauss),
                  InvalidArgument);
}

TEST_CASE("polygon total weight equals perimeter") {
  for (const char* name : {"square", "triangle", "snake"}) {
    const BoundaryShape s = BoundaryShape::Preset(name);
    const auto bd = BoundaryNodes(s, 12, Spacing::kGauss);
    double perimeter = 0.0;
    for (int e = 0; e < s.EdgeCount(); ++e)
      perimeter += std::abs(s.vertices[(e + 1) % s.EdgeCount()] - s.vertices[e]);
    CHECK(bd.w_quad.sum() == doctest::Approx(perimeter).epsilon(1e-13));
    const auto eq = BoundaryNodes(s, 12, Spacing::kEquispaced);
    CHECK(eq.w_quad.sum() == doctest::Approx(perimeter).epsilon(1e-13));
  }
  CHECK(BoundaryShape::Snake().approximate);
  CHECK_FALSE(BoundaryShape::CanonicalSquare().approximate);
}

TEST_CASE("geometry errors") {
  CHECK_THROWS_AS(BoundaryNodes(BoundaryShape::Polygon({0.0, 1.0, 1.0}), 4, Spacing::kGauss),
                  GeometryError);
  CHECK_THROWS_AS(BoundaryShape::Preset("hexagon"), InvalidArgument);
  CHECK_THROWS_AS(BoundaryNodes(BoundaryShape::CanonicalSquare(), 0, Spacing::kGauss),
                  InvalidArgument);
  CHECK(ParseSpacing("equispaced") == Spacing::kEquispaced);
  CHECK(std::string(SpacingName(Spacing::kGauss)) == "gauss");
}
