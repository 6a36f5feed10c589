// Copyright 2026 The crroots Authors
// SPDX-License-Identifier: Apache-2.0
//
// Polynomial bases on a closed boundary that satisfy a three-term recurrence
//
//   z P_j(z) = beta_j P_{j-1}(z) + alpha_{j+1} P_j(z) + beta_{j+1} P_{j+1}(z),
//
// built by complex (unconjugated) orthogonalization of (1, z, z^2, ...)
// sampled at the boundary nodes, with random real weights in [0, 1] defining
// the bilinear form. Random weights are what keep the basis well conditioned;
// quadrature weights in their place break down immediately on the square.
//
// Storage convention: alpha[j] holds alpha_{j+1} and beta[j] holds
// beta_{j+1}, j = 0..n-1. node_values(i, j) = P_j(z_i).

#ifndef CRROOTS_BASIS_HPP_
#define CRROOTS_BASIS_HPP_

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>

#include "crroots/complex_core.hpp"
#include "crroots/quadrature.hpp"

namespace crroots {

// Weights drawn i.i.d. from (0, 1) with std::mt19937_64 seeded by `seed`:
// each draw takes the top 53 bits of one 64-bit output r and returns
// ((r >> 11) + 0.5) * 2^-53, so the stream is identical on every platform.
RVector RandomWeights(Eigen::Index m, std::uint64_t seed);

// Seed used for the attempt-th retry after a breakdown (attempt 0 = seed).
std::uint64_t DeriveSeed(std::uint64_t seed, int attempt);

struct RecurrenceBasis {
  CVector alpha;
  CVector beta;
  CMatrix node_values;
  BoundaryDiscretization boundary;
  CVector bilinear_weights;
  std::uint64_t seed = 0;

  int order() const { return static_cast<int>(alpha.size()); }
  Eigen::Index nodes() const { return node_values.rows(); }

  // P_0(z)..P_up_to(z) by the forward recurrence.
  CVector Evaluate(Complex z, int up_to) const;
  CVector Evaluate(Complex z) const { return Evaluate(z, order()); }
  // Value of the constant P_0.
  Complex P0() const { return node_values(0, 0); }
};

// Raw orthogonalization of (1, z, ..., z^n) over the nodes `z` against the
// bilinear weights `w`. Nodes with zero weight are carried along passively.
// Reorthogonalizes against all previous vectors once, and a second time when
// the first pass leaves a relative coupling above 1e-13.
// Throws BasisBreakdown(j) if |beta_j| <= sqrt(eps) * (weighted scale of v).
struct OrthogonalizationResult {
  CVector alpha;
  CVector beta;
  CMatrix q;  // m x (n+1)
};
OrthogonalizationResult OrthogonalizeNodes(const CVector& z,
                                           const BilinearWeights& w, int n);

// One attempt with random weights from `seed`.
RecurrenceBasis Orthogonalize(const BoundaryDiscretization& boundary, int n,
                              std::uint64_t seed);

// Same, with caller-supplied bilinear weights (seed recorded as 0).
RecurrenceBasis OrthogonalizeWithWeights(const BoundaryDiscretization& boundary,
                                         int n, const BilinearWeights& w);

// Retries with DeriveSeed(seed, k) for k = 1, 2 after a breakdown; rethrows
// the last BasisBreakdown after `attempts` failures.
RecurrenceBasis OrthogonalizeWithRetry(const BoundaryDiscretization& boundary,
                                       int n, std::uint64_t seed,
                                       int attempts = 3);

// Residuals used by tests and diagnostics.
// max_{i,j} |[P_i, P_j]_w - delta_ij| over stored node values.
double OrthonormalityResidual(const RecurrenceBasis& basis);
// max_{j,i} |z_i P_j - beta_j P_{j-1} - alpha_{j+1} P_j - beta_{j+1} P_{j+1}|
// divided by the largest sum of the four term magnitudes over (j, i).
double RecurrenceResidual(const RecurrenceBasis& basis);

// G_ij = sqrt(w~_i) P_j(z~_i) with a Householder QR of G. The k-th
// reflector depends only on the first k columns, so the leading reflectors
// factor any leading column block; that is how expansions of order < n reuse
// one factorization.
class BasisMatrix {
 public:
  BasisMatrix() = default;
  // Factors G built from `values` (m x (n+1)) and quadrature weights.
  BasisMatrix(const CMatrix& values, const RVector& w_quad);
  explicit BasisMatrix(const RecurrenceBasis& basis)
      : BasisMatrix(basis.node_values, basis.boundary.w_quad) {}
  // Restores a stored factorization (cache files).
  BasisMatrix(CMatrix g, CMatrix reflectors, CMatrix r);

  const CMatrix& G() const { return g_; }
  const CMatrix& reflectors() const { return reflectors_; }
  const CMatrix& R() const { return r_; }
  int order() const { return static_cast<int>(g_.cols()) - 1; }
  Eigen::Index rows() const { return g_.rows(); }

  // Least-squares coefficients c (length n+1) minimizing ||G_{:,0:n} c - g||_2
  // in the conjugated 2-norm. n defaults to the full order. Throws
  // ConditioningError if the leading block is numerically rank deficient.
  CVector Solve(const CVector& g, int n = -1) const;

  // ||G - Q R|| / ||G|| (Frobenius).
  double RecompositionResidual() const;

 private:
  CMatrix g_;
  CMatrix reflectors_;  // column k: unit Householder vector, zero above row k
  CMatrix r_;           // (n+1) x (n+1) upper triangular
};

// sigma_max / sigma_min of the leading n+1 columns of G by a full singular
// value decomposition. Returns +inf when sigma_min < u * sigma_max.
double ConditionNumber(const BasisMatrix& bm, int n = -1);

// A basis plus its factored basis matrix; the unit a rootfinder consumes.
struct PrecomputedBasis {
  RecurrenceBasis basis;
  BasisMatrix matrix;

  int order() const { return basis.order(); }
};

// Canonical-square basis with `nodes_per_edge` Gauss nodes per side.
std::shared_ptr<const PrecomputedBasis> PrecomputeSquareBasis(
    int order, int nodes_per_edge, std::uint64_t seed);

// Basis cache file ("CRBASIS v1"): a text magic line, one JSON header line
// describing shape, seed, m, n and the section table, then the sections as
// little-endian float64 data with complex values stored as (re, im) pairs and
// matrices column-major.
void WriteBasisCache(const PrecomputedBasis& pb, std::ostream& out);
void SaveBasisCache(const PrecomputedBasis& pb, const std::string& path);
std::shared_ptr<const PrecomputedBasis> ReadBasisCache(std::istream& in);
std::shared_ptr<const PrecomputedBasis> LoadBasisCache(const std::string& path);

}  // namespace crroots

#endif  // CRROOTS_BASIS_HPP_
