// Copyright 2026 The crroots Authors
// SPDX-License-Identifier: Apache-2.0
//
// Roots of an analytic function in a square D = {|Re(z - z0)|, |Im(z - z0)|
// <= l}. The function is sampled on the boundary of the canonical square
// after the map z -> l z + z0, expanded in a recurrence basis by least
// squares, and the roots of the expansion are the eigenvalues of its
// colleague matrix. The adaptive driver splits squares into quadrants until
// every leaf expansion converges.

#ifndef CRROOTS_ROOTFIND_HPP_
#define CRROOTS_ROOTFIND_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "crroots/analytic.hpp"
#include "crroots/basis.hpp"

namespace crroots {

struct RootfindOptions {
  double eps_exp = 1e-15;
  double eps_eig = 1e-15;
  double delta = 1e-6;
  int order = 100;        // non-adaptive starting order
  bool escalate = true;   // non-adaptive: double the order until converged
  int n_max = 200;
  int n_exp = 30;         // adaptive expansion order
  int newton_iters = 0;   // 0..3
  int max_depth = 20;
  std::uint64_t seed = 1;
  int threads = 1;        // 0 selects the hardware concurrency
  bool correction = true;
  bool record_rotations = false;
  int max_qr_iterations = 80;

  // Throws InvalidArgument for out-of-range values.
  void Validate() const;
};

struct RootReport {
  Complex value;
  double eta = 0.0;
  std::size_t square_id = 0;
  int depth = 0;
  bool refined = false;
  std::optional<std::size_t> duplicate_of;
};

struct SquareNode {
  std::size_t id = 0;
  long parent = -1;
  Complex center;
  double half_side = 0.0;
  int depth = 0;
  bool leaf = true;
  bool converged = false;
  double expansion_error = 0.0;
  int n_roots = 0;
};

struct RootfindDiagnostics {
  long n_eigs = 0;      // converged leaves whose colleague matrix was solved
  int n_levels = 0;     // deepest level + 1
  long squares = 0;
  int order = 0;        // expansion order used
  double expansion_error = 0.0;  // largest over solved squares
  double q_norm_max = 0.0;
  double max_rotation = 1.0;
  long corrections = 0;
  long rotations = 0;
  long qr_iterations = 0;
  long duplicates_removed = 0;
  int basis_retries = 0;
  double wall_time_seconds = 0.0;
  std::vector<double> rotation_sizes;  // when options.record_rotations
};

struct RootfindResult {
  std::vector<RootReport> roots;
  std::vector<SquareNode> tree;
  RootfindDiagnostics diagnostics;
};

// Bases on the canonical square, built on demand and shared between
// threads. Variant 0 uses the configured seed; higher variants use derived
// seeds and serve as replacements after a QR failure.
class BasisProvider {
 public:
  explicit BasisProvider(std::uint64_t seed);
  // Starts from an existing basis (e.g. loaded from a cache file). Throws
  // InvalidArgument unless it lives on the canonical square with Gauss nodes.
  explicit BasisProvider(std::shared_ptr<const PrecomputedBasis> initial);

  std::shared_ptr<const PrecomputedBasis> Get(int min_order, int variant = 0);
  std::uint64_t seed() const { return seed_; }

  // Nodes per edge used when building a basis of order n.
  static int NodesPerEdgeFor(int n);

 private:
  struct Entry {
    int variant;
    std::shared_ptr<const PrecomputedBasis> basis;
  };
  std::mutex mu_;
  std::uint64_t seed_;
  std::vector<Entry> entries_;
};

struct Expansion {
  CVector c;
  double error = 0.0;  // |c_n| / ||c||
};

// Throws EvaluationError(z, node) for a non-finite sample.
Expansion ExpandOnSquare(const AnalyticFn& f, const SquareDomain& d,
                         const PrecomputedBasis& pb, int n);

struct NewtonResult {
  Complex value;
  double eta = 0.0;
  bool refined = false;
  bool zero_derivative = false;
};

// eta(z) = |f(z) / f'(z)|; +inf when f'(z) = 0 and f(z) != 0.
double NewtonStep(const AnalyticFn& f, Complex z);

// Up to `iters` Newton steps; returns the iterate with the smallest eta seen
// (never worse than the input).
NewtonResult NewtonRefine(const AnalyticFn& f, Complex r, int iters);

// Drops roots that duplicate a root from a different square within
// max(10 max(eta_a, eta_b), 1e-12 scale), keeping the one with smaller eta.
// Roots from the same square are never merged.
std::vector<RootReport> DedupRoots(const std::vector<RootReport>& roots,
                                   double scale);
// Same decision, but returns every root with duplicate_of set to the index
// of the surviving root it was merged into.
std::vector<RootReport> MarkDuplicates(const std::vector<RootReport>& roots,
                                       double scale);

RootfindResult RootsNonadaptive(const AnalyticFn& f, const SquareDomain& d,
                                BasisProvider& bases,
                                const RootfindOptions& options);

RootfindResult RootsAdaptive(const AnalyticFn& f, const SquareDomain& d,
                             BasisProvider& bases,
                             const RootfindOptions& options);

}  // namespace crroots

#endif  // CRROOTS_ROOTFIND_HPP_
