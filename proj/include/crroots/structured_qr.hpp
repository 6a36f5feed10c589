// Copyright 2026 The crroots Authors
// SPDX-License-Identifier: Apache-2.0
//
// Shifted QR with complex orthogonal rotations acting directly on the
// generators (d, beta, p, q) of a colleague matrix, O(n) work per sweep.
//
// One sweep over a window of size N (0-based, k = N-1 .. 1):
//   eliminate:   rotations Q_k zero the superdiagonal of A + p q^T from the
//                bottom up, giving B + p_ q^T lower triangular;
//   rotate back: the same rotations applied from the right return the matrix
//                to lower Hessenberg form U C U^T.

#ifndef CRROOTS_STRUCTURED_QR_HPP_
#define CRROOTS_STRUCTURED_QR_HPP_

#include <span>
#include <vector>

#include "crroots/colleague.hpp"
#include "crroots/complex_core.hpp"

namespace crroots {

struct QrStats {
  long iterations = 0;
  long rotations = 0;
  long corrections = 0;
  double max_rotation = 1.0;
  std::vector<double> rotation_sizes;  // filled only when recording
};

struct QrOptions {
  double eps = 1e-15;
  int max_iterations_per_eigenvalue = 80;
  bool correction = true;
  bool record_rotations = false;
};

struct QrResult {
  CVector eigenvalues;
  QrStats stats;
};

// In-place kernels on a window. Sizes: d, p, q, q_tilde have N entries;
// beta and gamma have N-1. `rotations` receives N-1 entries, rotations[k-1]
// acting on the (k-1, k) plane. Returns the number of corrections applied.
// Throws QrBreakdown(0, k) if the rotation for plane (k-1, k) is isotropic.
int EliminateSuperdiagonal(std::span<Complex> d, std::span<const Complex> beta,
                           std::span<Complex> gamma, std::span<Complex> p,
                           std::span<const Complex> q,
                           std::span<Complex> q_tilde,
                           std::span<Rotation> rotations, bool correction);

// Overwrites d, beta and q; gamma and p are the elimination outputs.
void RotateBack(std::span<const Rotation> rotations, std::span<Complex> d,
                std::span<const Complex> gamma, std::span<const Complex> p,
                std::span<Complex> q, std::span<Complex> beta);

// Value-level wrappers, convenient in tests.
struct EliminationResult {
  std::vector<Rotation> rotations;
  CVector d;
  CVector gamma;
  CVector p;
  int corrections = 0;
};
EliminationResult EliminateSuperdiagonal(const ColleagueGenerators& g,
                                         bool correction = true);

// Generators of U C U^T after one unshifted sweep over the whole matrix.
ColleagueGenerators RotateBack(const EliminationResult& e,
                               const ColleagueGenerators& g);
ColleagueGenerators QrSweep(const ColleagueGenerators& g,
                            bool correction = true);

// Dense n x n matrix U = U_2 U_3 ... U_n for the given rotations.
CMatrix AccumulateRotations(const std::vector<Rotation>& rotations, int n);

// Eigenvalues of the represented matrix. Throws QrBreakdown (isotropic
// rotation) or NonConvergence (iteration cap for one eigenvalue).
QrResult QrEigenvalues(const ColleagueGenerators& g,
                       const QrOptions& options = {});

}  // namespace crroots

#endif  // CRROOTS_STRUCTURED_QR_HPP_
