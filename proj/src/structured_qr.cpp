// Copyright 2026 The crroots Authors
// SPDX-License-Identifier: Apache-2.0

#include "crroots/structured_qr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "crroots/errors.hpp"

namespace crroots {

int EliminateSuperdiagonal(std::span<Complex> d, std::span<const Complex> beta,
                           std::span<Complex> gamma, std::span<Complex> p,
                           std::span<const Complex> q,
                           std::span<Complex> q_tilde,
                           std::span<Rotation> rotations, bool correction) {
  const int n = static_cast<int>(d.size());
  for (int i = 0; i + 1 < n; ++i) gamma[i] = beta[i];
  for (int i = 0; i < n; ++i) q_tilde[i] = q[i];
  int corrections = 0;

  for (int k = n - 1; k >= 1; --k) {
    Rotation rot;
    try {
      rot = MakeRotation(beta[k - 1] + p[k - 1] * q[k], d[k] + p[k] * q[k]);
    } catch (const IsotropicVector&) {
      throw QrBreakdown(0, k);
    }
    rotations[k - 1] = rot;

    if (k >= 2) gamma[k - 2] = rot.c * gamma[k - 2] + rot.s * q_tilde[k] * p[k - 2];
    std::tie(d[k - 1], gamma[k - 1]) = rot.Apply(d[k - 1], gamma[k - 1]);
    Complex b;
    std::tie(b, d[k]) = rot.Apply(beta[k - 1], d[k]);
    std::tie(p[k - 1], p[k]) = rot.Apply(p[k - 1], p[k]);

    if (correction && q[k] != Complex{}) {
      const double lhs = std::norm(p[k - 1] * q[k]) + std::norm(p[k] * q[k]);
      const double rhs = std::norm(b) + std::norm(d[k]);
      if (lhs > rhs) {
        p[k - 1] = -b / q[k];
        ++corrections;
      }
    }
    std::tie(q_tilde[k - 1], q_tilde[k]) = rot.Apply(q_tilde[k - 1], q_tilde[k]);
  }
  return corrections;
}

void RotateBack(std::span<const Rotation> rotations, std::span<Complex> d,
                std::span<const Complex> gamma, std::span<const Complex> p,
                std::span<Complex> q, std::span<Complex> beta) {
  const int n = static_cast<int>(d.size());
  for (int k = n - 1; k >= 1; --k) {
    const Rotation& rot = rotations[k - 1];
    std::tie(d[k - 1], beta[k - 1]) = rot.Apply(d[k - 1], -p[k - 1] * q[k]);
    d[k] = rot.s * gamma[k - 1] + rot.c * d[k];
    std::tie(q[k - 1], q[k]) = rot.Apply(q[k - 1], q[k]);
  }
}

EliminationResult EliminateSuperdiagonal(const ColleagueGenerators& g,
                                         bool correction) {
  const int n = g.size();
  if (n < 2) throw InvalidArgument("elimination needs a window of size >= 2");
  EliminationResult out;
  out.d = g.d;
  out.p = g.p;
  out.gamma.resize(n - 1);
  out.rotations.resize(n - 1);
  CVector q_tilde(n);
  out.corrections = EliminateSuperdiagonal(
      {out.d.data(), static_cast<size_t>(n)},
      {g.beta.data(), static_cast<size_t>(n - 1)},
      {out.gamma.data(), static_cast<size_t>(n - 1)},
      {out.p.data(), static_cast<size_t>(n)},
      {g.q.data(), static_cast<size_t>(n)},
      {q_tilde.data(), static_cast<size_t>(n)}, out.rotations, correction);
  return out;
}

ColleagueGenerators RotateBack(const EliminationResult& e,
                               const ColleagueGenerators& g) {
  const int n = g.size();
  ColleagueGenerators out;
  out.d = e.d;
  out.p = e.p;
  out.q = g.q;
  out.beta.resize(n - 1);
  RotateBack(e.rotations, {out.d.data(), static_cast<size_t>(n)},
             {e.gamma.data(), static_cast<size_t>(n - 1)},
             {out.p.data(), static_cast<size_t>(n)},
             {out.q.data(), static_cast<size_t>(n)},
             {out.beta.data(), static_cast<size_t>(n - 1)});
  return out;
}

ColleagueGenerators QrSweep(const ColleagueGenerators& g, bool correction) {
  return RotateBack(EliminateSuperdiagonal(g, correction), g);
}

CMatrix AccumulateRotations(const std::vector<Rotation>& rotations, int n) {
  CMatrix u = CMatrix::Identity(n, n);
  for (int k = 1; k < n; ++k) {
    const Rotation& r = rotations[k - 1];
    const CVector a = u.col(k - 1);
    const CVector b = u.col(k);
    u.col(k - 1) = r.c * a + r.s * b;
    u.col(k) = -r.s * a + r.c * b;
  }
  return u;
}

QrResult QrEigenvalues(const ColleagueGenerators& g, const QrOptions& options) {
  const int n = g.size();
  if (n < 1) throw InvalidArgument("QR needs n >= 1");
  if (!(options.eps > 0.0)) throw InvalidArgument("QR tolerance must be > 0");
  if (g.beta.size() != n - 1 || g.p.size() != n || g.q.size() != n)
    throw DimensionError("inconsistent generator lengths");

  QrResult result;
  QrStats& stats = result.stats;
  CVector d = g.d, beta = g.beta, p = g.p, q = g.q;
  CVector gamma(std::max(n - 1, 0)), q_tilde(n);
  std::vector<Rotation> rotations(std::max(n - 1, 0));
  const double floor = std::numeric_limits<double>::min() * 1e4;
  const auto sz = [](int k) { return static_cast<size_t>(k); };

  for (int i = 0; i + 1 < n; ++i) {
    Complex mu_sum{0.0, 0.0};
    int iterations = 0;
    for (;;) {
      const Complex c11 = d[i] + p[i] * q[i];
      const Complex c12 = beta[i] + p[i] * q[i + 1];
      const Complex c21 = beta[i] + p[i + 1] * q[i];
      const Complex c22 = d[i + 1] + p[i + 1] * q[i + 1];
      const double tol =
          options.eps * (std::abs(c11 + mu_sum) + std::abs(c22 + mu_sum) + floor);
      if (std::abs(c12) < tol) break;
      if (iterations >= options.max_iterations_per_eigenvalue)
        throw NonConvergence(i, iterations);

      const Complex half = 0.5 * (c11 + c22);
      const Complex diff = 0.5 * (c11 - c22);
      const Complex disc = std::sqrt(diff * diff + c12 * c21);
      const Complex mu1 = half + disc;
      const Complex mu2 = half - disc;
      const double e1 = std::abs(mu1 - c11);
      const double e2 = std::abs(mu2 - c11);
      Complex mu;
      if (e1 < e2)
        mu = mu1;
      else if (e2 < e1)
        mu = mu2;
      else
        mu = std::abs(mu1.imag()) <= std::abs(mu2.imag()) ? mu1 : mu2;

      const int w = n - i;
      for (int j = i; j < n; ++j) d[j] -= mu;
      mu_sum += mu;
      try {
        stats.corrections += EliminateSuperdiagonal(
            {d.data() + i, sz(w)}, {beta.data() + i, sz(w - 1)},
            {gamma.data() + i, sz(w - 1)}, {p.data() + i, sz(w)},
            {q.data() + i, sz(w)}, {q_tilde.data() + i, sz(w)},
            {rotations.data(), sz(w - 1)}, options.correction);
      } catch (const QrBreakdown& e) {
        throw QrBreakdown(i, i + e.position());
      }
      RotateBack({rotations.data(), sz(w - 1)}, {d.data() + i, sz(w)},
                 {gamma.data() + i, sz(w - 1)}, {p.data() + i, sz(w)},
                 {q.data() + i, sz(w)}, {beta.data() + i, sz(w - 1)});

      for (int k = 0; k + 1 < w; ++k) {
        const double size = rotations[k].Size();
        stats.max_rotation = std::max(stats.max_rotation, size);
        if (options.record_rotations) stats.rotation_sizes.push_back(size);
      }
      stats.rotations += w - 1;
      ++stats.iterations;
      ++iterations;
    }
    for (int j = i; j < n; ++j) d[j] += mu_sum;
  }

  result.eigenvalues.resize(n);
  for (int i = 0; i < n; ++i) result.eigenvalues[i] = d[i] + p[i] * q[i];
  return result;
}

}  // namespace crroots
