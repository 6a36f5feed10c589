// Copyright 2026 The crroots Authors
// SPDX-License-Identifier: Apache-2.0

#include "crroots/rootfind.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <string>
#include <thread>

#include "crroots/colleague.hpp"
#include "crroots/errors.hpp"
#include "crroots/structured_qr.hpp"

namespace crroots {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Runs fn(0..count-1) on up to `threads` workers. If any call throws, the
// exception from the lowest index is rethrown after all workers finish.
template <class Fn>
void ParallelFor(std::size_t count, int threads, Fn&& fn) {
  if (threads <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t n_workers = std::min<std::size_t>(threads, count);
  std::vector<std::thread> pool;
  pool.reserve(n_workers);
  for (std::size_t t = 0; t < n_workers; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

int ResolveThreads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

bool IsCanonicalSquareBasis(const PrecomputedBasis& pb) {
  const BoundaryDiscretization& bd = pb.basis.boundary;
  if (bd.spacing != Spacing::kGauss) return false;
  if (bd.shape.kind != BoundaryShape::Kind::kPolygon) return false;
  return bd.shape.vertices == BoundaryShape::CanonicalSquare().vertices;
}

struct SquareSolve {
  std::vector<RootReport> roots;
  QrStats stats;
  double q_norm = 0.0;
  double expansion_error = 0.0;
  int retries = 0;
};

SquareSolve SolveExpansion(const AnalyticFn& f, const SquareDomain& d,
                           const PrecomputedBasis& pb, const Expansion& e,
                           const RootfindOptions& opts) {
  SquareSolve out;
  out.expansion_error = e.error;
  const int n_eff = EffectiveOrder(e.c);
  if (n_eff < 1) return out;

  const ColleagueGenerators g =
      ColleagueFromCoeffs(e.c.head(n_eff + 1), pb.basis);
  out.q_norm = StableNorm(g.q);
  QrOptions qo;
  qo.eps = opts.eps_eig;
  qo.max_iterations_per_eigenvalue = opts.max_qr_iterations;
  qo.correction = opts.correction;
  qo.record_rotations = opts.record_rotations;
  QrResult qr = QrEigenvalues(g, qo);
  out.stats = std::move(qr.stats);

  const double bound = 1.0 + opts.delta;
  for (Eigen::Index k = 0; k < qr.eigenvalues.size(); ++k) {
    const Complex t = qr.eigenvalues[k];
    if (!(std::abs(t.real()) < bound && std::abs(t.imag()) < bound)) continue;
    RootReport r;
    r.value = d.FromLocal(t);
    if (opts.newton_iters > 0) {
      const NewtonResult nr = NewtonRefine(f, r.value, opts.newton_iters);
      if (nr.refined && d.ContainsExtended(nr.value, opts.delta)) {
        r.value = nr.value;
        r.refined = true;
      }
    }
    r.eta = NewtonStep(f, r.value);
    out.roots.push_back(r);
  }
  return out;
}

// Expansion plus eigenvalue stage; a QR failure is retried once on a basis
// built from a different seed.
SquareSolve SolveSquare(const AnalyticFn& f, const SquareDomain& d,
                        BasisProvider& bases, const PrecomputedBasis& pb,
                        const Expansion& e, int n,
                        const RootfindOptions& opts) {
  try {
    return SolveExpansion(f, d, pb, e, opts);
  } catch (const QrBreakdown&) {
  } catch (const NonConvergence&) {
  }
  const auto alt = bases.Get(n, 1);
  SquareSolve out = SolveExpansion(f, d, *alt, ExpandOnSquare(f, d, *alt, n), opts);
  out.retries = 1;
  return out;
}

void Accumulate(RootfindDiagnostics& diag, const SquareSolve& s) {
  diag.q_norm_max = std::max(diag.q_norm_max, s.q_norm);
  diag.max_rotation = std::max(diag.max_rotation, s.stats.max_rotation);
  diag.corrections += s.stats.corrections;
  diag.rotations += s.stats.rotations;
  diag.qr_iterations += s.stats.iterations;
  diag.basis_retries += s.retries;
  diag.expansion_error = std::max(diag.expansion_error, s.expansion_error);
  diag.rotation_sizes.insert(diag.rotation_sizes.end(),
                             s.stats.rotation_sizes.begin(),
                             s.stats.rotation_sizes.end());
}

double Seconds(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since)
      .count();
}

}  // namespace

void RootfindOptions::Validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw InvalidArgument(what);
  };
  require(eps_exp > 0.0 && std::isfinite(eps_exp), "eps_exp must be > 0");
  require(eps_eig > 0.0 && std::isfinite(eps_eig), "eps_eig must be > 0");
  require(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1)");
  require(order >= 1, "order must be >= 1");
  require(n_max >= 1, "n_max must be >= 1");
  require(!escalate || order <= n_max, "order exceeds n_max");
  require(n_exp >= 1, "n_exp must be >= 1");
  require(newton_iters >= 0 && newton_iters <= 3, "newton_iters must be 0..3");
  require(max_depth >= 0 && max_depth <= 30, "max_depth must be 0..30");
  require(threads >= 0, "threads must be >= 0");
  require(max_qr_iterations >= 1, "QR iteration cap must be >= 1");
}

BasisProvider::BasisProvider(std::uint64_t seed) : seed_(seed) {}

BasisProvider::BasisProvider(std::shared_ptr<const PrecomputedBasis> initial)
    : seed_(initial ? initial->basis.seed : 0) {
  if (!initial) throw InvalidArgument("null basis");
  if (!IsCanonicalSquareBasis(*initial))
    throw InvalidArgument(
        "rootfinding needs a basis on the canonical square with Gauss nodes");
  entries_.push_back({0, std::move(initial)});
}

int BasisProvider::NodesPerEdgeFor(int n) { return std::max(60, (3 * n + 4) / 5); }

std::shared_ptr<const PrecomputedBasis> BasisProvider::Get(int min_order,
                                                           int variant) {
  std::lock_guard<std::mutex> lock(mu_);
  std::shared_ptr<const PrecomputedBasis> best;
  for (const Entry& e : entries_) {
    if (e.variant != variant || e.basis->order() < min_order) continue;
    if (!best || e.basis->order() < best->order()) best = e.basis;
  }
  if (best) return best;
  const int order = std::max(min_order, 100);
  const std::uint64_t seed =
      variant == 0 ? seed_ : DeriveSeed(seed_, 1000 + variant);
  auto built = PrecomputeSquareBasis(order, NodesPerEdgeFor(order), seed);
  entries_.push_back({variant, built});
  return built;
}

Expansion ExpandOnSquare(const AnalyticFn& f, const SquareDomain& d,
                         const PrecomputedBasis& pb, int n) {
  const BoundaryDiscretization& bd = pb.basis.boundary;
  const Eigen::Index m = bd.size();
  CVector g(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Complex v = f.EvalLocal(d.center, d.half_side, bd.z[i]);
    if (!IsFinite(v)) throw EvaluationError(d.FromLocal(bd.z[i]), static_cast<long>(i));
    g[i] = std::sqrt(bd.w_quad[i]) * v;
  }
  Expansion e;
  e.c = pb.matrix.Solve(g, n);
  const double norm = StableNorm(e.c);
  if (norm == 0.0)
    e.error = 0.0;
  else if (!std::isfinite(norm))
    e.error = kInf;
  else
    e.error = std::abs(e.c[n]) / norm;
  return e;
}

double NewtonStep(const AnalyticFn& f, Complex z) {
  const FnValue v = f(z);
  if (v.value == Complex{}) return 0.0;
  if (!IsFinite(v.value) || !IsFinite(v.deriv) || v.deriv == Complex{})
    return kInf;
  const double eta = std::abs(v.value / v.deriv);
  return std::isfinite(eta) ? eta : kInf;
}

NewtonResult NewtonRefine(const AnalyticFn& f, Complex r, int iters) {
  NewtonResult best{r, NewtonStep(f, r), false, false};
  Complex x = r;
  for (int k = 0; k < iters; ++k) {
    const FnValue v = f(x);
    if (v.value == Complex{}) break;
    if (v.deriv == Complex{}) {
      best.zero_derivative = true;
      break;
    }
    const Complex next = x - v.value / v.deriv;
    if (!IsFinite(next)) break;
    const double eta = NewtonStep(f, next);
    if (eta < best.eta) {
      best.value = next;
      best.eta = eta;
      best.refined = true;
    }
    x = next;
  }
  return best;
}

std::vector<RootReport> MarkDuplicates(const std::vector<RootReport>& roots,
                                       double scale) {
  const std::size_t n = roots.size();
  if (n == 0) return {};
  double max_eta = 0.0;
  for (const auto& r : roots)
    if (std::isfinite(r.eta)) max_eta = std::max(max_eta, r.eta);
  const double floor = 1e-12 * scale;
  const double reach = std::max(10.0 * max_eta, floor);

  // Visit roots by increasing eta so every survivor is the best of its group.
  std::vector<std::size_t> by_eta(n);
  std::iota(by_eta.begin(), by_eta.end(), 0);
  std::stable_sort(by_eta.begin(), by_eta.end(), [&](std::size_t a, std::size_t b) {
    return roots[a].eta < roots[b].eta;
  });
  std::vector<std::size_t> by_re(n);
  std::iota(by_re.begin(), by_re.end(), 0);
  std::stable_sort(by_re.begin(), by_re.end(), [&](std::size_t a, std::size_t b) {
    return roots[a].value.real() < roots[b].value.real();
  });

  std::vector<long> merged_into(n, -1);
  for (std::size_t a : by_eta) {
    if (merged_into[a] >= 0) continue;
    const double re = roots[a].value.real();
    auto lo = std::lower_bound(by_re.begin(), by_re.end(), re - reach,
                               [&](std::size_t i, double x) {
                                 return roots[i].value.real() < x;
                               });
    for (auto it = lo; it != by_re.end() && roots[*it].value.real() <= re + reach;
         ++it) {
      const std::size_t b = *it;
      if (b == a || merged_into[b] >= 0) continue;
      if (roots[b].square_id == roots[a].square_id) continue;
      const double eta_ab = std::max(roots[a].eta, roots[b].eta);
      const double tol = std::max(std::isfinite(eta_ab) ? 10.0 * eta_ab : 0.0, floor);
      if (std::abs(roots[a].value - roots[b].value) <= tol)
        merged_into[b] = static_cast<long>(a);
    }
  }

  std::vector<RootReport> out = roots;
  for (std::size_t i = 0; i < n; ++i)
    if (merged_into[i] >= 0) out[i].duplicate_of = merged_into[i];
  return out;
}

std::vector<RootReport> DedupRoots(const std::vector<RootReport>& roots,
                                   double scale) {
  std::vector<RootReport> out;
  for (const RootReport& r : MarkDuplicates(roots, scale))
    if (!r.duplicate_of) out.push_back(r);
  return out;
}

RootfindResult RootsNonadaptive(const AnalyticFn& f, const SquareDomain& d,
                                BasisProvider& bases,
                                const RootfindOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  opts.Validate();
  d.Validate();

  int n = opts.order;
  std::shared_ptr<const PrecomputedBasis> pb;
  Expansion e;
  for (;;) {
    pb = bases.Get(n);
    e = ExpandOnSquare(f, d, *pb, n);
    if (e.error <= opts.eps_exp || !opts.escalate) break;
    if (n >= opts.n_max) throw ExpansionNotConverged(opts.n_max, e.error);
    n = std::min(2 * n, opts.n_max);
  }

  const SquareSolve s = SolveSquare(f, d, bases, *pb, e, n, opts);
  RootfindResult result;
  result.roots = s.roots;
  SquareNode root;
  root.center = d.center;
  root.half_side = d.half_side;
  root.converged = e.error <= opts.eps_exp;
  root.expansion_error = e.error;
  root.n_roots = static_cast<int>(s.roots.size());
  result.tree.push_back(root);

  RootfindDiagnostics& diag = result.diagnostics;
  Accumulate(diag, s);
  diag.n_eigs = 1;
  diag.n_levels = 1;
  diag.squares = 1;
  diag.order = n;
  diag.wall_time_seconds = Seconds(start);
  return result;
}

RootfindResult RootsAdaptive(const AnalyticFn& f, const SquareDomain& d,
                             BasisProvider& bases, const RootfindOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  opts.Validate();
  d.Validate();
  const int threads = ResolveThreads(opts.threads);
  const int n = opts.n_exp;
  const auto pb = bases.Get(n);

  RootfindResult result;
  RootfindDiagnostics& diag = result.diagnostics;
  diag.order = n;
  std::vector<SquareNode>& tree = result.tree;
  SquareNode root;
  root.center = d.center;
  root.half_side = d.half_side;
  tree.push_back(root);

  std::vector<RootReport> all_roots;
  std::vector<std::size_t> offending;
  std::vector<std::size_t> level = {0};
  int deepest = 0;

  auto annotate = [](Error& err, std::size_t id) {
    err.set_square_id(static_cast<long>(id));
    err.AddContext("square " + std::to_string(id));
  };

  while (!level.empty()) {
    std::vector<Expansion> expansions(level.size());
    ParallelFor(level.size(), threads, [&](std::size_t i) {
      const SquareNode& node = tree[level[i]];
      try {
        expansions[i] = ExpandOnSquare(f, {node.center, node.half_side}, *pb, n);
      } catch (Error& err) {
        annotate(err, node.id);
        throw;
      }
    });

    std::vector<std::size_t> solve;
    std::vector<std::size_t> solve_slot;
    std::vector<std::size_t> next;
    for (std::size_t i = 0; i < level.size(); ++i) {
      const std::size_t id = level[i];
      deepest = std::max(deepest, tree[id].depth);
      tree[id].expansion_error = expansions[i].error;
      if (expansions[i].error <= opts.eps_exp) {
        tree[id].converged = true;
        solve.push_back(id);
        solve_slot.push_back(i);
        continue;
      }
      if (tree[id].depth >= opts.max_depth) {
        offending.push_back(id);
        continue;
      }
      tree[id].leaf = false;
      const double h = 0.5 * tree[id].half_side;
      const Complex c = tree[id].center;
      const Complex offsets[4] = {{-h, -h}, {h, -h}, {-h, h}, {h, h}};
      for (const Complex& off : offsets) {
        SquareNode child;
        child.id = tree.size();
        child.parent = static_cast<long>(id);
        child.center = c + off;
        child.half_side = h;
        child.depth = tree[id].depth + 1;
        next.push_back(child.id);
        tree.push_back(child);
      }
    }

    std::vector<SquareSolve> solved(solve.size());
    ParallelFor(solve.size(), threads, [&](std::size_t k) {
      const SquareNode& node = tree[solve[k]];
      try {
        solved[k] = SolveSquare(f, {node.center, node.half_side}, bases, *pb,
                                expansions[solve_slot[k]], n, opts);
      } catch (Error& err) {
        annotate(err, node.id);
        throw;
      }
    });

    for (std::size_t k = 0; k < solve.size(); ++k) {
      SquareNode& node = tree[solve[k]];
      node.n_roots = static_cast<int>(solved[k].roots.size());
      for (RootReport r : solved[k].roots) {
        r.square_id = node.id;
        r.depth = node.depth;
        all_roots.push_back(r);
      }
      Accumulate(diag, solved[k]);
    }
    diag.n_eigs += static_cast<long>(solve.size());
    level = std::move(next);
  }

  if (!offending.empty()) throw MaxDepthExceeded(opts.max_depth, offending);

  result.roots = DedupRoots(all_roots, d.half_side);
  diag.duplicates_removed =
      static_cast<long>(all_roots.size() - result.roots.size());
  diag.n_levels = deepest + 1;
  diag.squares = static_cast<long>(tree.size());
  diag.wall_time_seconds = Seconds(start);
  return result;
}

}  // namespace crroots
