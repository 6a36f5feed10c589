// Copyright 2026 The crroots Authors
// SPDX-License-Identifier: Apache-2.0
//
// Canned experiments behind the `cond` and `bench` commands: the basis
// conditioning study over boundary shapes, and the table checks on the five
// catalog functions.

#ifndef CRROOTS_EXPERIMENTS_HPP_
#define CRROOTS_EXPERIMENTS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "crroots/quadrature.hpp"

namespace crroots {

struct ConditionOptions {
  std::string shape = "square";  // square | triangle | snake | circle
  std::vector<int> orders = {25, 50, 100};
  int trials = 10;
  Spacing spacing = Spacing::kGauss;
  int nodes_per_edge = 0;  // 0: n/2 + 10 per edge (total 4(n/2 + 10) on a circle)
  std::uint64_t seed = 1;
};

struct ConditionRow {
  int order = 0;
  int nodes_per_edge = 0;
  int trials = 0;
  int breakdowns = 0;  // trials whose basis broke down on every retry
  double mean_condition = 0.0;
  double min_condition = 0.0;
  double max_condition = 0.0;
};

// Trial t uses seed + t. With equispaced spacing on a polygon the basis is
// built on equispaced nodes and G is formed from its recurrence at Gauss
// nodes with the same count per edge.
std::vector<ConditionRow> ConditionExperiment(const ConditionOptions& options);

struct BenchCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct BenchCase {
  std::string function;
  bool adaptive = false;
  int order = 0;
  int newton_iters = 0;
  Complex center;
  double half_side = 0.0;
  std::size_t n_roots = 0;
  double max_eta = 0.0;
  double q_norm = 0.0;
  int n_levels = 0;
  long n_eigs = 0;
  double max_rotation = 0.0;
  long corrections = 0;
  double wall_time_seconds = 0.0;
  std::vector<BenchCheck> checks;

  bool passed() const;
};

struct BenchOptions {
  std::string only;  // catalog name, or empty for every function
  int threads = 1;
  std::uint64_t seed = 1;
};

struct BenchReport {
  std::vector<BenchCase> cases;
  double wall_time_seconds = 0.0;

  bool passed() const;
};

// Runs the table cases with both tolerances at machine epsilon. f_mult is
// refined with three Newton steps; the other cases report raw eigenvalues.
// Throws InvalidArgument for an unknown suite or function name.
BenchReport RunBenchSuite(const std::string& suite, const BenchOptions& options);

}  // namespace crroots

#endif  // CRROOTS_EXPERIMENTS_HPP_
