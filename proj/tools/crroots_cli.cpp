// Copyright 2026 The crroots Authors
// SPDX-License-Identifier: Apache-2.0
//
// crroots precompute | roots | cond | bench. Talks to the library only
// through crroots.h.
//
// Exit codes: 0 success, 1 bench checks failed, 2 bad arguments, otherwise
// the crr_status of the failing call (3 parse error, 4 evaluation error,
// 5 expansion not converged, 6 max depth exceeded, 7 QR breakdown, ...).

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "crroots/crroots.h"

namespace {

constexpr int kExitChecksFailed = 1;
constexpr int kExitUsage = 2;

struct UsageError {
  std::string message;
};

int Report(crr_status status) {
  std::fprintf(stderr, "crroots: %s: %s\n", crr_status_name(status),
               crr_last_error());
  return static_cast<int>(status);
}

crr_complex ParseComplex(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    throw UsageError{"expected RE,IM but got '" + text + "'"};
  try {
    std::size_t used_re = 0;
    std::size_t used_im = 0;
    const std::string re = text.substr(0, comma);
    const std::string im = text.substr(comma + 1);
    crr_complex z{std::stod(re, &used_re), std::stod(im, &used_im)};
    if (used_re != re.size() || used_im != im.size()) throw std::invalid_argument("");
    return z;
  } catch (const std::exception&) {
    throw UsageError{"expected RE,IM but got '" + text + "'"};
  }
}

std::uint64_t ResolveSeed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  const char* env = std::getenv("CRROOTS_SEED");
  if (!env || !*env) return 1;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(env, &used);
    if (used != std::string(env).size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw UsageError{std::string("CRROOTS_SEED is not an integer: '") + env + "'"};
  }
}

void Emit(char* text) {
  std::fputs(text, stdout);
  crr_string_free(text);
}

struct PrecomputeArgs {
  int order = 100;
  int nodes_per_edge = 60;
  std::optional<std::uint64_t> seed;
  std::string out;
  bool allow_sparse = false;
};

int RunPrecompute(const PrecomputeArgs& a) {
  if (2 * a.nodes_per_edge < a.order && !a.allow_sparse)
    throw UsageError{"--nodes-per-edge " + std::to_string(a.nodes_per_edge) +
                     " is below order/2 = " + std::to_string(a.order / 2) +
                     "; pass --allow-sparse to build it anyway"};
  crr_basis* basis = nullptr;
  crr_status s = crr_basis_build(a.order, a.nodes_per_edge, ResolveSeed(a.seed), &basis);
  if (s != CRR_OK) return Report(s);
  s = crr_basis_save(basis, a.out.c_str());
  const int nodes = crr_basis_nodes(basis);
  crr_basis_free(basis);
  if (s != CRR_OK) return Report(s);
  std::fprintf(stderr, "wrote %s (n=%d, m=%d)\n", a.out.c_str(), a.order, nodes);
  return 0;
}

struct RootsArgs {
  std::string fn;
  std::string expr;
  std::string center = "0,0";
  double half_side = 1.0;
  bool adaptive = false;
  std::optional<int> n_exp;
  std::optional<int> order;
  bool fixed_order = false;
  std::optional<int> n_max;
  int newton = 0;
  std::optional<double> delta;
  std::optional<double> eps_exp;
  std::optional<double> eps_eig;
  std::optional<int> max_depth;
  std::string basis;
  std::string format = "json";
  std::optional<std::uint64_t> seed;
  int threads = 0;
  bool no_timing = false;
};

int RunRoots(const RootsArgs& a) {
  crr_options o;
  crr_options_default(&o);
  o.adaptive = a.adaptive ? 1 : 0;
  if (a.n_exp) o.n_exp = *a.n_exp;
  if (a.order) o.order = *a.order;
  o.fixed_order = a.fixed_order ? 1 : 0;
  if (a.n_max) o.n_max = *a.n_max;
  o.newton_iters = a.newton;
  if (a.delta) o.delta = *a.delta;
  if (a.eps_exp) o.eps_exp = *a.eps_exp;
  if (a.eps_eig) o.eps_eig = *a.eps_eig;
  if (a.max_depth) o.max_depth = *a.max_depth;
  o.seed = ResolveSeed(a.seed);
  o.threads = a.threads;
  const crr_complex center = ParseComplex(a.center);

  crr_function* f = nullptr;
  crr_status s = a.fn.empty() ? crr_function_parse(a.expr.c_str(), &f)
                              : crr_function_from_catalog(a.fn.c_str(), &f);
  if (s != CRR_OK) return Report(s);

  crr_basis* basis = nullptr;
  if (!a.basis.empty()) {
    s = crr_basis_load(a.basis.c_str(), &basis);
    if (s != CRR_OK) {
      crr_function_free(f);
      return Report(s);
    }
  }

  crr_result* result = nullptr;
  s = crr_find_roots(f, center, a.half_side, &o, basis, &result);
  crr_basis_free(basis);
  crr_function_free(f);
  if (s != CRR_OK) return Report(s);

  char* text = nullptr;
  s = a.format == "csv" ? crr_result_to_csv(result, &text)
                        : crr_result_to_json(result, a.no_timing ? 0 : 1, &text);
  crr_result_free(result);
  if (s != CRR_OK) return Report(s);
  Emit(text);
  return 0;
}

struct CondArgs {
  std::string shape = "square";
  std::vector<int> orders = {25, 50, 100};
  int trials = 10;
  std::string spacing;
  int nodes_per_edge = 0;
  std::optional<std::uint64_t> seed;
};

int RunCond(const CondArgs& a) {
  std::string spacing = a.spacing;
  if (spacing.empty()) spacing = a.shape == "circle" ? "equispaced" : "gauss";
  char* csv = nullptr;
  const crr_status s = crr_condition_experiment(
      a.shape.c_str(), a.orders.data(), a.orders.size(), a.trials,
      spacing.c_str(), a.nodes_per_edge, ResolveSeed(a.seed), &csv);
  if (s != CRR_OK) return Report(s);
  Emit(csv);
  return 0;
}

struct BenchArgs {
  std::string suite = "paper";
  std::string only;
  std::string format = "json";
  int threads = 0;
  std::optional<std::uint64_t> seed;
};

int RunBench(const BenchArgs& a) {
  char* text = nullptr;
  int passed = 0;
  const crr_status s =
      crr_bench_run(a.suite.c_str(), a.only.c_str(), a.threads, ResolveSeed(a.seed),
                    a.format == "json" ? 1 : 0, &text, &passed);
  if (s != CRR_OK) return Report(s);
  Emit(text);
  return passed ? 0 : kExitChecksFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Roots of analytic functions in a square"};
  app.set_version_flag("--version", std::string(crr_version()));
  app.require_subcommand(1);

  PrecomputeArgs pre;
  auto* cmd_pre = app.add_subcommand("precompute", "Build a basis and write a CRBASIS cache file");
  cmd_pre->add_option("--order", pre.order, "Basis order n")->check(CLI::NonNegativeNumber);
  cmd_pre->add_option("--nodes-per-edge", pre.nodes_per_edge, "Gauss nodes per side")
      ->check(CLI::PositiveNumber);
  cmd_pre->add_option("--seed", pre.seed, "Random-weight seed (default $CRROOTS_SEED or 1)");
  cmd_pre->add_option("--out", pre.out, "Output file")->required();
  cmd_pre->add_flag("--allow-sparse", pre.allow_sparse, "Accept fewer than n/2 nodes per side");

  RootsArgs roots;
  auto* cmd_roots = app.add_subcommand("roots", "Find the roots of a function in a square");
  auto* opt_fn = cmd_roots->add_option("--fn", roots.fn, "Catalog function name");
  auto* opt_expr = cmd_roots->add_option("--expr", roots.expr, "Expression in z");
  opt_fn->excludes(opt_expr);
  cmd_roots->add_option("--center", roots.center, "Square center as RE,IM");
  cmd_roots->add_option("--half-side", roots.half_side, "Half the side length")
      ->check(CLI::PositiveNumber);
  cmd_roots->add_flag("--adaptive", roots.adaptive, "Subdivide until expansions converge");
  cmd_roots->add_option("--n-exp", roots.n_exp, "Adaptive expansion order");
  cmd_roots->add_option("--order", roots.order, "Non-adaptive starting order");
  cmd_roots->add_flag("--fixed-order", roots.fixed_order, "Never raise the non-adaptive order");
  cmd_roots->add_option("--n-max", roots.n_max, "Largest non-adaptive order");
  cmd_roots->add_option("--newton", roots.newton, "Newton steps per root (0-3)");
  cmd_roots->add_option("--delta", roots.delta, "Relative extension of the square");
  cmd_roots->add_option("--eps-exp", roots.eps_exp, "Expansion tolerance");
  cmd_roots->add_option("--eps-eig", roots.eps_eig, "QR deflation tolerance");
  cmd_roots->add_option("--max-depth", roots.max_depth, "Subdivision depth cap");
  cmd_roots->add_option("--basis", roots.basis, "CRBASIS cache file");
  cmd_roots->add_option("--format", roots.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd_roots->add_option("--seed", roots.seed, "Random-weight seed (default $CRROOTS_SEED or 1)");
  cmd_roots->add_option("--threads", roots.threads, "Worker threads, 0 for all cores")
      ->check(CLI::NonNegativeNumber);
  cmd_roots->add_flag("--no-timing", roots.no_timing, "Omit wall-clock fields");

  CondArgs cond;
  auto* cmd_cond = app.add_subcommand("cond", "Condition numbers of bases over random seeds");
  cmd_cond->add_option("--shape", cond.shape, "Boundary shape")
      ->check(CLI::IsMember({"square", "triangle", "snake", "circle"}));
  cmd_cond->add_option("--orders", cond.orders, "Comma-separated orders")->delimiter(',');
  cmd_cond->add_option("--trials", cond.trials, "Seeds per order")->check(CLI::PositiveNumber);
  cmd_cond->add_option("--spacing", cond.spacing, "Node spacing")
      ->check(CLI::IsMember({"gauss", "equispaced"}));
  cmd_cond->add_option("--nodes-per-edge", cond.nodes_per_edge, "Nodes per side, 0 for n/2+10");
  cmd_cond->add_option("--seed", cond.seed, "First seed (default $CRROOTS_SEED or 1)");

  BenchArgs bench;
  auto* cmd_bench = app.add_subcommand("bench", "Run the table checks on the catalog functions");
  cmd_bench->add_option("--suite", bench.suite, "Suite name")->check(CLI::IsMember({"paper"}));
  cmd_bench->add_option("--only", bench.only, "Restrict to one catalog function");
  cmd_bench->add_option("--format", bench.format, "Output format")
      ->check(CLI::IsMember({"json", "text"}));
  cmd_bench->add_option("--threads", bench.threads, "Worker threads, 0 for all cores")
      ->check(CLI::NonNegativeNumber);
  cmd_bench->add_option("--seed", bench.seed, "Random-weight seed (default $CRROOTS_SEED or 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*cmd_pre) return RunPrecompute(pre);
    if (*cmd_roots) {
      if (roots.fn.empty() == roots.expr.empty())
        throw UsageError{"exactly one of --fn and --expr is required"};
      return RunRoots(roots);
    }
    if (*cmd_cond) return RunCond(cond);
    return RunBench(bench);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "crroots: %s\n", e.message.c_str());
    return kExitUsage;
  }
}
