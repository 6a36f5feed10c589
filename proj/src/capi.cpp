// Copyright 2026 The crroots Authors
// SPDX-License-Identifier: Apache-2.0

#include "crroots/crroots.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <memory>
#include <new>
#include <sstream>
#include <string>

#include <json.hpp>

#include "crroots/basis.hpp"
#include "crroots/catalog.hpp"
#include "crroots/errors.hpp"
#include "crroots/experiments.hpp"
#include "crroots/expr.hpp"
#include "crroots/rootfind.hpp"

#ifndef CRROOTS_VERSION_STRING
#define CRROOTS_VERSION_STRING "0.0.0"
#endif

struct crr_basis {
  std::shared_ptr<const crroots::PrecomputedBasis> pb;
};

struct crr_function {
  crroots::AnalyticFn fn;
  std::string kind;  // catalog | expression | callback
  std::string name;
  std::string expression;
};

struct crr_result {
  crroots::RootfindResult result;
  std::string fn_kind;
  std::string fn_name;
  std::string fn_expression;
  crroots::SquareDomain domain;
  crr_options options{};
  std::uint64_t seed = 0;
  int basis_order = 0;
  int basis_nodes_per_edge = 0;
};

namespace {

using crroots::Complex;
using crroots::ErrorCode;
using nlohmann::ordered_json;

thread_local std::string g_last_error;

crr_status Fail(ErrorCode code, const std::string& message) {
  g_last_error = message;
  return static_cast<crr_status>(code);
}

template <class Fn>
crr_status Guard(Fn&& fn) {
  try {
    fn();
    return CRR_OK;
  } catch (const crroots::Error& e) {
    return Fail(e.code(), e.what());
  } catch (const std::bad_alloc&) {
    return Fail(ErrorCode::kInternal, "out of memory");
  } catch (const std::exception& e) {
    return Fail(ErrorCode::kInternal, e.what());
  }
}

void Require(bool ok, const char* what) {
  if (!ok) throw crroots::InvalidArgument(what);
}

char* Duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

Complex FromC(crr_complex z) { return {z.re, z.im}; }
crr_complex ToC(Complex z) { return {z.real(), z.imag()}; }

crroots::RootfindOptions ToOptions(const crr_options& o) {
  crroots::RootfindOptions r;
  r.eps_exp = o.eps_exp;
  r.eps_eig = o.eps_eig;
  r.delta = o.delta;
  r.order = o.order;
  r.escalate = o.fixed_order == 0;
  r.n_max = o.n_max;
  r.n_exp = o.n_exp;
  r.newton_iters = o.newton_iters;
  r.max_depth = o.max_depth;
  r.seed = o.seed;
  r.threads = o.threads;
  r.correction = o.correction != 0;
  r.max_qr_iterations = o.max_qr_iterations;
  return r;
}

ordered_json ComplexJson(Complex z) {
  return ordered_json{{"re", z.real()}, {"im", z.imag()}};
}

std::string Csv(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ordered_json BenchJson(const crroots::BenchReport& report,
                       const std::string& suite) {
  ordered_json cases = ordered_json::array();
  for (const auto& c : report.cases) {
    ordered_json checks = ordered_json::array();
    for (const auto& k : c.checks)
      checks.push_back({{"name", k.name}, {"passed", k.passed}, {"detail", k.detail}});
    cases.push_back({{"function", c.function},
                     {"mode", c.adaptive ? "adaptive" : "nonadaptive"},
                     {"order", c.order},
                     {"newton_iters", c.newton_iters},
                     {"center", ComplexJson(c.center)},
                     {"half_side", c.half_side},
                     {"n_roots", c.n_roots},
                     {"max_eta", c.max_eta},
                     {"q_norm", c.q_norm},
                     {"n_levels", c.n_levels},
                     {"n_eigs", c.n_eigs},
                     {"max_rotation", c.max_rotation},
                     {"corrections", c.corrections},
                     {"wall_time_seconds", c.wall_time_seconds},
                     {"passed", c.passed()},
                     {"checks", checks}});
  }
  return ordered_json{{"suite", suite},
                      {"version", CRROOTS_VERSION_STRING},
                      {"passed", report.passed()},
                      {"wall_time_seconds", report.wall_time_seconds},
                      {"cases", cases}};
}

std::string BenchText(const crroots::BenchReport& report) {
  std::ostringstream out;
  for (const auto& c : report.cases) {
    char head[160];
    std::snprintf(head, sizeof head, "%s %s %s n=%d: %zu roots, max eta %.3g, %.2f s\n",
                  c.passed() ? "PASS" : "FAIL", c.function.c_str(),
                  c.adaptive ? "adaptive" : "nonadaptive", c.order, c.n_roots,
                  c.max_eta, c.wall_time_seconds);
    out << head;
    for (const auto& k : c.checks)
      out << "  " << (k.passed ? "pass" : "FAIL") << "  " << k.name << ": "
          << k.detail << "\n";
  }
  out << (report.passed() ? "PASS" : "FAIL") << " suite\n";
  return out.str();
}

}  // namespace

extern "C" {

const char* crr_version(void) { return CRROOTS_VERSION_STRING; }

const char* crr_last_error(void) { return g_last_error.c_str(); }

const char* crr_status_name(crr_status status) {
  return crroots::ErrorCodeName(static_cast<ErrorCode>(status));
}

void crr_string_free(char* s) { std::free(s); }

crr_status crr_basis_build(int order, int nodes_per_edge, uint64_t seed,
                           crr_basis** out) {
  return Guard([&] {
    Require(out != nullptr, "null output pointer");
    Require(order >= 0, "order must be >= 0");
    Require(nodes_per_edge >= 1, "nodes per edge must be >= 1");
    auto b = std::make_unique<crr_basis>();
    b->pb = crroots::PrecomputeSquareBasis(order, nodes_per_edge, seed);
    *out = b.release();
  });
}

crr_status crr_basis_load(const char* path, crr_basis** out) {
  return Guard([&] {
    Require(out != nullptr && path != nullptr, "null argument");
    auto b = std::make_unique<crr_basis>();
    b->pb = crroots::LoadBasisCache(path);
    *out = b.release();
  });
}

crr_status crr_basis_save(const crr_basis* basis, const char* path) {
  return Guard([&] {
    Require(basis != nullptr && path != nullptr, "null argument");
    crroots::SaveBasisCache(*basis->pb, path);
  });
}

int crr_basis_order(const crr_basis* basis) {
  return basis ? basis->pb->order() : -1;
}

int crr_basis_nodes(const crr_basis* basis) {
  return basis ? static_cast<int>(basis->pb->basis.boundary.size()) : -1;
}

crr_status crr_basis_condition(const crr_basis* basis, double* out) {
  return Guard([&] {
    Require(basis != nullptr && out != nullptr, "null argument");
    *out = crroots::ConditionNumber(basis->pb->matrix);
  });
}

void crr_basis_free(crr_basis* basis) { delete basis; }

crr_status crr_function_from_catalog(const char* name, crr_function** out) {
  return Guard([&] {
    Require(out != nullptr && name != nullptr, "null argument");
    const crroots::CatalogEntry& entry = crroots::CatalogLookup(name);
    auto f = std::make_unique<crr_function>();
    f->fn = crroots::CatalogFunction(name);
    f->kind = "catalog";
    f->name = entry.name;
    f->expression = entry.expression;
    *out = f.release();
  });
}

crr_status crr_function_parse(const char* expression, crr_function** out) {
  return Guard([&] {
    Require(out != nullptr && expression != nullptr, "null argument");
    crroots::ExprPtr e = crroots::ParseExpression(expression);
    auto f = std::make_unique<crr_function>();
    f->expression = crroots::PrettyPrint(*e);
    f->kind = "expression";
    f->name = "expr";
    f->fn = crroots::MakeAnalyticFn(std::move(e), f->name);
    *out = f.release();
  });
}

crr_status crr_function_from_callback(const char* name, crr_eval_callback eval,
                                      void* user, crr_function** out) {
  return Guard([&] {
    Require(out != nullptr && eval != nullptr, "null argument");
    auto f = std::make_unique<crr_function>();
    f->kind = "callback";
    f->name = name ? name : "callback";
    f->fn = crroots::AnalyticFn(f->name, [eval, user](Complex z) {
      crr_complex v{0.0, 0.0};
      crr_complex d{0.0, 0.0};
      if (eval(user, ToC(z), &v, &d) != 0) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        return crroots::FnValue{{nan, nan}, {nan, nan}};
      }
      return crroots::FnValue{FromC(v), FromC(d)};
    });
    *out = f.release();
  });
}

const char* crr_function_expression(const crr_function* f) {
  if (!f || f->kind == "callback") return nullptr;
  return f->expression.c_str();
}

crr_status crr_function_eval(const crr_function* f, crr_complex z,
                             crr_complex* value, crr_complex* deriv) {
  return Guard([&] {
    Require(f != nullptr, "null function");
    const crroots::FnValue v = f->fn(FromC(z));
    if (!crroots::IsFinite(v.value) || !crroots::IsFinite(v.deriv))
      throw crroots::EvaluationError(FromC(z));
    if (value) *value = ToC(v.value);
    if (deriv) *deriv = ToC(v.deriv);
  });
}

void crr_function_free(crr_function* f) { delete f; }

void crr_options_default(crr_options* options) {
  if (!options) return;
  const crroots::RootfindOptions d;
  options->eps_exp = d.eps_exp;
  options->eps_eig = d.eps_eig;
  options->delta = d.delta;
  options->adaptive = 0;
  options->order = d.order;
  options->fixed_order = d.escalate ? 0 : 1;
  options->n_max = d.n_max;
  options->n_exp = d.n_exp;
  options->newton_iters = d.newton_iters;
  options->max_depth = d.max_depth;
  options->seed = d.seed;
  options->threads = d.threads;
  options->correction = d.correction ? 1 : 0;
  options->max_qr_iterations = d.max_qr_iterations;
}

crr_status crr_find_roots(const crr_function* f, crr_complex center,
                          double half_side, const crr_options* options,
                          const crr_basis* basis, crr_result** out) {
  return Guard([&] {
    Require(f != nullptr && out != nullptr, "null argument");
    crr_options opts;
    if (options)
      opts = *options;
    else
      crr_options_default(&opts);
    const crroots::RootfindOptions ro = ToOptions(opts);
    ro.Validate();
    const crroots::SquareDomain d{FromC(center), half_side};
    d.Validate();

    std::unique_ptr<crroots::BasisProvider> bases;
    if (basis)
      bases = std::make_unique<crroots::BasisProvider>(basis->pb);
    else
      bases = std::make_unique<crroots::BasisProvider>(opts.seed);

    auto r = std::make_unique<crr_result>();
    r->result = opts.adaptive ? crroots::RootsAdaptive(f->fn, d, *bases, ro)
                              : crroots::RootsNonadaptive(f->fn, d, *bases, ro);
    r->fn_kind = f->kind;
    r->fn_name = f->name;
    r->fn_expression = f->expression;
    r->domain = d;
    r->options = opts;
    r->seed = bases->seed();
    const int order_used = opts.adaptive ? opts.n_exp : r->result.diagnostics.order;
    const auto pb = bases->Get(order_used);
    r->basis_order = pb->order();
    r->basis_nodes_per_edge = pb->basis.boundary.nodes_per_edge;
    *out = r.release();
  });
}

size_t crr_result_root_count(const crr_result* result) {
  return result ? result->result.roots.size() : 0;
}

crr_status crr_result_root(const crr_result* result, size_t index,
                           crr_root* out) {
  return Guard([&] {
    Require(result != nullptr && out != nullptr, "null argument");
    if (index >= result->result.roots.size())
      throw crroots::InvalidArgument("root index out of range");
    const crroots::RootReport& r = result->result.roots[index];
    out->value = ToC(r.value);
    out->eta = r.eta;
    out->square_id = r.square_id;
    out->depth = r.depth;
    out->refined = r.refined ? 1 : 0;
  });
}

crr_status crr_result_diagnostics(const crr_result* result,
                                  crr_diagnostics* out) {
  return Guard([&] {
    Require(result != nullptr && out != nullptr, "null argument");
    const crroots::RootfindDiagnostics& d = result->result.diagnostics;
    out->n_eigs = d.n_eigs;
    out->n_levels = d.n_levels;
    out->squares = d.squares;
    out->order = d.order;
    out->expansion_error = d.expansion_error;
    out->q_norm_max = d.q_norm_max;
    out->max_rotation = d.max_rotation;
    out->corrections = d.corrections;
    out->rotations = d.rotations;
    out->qr_iterations = d.qr_iterations;
    out->duplicates_removed = d.duplicates_removed;
    out->basis_retries = d.basis_retries;
    out->wall_time_seconds = d.wall_time_seconds;
  });
}

crr_status crr_result_to_json(const crr_result* result, int include_timing,
                              char** out) {
  return Guard([&] {
    Require(result != nullptr && out != nullptr, "null argument");
    const crr_options& o = result->options;
    ordered_json fn{{"kind", result->fn_kind}, {"name", result->fn_name}};
    if (result->fn_kind != "callback") fn["expression"] = result->fn_expression;
    ordered_json input{{"function", fn},
                       {"center", ComplexJson(result->domain.center)},
                       {"half_side", result->domain.half_side},
                       {"mode", o.adaptive ? "adaptive" : "nonadaptive"}};
    if (o.adaptive) {
      input["n_exp"] = o.n_exp;
      input["max_depth"] = o.max_depth;
    } else {
      input["order"] = o.order;
      input["fixed_order"] = o.fixed_order != 0;
      input["n_max"] = o.n_max;
    }
    input["eps_exp"] = o.eps_exp;
    input["eps_eig"] = o.eps_eig;
    input["delta"] = o.delta;
    input["newton_iters"] = o.newton_iters;
    input["seed"] = result->seed;
    input["basis"] = {{"order", result->basis_order},
                      {"nodes_per_edge", result->basis_nodes_per_edge}};

    ordered_json roots = ordered_json::array();
    for (const auto& r : result->result.roots)
      roots.push_back({{"re", r.value.real()},
                       {"im", r.value.imag()},
                       {"eta", r.eta},
                       {"square_id", r.square_id},
                       {"depth", r.depth},
                       {"refined", r.refined}});

    const crroots::RootfindDiagnostics& d = result->result.diagnostics;
    ordered_json diag{{"n_roots", result->result.roots.size()},
                      {"n_eigs", d.n_eigs},
                      {"n_levels", d.n_levels},
                      {"squares", d.squares},
                      {"order", d.order},
                      {"expansion_error", d.expansion_error},
                      {"q_norm_max", d.q_norm_max},
                      {"max_rotation", d.max_rotation},
                      {"corrections", d.corrections},
                      {"rotations", d.rotations},
                      {"qr_iterations", d.qr_iterations},
                      {"duplicates_removed", d.duplicates_removed},
                      {"basis_retries", d.basis_retries}};
    if (include_timing) diag["wall_time_seconds"] = d.wall_time_seconds;

    const ordered_json doc{{"schema", "crroots.roots/1"},
                           {"version", CRROOTS_VERSION_STRING},
                           {"input", input},
                           {"roots", roots},
                           {"diagnostics", diag}};
    *out = Duplicate(doc.dump(2) + "\n");
  });
}

crr_status crr_result_to_csv(const crr_result* result, char** out) {
  return Guard([&] {
    Require(result != nullptr && out != nullptr, "null argument");
    std::string s = "re,im,eta,square_id,depth,refined\n";
    for (const auto& r : result->result.roots) {
      s += Csv(r.value.real()) + "," + Csv(r.value.imag()) + "," + Csv(r.eta) +
           "," + std::to_string(r.square_id) + "," + std::to_string(r.depth) +
           "," + (r.refined ? "1" : "0") + "\n";
    }
    *out = Duplicate(s);
  });
}

void crr_result_free(crr_result* result) { delete result; }

crr_status crr_condition_experiment(const char* shape, const int* orders,
                                    size_t n_orders, int trials,
                                    const char* spacing, int nodes_per_edge,
                                    uint64_t seed, char** csv_out) {
  return Guard([&] {
    Require(csv_out != nullptr && (orders != nullptr || n_orders == 0),
            "null argument");
    crroots::ConditionOptions o;
    if (shape) o.shape = shape;
    o.orders.assign(orders, orders + n_orders);
    o.trials = trials;
    if (spacing) o.spacing = crroots::ParseSpacing(spacing);
    o.nodes_per_edge = nodes_per_edge;
    o.seed = seed;
    std::string s =
        "order,nodes_per_edge,trials,breakdowns,mean_condition,min_condition,"
        "max_condition\n";
    for (const auto& row : crroots::ConditionExperiment(o)) {
      s += std::to_string(row.order) + "," + std::to_string(row.nodes_per_edge) +
           "," + std::to_string(row.trials) + "," + std::to_string(row.breakdowns) +
           "," + Csv(row.mean_condition) + "," + Csv(row.min_condition) + "," +
           Csv(row.max_condition) + "\n";
    }
    *csv_out = Duplicate(s);
  });
}

crr_status crr_bench_run(const char* suite, const char* only, int threads,
                         uint64_t seed, int json, char** out, int* all_passed) {
  return Guard([&] {
    Require(out != nullptr, "null output pointer");
    Require(threads >= 0, "threads must be >= 0");
    crroots::BenchOptions o;
    if (only) o.only = only;
    o.threads = threads;
    o.seed = seed;
    const std::string name = suite ? suite : "paper";
    const crroots::BenchReport report = crroots::RunBenchSuite(name, o);
    *out = Duplicate(json ? BenchJson(report, name).dump(2) + "\n"
                          : BenchText(report));
    if (all_passed) *all_passed = report.passed() ? 1 : 0;
  });
}

}  // extern "C"
