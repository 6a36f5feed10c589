// Copyright 2026 The crroots Authors
// SPDX-License-Identifier: Apache-2.0
//
// Exercises libcrroots through crroots.h only.

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

#include <json.hpp>

#include "crroots/crroots.h"

extern "C" int crroots_header_is_c(void);

namespace {

std::string Take(char* s) {
  std::string out(s);
  crr_string_free(s);
  return out;
}

int Square(void*, crr_complex z, crr_complex* value, crr_complex* deriv) {
  // z^2 + 1
  value->re = z.re * z.re - z.im * z.im + 1.0;
  value->im = 2.0 * z.re * z.im;
  deriv->re = 2.0 * z.re;
  deriv->im = 2.0 * z.im;
  return 0;
}

int Undefined(void*, crr_complex, crr_complex*, crr_complex*) { return 1; }

}  // namespace

TEST_CASE("header compiles as C") { CHECK(crroots_header_is_c() == 1); }

TEST_CASE("version and status names") {
  CHECK(std::strlen(crr_version()) > 0);
  CHECK(std::string(crr_status_name(CRR_OK)) == "Ok");
  CHECK(std::string(crr_status_name(CRR_E_PARSE)) == "ParseError");
  CHECK(CRR_E_MAX_DEPTH_EXCEEDED == 6);
  CHECK(CRR_E_QR_BREAKDOWN == 7);
}

TEST_CASE("catalog roots through the C API") {
  crr_function* f = nullptr;
  REQUIRE(crr_function_from_catalog("f_poly", &f) == CRR_OK);
  CHECK(std::string(crr_function_expression(f)).find("z-0.5") != std::string::npos);
  crr_options o;
  crr_options_default(&o);
  crr_result* r = nullptr;
  REQUIRE(crr_find_roots(f, {0.0, 0.0}, 1.0, &o, nullptr, &r) == CRR_OK);
  CHECK(crr_result_root_count(r) == 5);
  for (size_t i = 0; i < 5; ++i) {
    crr_root root;
    REQUIRE(crr_result_root(r, i, &root) == CRR_OK);
    CHECK(root.eta <= 1e-11);
    CHECK(root.refined == 0);
  }
  crr_root dummy;
  CHECK(crr_result_root(r, 5, &dummy) == CRR_E_INVALID_ARGUMENT);
  crr_diagnostics diag;
  REQUIRE(crr_result_diagnostics(r, &diag) == CRR_OK);
  CHECK(diag.n_eigs == 1);
  CHECK(diag.order == 100);

  const auto json = nlohmann::json::parse(Take([&] {
    char* s = nullptr;
    REQUIRE(crr_result_to_json(r, 1, &s) == CRR_OK);
    return s;
  }()));
  CHECK(json["schema"] == "crroots.roots/1");
  CHECK(json["roots"].size() == 5);
  CHECK(json["input"]["function"]["name"] == "f_poly");
  CHECK(json["diagnostics"]["wall_time_seconds"].get<double>() >= 0.0);

  char* s = nullptr;
  REQUIRE(crr_result_to_json(r, 0, &s) == CRR_OK);
  CHECK_FALSE(nlohmann::json::parse(Take(s))["diagnostics"].contains("wall_time_seconds"));

  REQUIRE(crr_result_to_csv(r, &s) == CRR_OK);
  const std::string csv = Take(s);
  CHECK(csv.rfind("re,im,eta,square_id,depth,refined\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);

  crr_result_free(r);
  crr_function_free(f);
}

TEST_CASE("identical inputs give identical reports") {
  crr_function* f = nullptr;
  REQUIRE(crr_function_parse("sin(3*pi*z)/(z-2)", &f) == CRR_OK);
  crr_options o;
  crr_options_default(&o);
  o.adaptive = 1;
  o.n_exp = 20;
  std::string reports[2];
  for (int threads = 1; threads <= 2; ++threads) {
    o.threads = threads;
    crr_result* r = nullptr;
    REQUIRE(crr_find_roots(f, {0.0, 0.0}, 1.5, &o, nullptr, &r) == CRR_OK);
    char* s = nullptr;
    REQUIRE(crr_result_to_json(r, 0, &s) == CRR_OK);
    reports[threads - 1] = Take(s);
    crr_result_free(r);
  }
  CHECK(reports[0] == reports[1]);
  CHECK(nlohmann::json::parse(reports[0])["roots"].size() == 9);
  crr_function_free(f);
}

TEST_CASE("callback functions") {
  crr_function* f = nullptr;
  REQUIRE(crr_function_from_callback("square", Square, nullptr, &f) == CRR_OK);
  CHECK(crr_function_expression(f) == nullptr);
  crr_complex v, d;
  REQUIRE(crr_function_eval(f, {1.0, 1.0}, &v, &d) == CRR_OK);
  CHECK(v.re == 1.0);
  CHECK(v.im == 2.0);
  crr_result* r = nullptr;
  REQUIRE(crr_find_roots(f, {0.0, 0.0}, 2.0, nullptr, nullptr, &r) == CRR_OK);
  REQUIRE(crr_result_root_count(r) == 2);
  for (size_t i = 0; i < 2; ++i) {
    crr_root root;
    crr_result_root(r, i, &root);
    CHECK(std::abs(root.value.re) < 1e-12);
    CHECK(std::abs(std::abs(root.value.im) - 1.0) < 1e-12);
  }
  crr_result_free(r);
  crr_function_free(f);

  REQUIRE(crr_function_from_callback(nullptr, Undefined, nullptr, &f) == CRR_OK);
  CHECK(crr_find_roots(f, {0.0, 0.0}, 1.0, nullptr, nullptr, &r) == CRR_E_EVALUATION);
  CHECK(std::strlen(crr_last_error()) > 0);
  crr_function_free(f);
}

TEST_CASE("errors map to status codes") {
  crr_function* f = nullptr;
  CHECK(crr_function_parse("z^", &f) == CRR_E_PARSE);
  CHECK(std::string(crr_last_error()).find("offset 2") != std::string::npos);
  CHECK(crr_function_from_catalog("f_nope", &f) == CRR_E_INVALID_ARGUMENT);
  CHECK(crr_function_from_catalog(nullptr, &f) == CRR_E_INVALID_ARGUMENT);

  REQUIRE(crr_function_parse("1/(z-0.2)", &f) == CRR_OK);
  crr_options o;
  crr_options_default(&o);
  o.adaptive = 1;
  o.n_exp = 20;
  o.max_depth = 2;
  crr_result* r = nullptr;
  CHECK(crr_find_roots(f, {0.0, 0.0}, 1.0, &o, nullptr, &r) == CRR_E_MAX_DEPTH_EXCEEDED);
  o.adaptive = 0;
  o.order = 10;
  o.n_max = 20;
  CHECK(crr_find_roots(f, {0.0, 0.0}, 1.0, &o, nullptr, &r) ==
        CRR_E_EXPANSION_NOT_CONVERGED);
  o.newton_iters = 9;
  CHECK(crr_find_roots(f, {0.0, 0.0}, 1.0, &o, nullptr, &r) == CRR_E_INVALID_ARGUMENT);
  crr_options_default(&o);
  CHECK(crr_find_roots(f, {0.0, 0.0}, -1.0, &o, nullptr, &r) == CRR_E_GEOMETRY);
  crr_function_free(f);

  crr_basis* b = nullptr;
  CHECK(crr_basis_load("/nonexistent/x.crb", &b) == CRR_E_IO);
  crr_basis_free(nullptr);
  crr_result_free(nullptr);
  crr_function_free(nullptr);
}

TEST_CASE("basis handles") {
  crr_basis* b = nullptr;
  REQUIRE(crr_basis_build(40, 30, 3, &b) == CRR_OK);
  CHECK(crr_basis_order(b) == 40);
  CHECK(crr_basis_nodes(b) == 120);
  double cond = 0.0;
  REQUIRE(crr_basis_condition(b, &cond) == CRR_OK);
  CHECK(cond > 1.0);

  const std::string path = "capi_test_basis.crb";
  REQUIRE(crr_basis_save(b, path.c_str()) == CRR_OK);
  crr_basis* back = nullptr;
  REQUIRE(crr_basis_load(path.c_str(), &back) == CRR_OK);
  CHECK(crr_basis_order(back) == 40);

  crr_function* f = nullptr;
  REQUIRE(crr_function_from_catalog("f_poly", &f) == CRR_OK);
  crr_options o;
  crr_options_default(&o);
  o.order = 20;
  o.fixed_order = 1;
  crr_result* r = nullptr;
  REQUIRE(crr_find_roots(f, {0.0, 0.0}, 1.0, &o, back, &r) == CRR_OK);
  CHECK(crr_result_root_count(r) == 5);
  char* s = nullptr;
  REQUIRE(crr_result_to_json(r, 0, &s) == CRR_OK);
  const auto json = nlohmann::json::parse(Take(s));
  CHECK(json["input"]["seed"] == 3);
  CHECK(json["input"]["basis"]["nodes_per_edge"] == 30);

  crr_result_free(r);
  crr_function_free(f);
  crr_basis_free(back);
  crr_basis_free(b);
  std::remove(path.c_str());
  CHECK(crr_basis_build(10, 0, 1, &b) == CRR_E_INVALID_ARGUMENT);
}

TEST_CASE("experiments through the C API") {
  const int orders[] = {10, 20};
  char* csv = nullptr;
  REQUIRE(crr_condition_experiment("square", orders, 2, 2, "gauss", 0, 1, &csv) == CRR_OK);
  const std::string text = Take(csv);
  CHECK(std::count(text.begin(), text.end(), '\n') == 3);
  CHECK(crr_condition_experiment("hexagon", orders, 2, 2, "gauss", 0, 1, &csv) ==
        CRR_E_INVALID_ARGUMENT);

  char* out = nullptr;
  int passed = 0;
  REQUIRE(crr_bench_run("paper", "f_poly", 1, 1, 1, &out, &passed) == CRR_OK);
  CHECK(passed == 1);
  const auto json = nlohmann::json::parse(Take(out));
  CHECK(json["cases"].size() == 4);
  CHECK(crr_bench_run("nope", nullptr, 1, 1, 1, &out, &passed) == CRR_E_INVALID_ARGUMENT);
}
