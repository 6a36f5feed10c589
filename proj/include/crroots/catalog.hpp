// Copyright 2026 The crroots Authors
// SPDX-License-Identifier: Apache-2.0
//
// The five test functions, selectable by name:
//   f_cosh   cosh(3 pi z / 2) / (z - 2)
//   f_poly   (z - 0.5)(z - 0.9)(z + 0.8)(z - 0.7i)(z + 0.1i)
//   f_mult   (z - 0.5)^5 (z - 0.9)^3 (z + 0.8)(z - 0.7i)(z + 0.1i)^2
//   f_clust  sin(100 / (e^{i pi/4} z - 2))
//   f_entire sin(3 pi z) / (z - 2)

#ifndef CRROOTS_CATALOG_HPP_
#define CRROOTS_CATALOG_HPP_

#include <string>
#include <vector>

#include "crroots/analytic.hpp"

namespace crroots {

struct CatalogEntry {
  std::string name;
  std::string expression;  // same function in the expression grammar
  std::string description;
};

const std::vector<CatalogEntry>& Catalog();

// Hand-written dual-number evaluator for a catalog function. Throws
// InvalidArgument for unknown names.
AnalyticFn CatalogFunction(const std::string& name);
const CatalogEntry& CatalogLookup(const std::string& name);

}  // namespace crroots

#endif  // CRROOTS_CATALOG_HPP_
