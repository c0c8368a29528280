#pragma once

#include "ctxbook/classifier.hpp"
#include "ctxbook/empirical_model.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace ctxbook {

struct CatalogEntry {
  std::string name;
  std::string description;
  EmpiricalModel model;
  Tier expected_tier;
  std::string provenance;  // where the numbers come from
};

/// Bell, Hardy, PR box, Specker triangle, GHZ, in that order.
const std::vector<CatalogEntry>& catalog();

/// Throws DomainError naming the known entries.
const CatalogEntry& catalog_entry(std::string_view name);

/// X = {a, b, a', b'}, M = {a,b}, {a,b'}, {b,a'}, {a',b'}, O = {0, 1}.
Scenario bell_scenario();
/// X = {a, b, c}, M = the three pairs, O = {0, 1}.
Scenario specker_scenario();
/// Three parties with settings X and Y each, one maximal context per
/// choice of settings.
Scenario ghz_scenario();

EmpiricalModel bell_model();
EmpiricalModel hardy_model();
EmpiricalModel pr_box_model();
EmpiricalModel specker_model();
EmpiricalModel ghz_model();

/// Builds a model from "p/q" strings, one list per maximal context in
/// scenario order, sections in canonical order.
EmpiricalModel model_from_strings(const Scenario& scenario, const std::vector<std::vector<std::string>>& tables);

}  // namespace ctxbook
