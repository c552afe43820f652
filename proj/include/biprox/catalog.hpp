#pragma once

#include <string>
#include <vector>

#include "biprox/permgroup.hpp"

namespace biprox {

// Names of the built-in groups, sorted by (order, name).
std::vector<std::string> catalog_names(int max_order = kDefaultOrderCap);

// Group spec: catalog name | "perm:" cycle notation | "file:" path to a generator file.
GroupPtr parse_group_spec(const std::string& spec, int max_order = kDefaultOrderCap);

// Subgroup spec: "trivial" | "whole" | cycle-notation generators (optionally "perm:"-prefixed).
Subgroup parse_subgroup_spec(const GroupPtr& g, const std::string& spec);

}  // namespace biprox
