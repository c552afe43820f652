#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "biprox/boxalgebra.hpp"
#include "biprox/fusionring.hpp"
#include "biprox/properties.hpp"

namespace biprox {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "biprox/1";

// Doubles rounded to 12 significant digits, -0 printed as 0.
double round12(double x);
Json to_json(cplx z);  // [re, im]
Json to_json(const CVector& v);
Json to_json(const Rational& q);  // "p/q" or "p"
Json to_json(const std::optional<int>& v);  // null when not determined
Json to_json(const ClassificationReport& r);
Json to_json(const FiniteLattice& l, const std::vector<Subgroup>& nodes);
Json to_json(const CoproductTable& t);
Json to_json(const FusionRing& ring);

// Text rendering of a table entry such as "2e1 - e2" with the given labels.
std::string format_combination(const CVector& coeffs, const std::vector<std::string>& labels, double tol = 1e-9);

std::string dump(const Json& j);  // two-space indent, trailing newline

}  // namespace biprox
