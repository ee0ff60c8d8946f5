#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "hconv/distributions.hpp"
#include "hconv/errors.hpp"
#include "hconv/polynomial.hpp"

namespace hconv {

// Malformed distribution document (wrong type, missing key, unknown family).
class SchemaError : public Error {
 public:
  using Error::Error;
};

using Json = nlohmann::ordered_json;

// {"family":"point_masses","dim":n,"masses":[{"coefficient":"1","location":["0",...],"derivative":[0,...]}]}
// {"family":"polynomial_kernel","dim":n,"polynomial":"x1^2"}
// {"family":"gauss_poly_kernel","dim":n,"q":"1","rate":"1/2","center":["0",...]}
// Rationals are strings ("3/2") or JSON integers; "dim" may be omitted and is
// then inferred from the locations, centers or polynomial.
TemperedDistribution distribution_from_json(const nlohmann::json& doc);
TemperedDistribution parse_distribution(const std::string& text);
Json to_json(const TemperedDistribution& lambda);

Json rational_array(std::span<const Rational> values);
Json index_array(const MultiIndex& alpha);

}  // namespace hconv
