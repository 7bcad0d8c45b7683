#pragma once
// JSON interchange: curve and dual serialization, census and verification
// reports, schema-checked loading. All schemas carry "schema": 1; canonical
// dumps are deterministic (sorted keys, fixed indentation), so writing back a
// loaded file reproduces it byte for byte.

#include <json.hpp>

#include <stdexcept>
#include <string>

#include "cdual/census.hpp"

namespace cdual::io {

using json = nlohmann::json;

// a document that does not match its schema; the message names the offending
// field by path
class SchemaError : public std::runtime_error {
 public:
  SchemaError(const std::string& path, const std::string& msg)
      : std::runtime_error("schema error at " + path + ": " + msg) {}
};

// a field modulus that is not monic irreducible over GF(p)
class InvalidModulus : public std::runtime_error {
 public:
  explicit InvalidModulus(const std::string& msg)
      : std::runtime_error("invalid modulus: " + msg) {}
};

json curve_to_json(const curves::Curve& C);
// field_seed seeds the reconstructed field's derived randomness (census block
// ordering is canonical regardless; the seed only steers sampling)
curves::Curve curve_from_json(const json& j, uint64_t field_seed = 1);

json dual_to_json(const dual::DualCurve& D);

json sing_census_to_json(const census::SingCensus& cen, uint32_t dual_degree);
json flex_census_to_json(const census::FlexCensus& fx);
json report_to_json(const census::CensusReport& rep);

// sorted keys, two-space indentation, trailing newline
std::string canonical_dump(const json& j);
void write_json_file(const std::string& path, const json& j);
json read_json_file(const std::string& path); // SchemaError on unreadable/unparsable

} // namespace cdual::io
