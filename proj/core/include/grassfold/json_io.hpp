#pragma once

#include <nlohmann/json.hpp>

#include "grassfold/grassmann.hpp"
#include "grassfold/region.hpp"

namespace grassfold {

using json = nlohmann::json;

// Serialization is canonical: rationals as "num/den" strings (den omitted
// when 1), object keys sorted, arrays in the containers' deterministic
// order. Every document carries a versioned "schema" field.
//
// Parsers throw malformed_input with a JSON-pointer-style location.

json to_json(const Rat& r);
json to_json(const ExactMatrix& m);
json to_json(const Configuration& c);
json to_json(const Subspace& s);
json to_json(const LinearConfiguration& h);
json to_json(const IntersectionPoset& p);
json to_json(const IntPoly& p);
json to_json(const ElementRef& r);
json to_json(const DerivationScript& s);
json to_json(const MarkedTemplate& t);
json to_json(const ScriptedTemplate& st);
json to_json(const GrassPoint& v);
json to_json(const FiberStage& st);
json to_json(const FiberTypeResult& r);
json to_json(const PolyQ& f);
json to_json(const RegionSpec& s);
json to_json(const UCertificate& c);

Rat rat_from_json(const json& j, const std::string& path);
ExactMatrix matrix_from_json(const json& j, const std::string& path);
Configuration config_from_json(const json& j, const std::string& path = "");
Subspace subspace_from_json(const json& j, const std::string& path, int ambient);
LinearConfiguration linconf_from_json(const json& j, const std::string& path = "");
ElementRef ref_from_json(const json& j, const std::string& path);
DerivationScript script_from_json(const json& j, const std::string& path = "");
ScriptedTemplate template_from_json(const json& j, const std::string& path = "");
GrassPoint grasspoint_from_json(const json& j, const std::string& path = "");
PolyQ polyq_from_json(const json& j, const std::string& path = "");
RegionSpec regionspec_from_json(const json& j, const std::string& path = "");
UCertificate certificate_from_json(const json& j, const std::string& path = "");

}  // namespace grassfold
