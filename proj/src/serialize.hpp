#pragma once

#include <json.hpp>

#include "microcalc.hpp"
#include "tvforms.hpp"

namespace fnlab {

using Json = nlohmann::ordered_json;

Json to_json(const SimplicialObject& obj);
SimplicialObject object_from_json(const Json& j);

Json to_json(const WeilElement& x);

Json to_json(const InfMorphism& f);
InfMorphism morphism_from_json(const Json& j);

Json to_json(const QPoly& p);
QPoly poly_from_json(const Json& j, std::size_t nvars);

Json to_json(const QPolyMap& f);
QPolyMap polymap_from_json(const Json& j);

/// Coefficients keyed by the generator multiset, e.g. "[1,2]" for d1 d2.
Json to_json(const MicroPoint& x);
MicroPoint micropoint_from_json(const Json& j);

Json to_json(const FormElem& x);
FormElem form_from_json(const Json& j);

/// Parses text, mapping syntax errors to ValidationError.
Json parse_json(const std::string& text);

}  // namespace fnlab
